use std::path::PathBuf;

use pgroup_logic::translate::catalog::{catalog_files, CATALOG_PRIME};

#[test]
fn exported_catalog_matches_the_builders() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog");
    let files = catalog_files(CATALOG_PRIME).unwrap();
    for file in &files {
        let on_disk = std::fs::read_to_string(dir.join(&file.file_name))
            .unwrap_or_else(|e| panic!("{}: {e}; rerun the export_catalog example", file.file_name));
        assert!(on_disk == file.contents, "{} is stale; rerun the export_catalog example", file.file_name);
    }
    let stored = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(stored, files.len(), "catalog directory has extra files");
}
