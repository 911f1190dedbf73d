//! Writes every catalog formula to `catalog/<language>-<kind>.sexp`.
//!
//! `cargo run --example export_catalog [DIR]`; the default directory is the
//! crate's own `catalog/`, which the test suite compares against.

use std::path::PathBuf;

use pgroup_logic::translate::catalog::{catalog_files, CATALOG_PRIME};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("catalog"));
    std::fs::create_dir_all(&dir)?;
    let files = catalog_files(CATALOG_PRIME)?;
    for file in &files {
        std::fs::write(dir.join(&file.file_name), &file.contents)?;
    }
    println!("wrote {} files to {}", files.len(), dir.display());
    Ok(())
}
