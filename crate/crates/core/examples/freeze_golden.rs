//! Recomputes the finite-scale golden table, audits it and rewrites
//! `golden/finite_extensions.json`.
//!
//! Run with `cargo run --release --example freeze_golden -- --write`; without
//! `--write` the table is printed and nothing is changed.

use pgroup_logic::eval::EvalOptions;
use pgroup_logic::verify::{check_golden, golden_table};

fn main() {
    let opts = EvalOptions::default();
    let table = golden_table(&opts).expect("golden table");
    let text = serde_json::to_string_pretty(&table).expect("serializable") + "\n";
    let audit = check_golden(&text, &opts).expect("audit");
    let audits = audit.checks().iter().filter(|c| c.name.starts_with("audit-")).collect::<Vec<_>>();
    for check in &audits {
        println!("{:<36} {:>4} cases {:>3} failures", check.name, check.cases, check.failures);
        if let Some(first) = &check.first_failure {
            println!("  first failure: {first}");
        }
    }
    if audits.iter().any(|c| c.failures > 0) {
        eprintln!("audit failed, not writing");
        std::process::exit(1);
    }
    if std::env::args().any(|a| a == "--write") {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/golden/finite_extensions.json");
        std::fs::write(path, text).expect("write golden file");
        println!("wrote {path}");
    } else {
        print!("{text}");
    }
}
