//! Acceptance checks, one PASS/FAIL line each. Exits nonzero if any fails.
//!
//! Run a single check with `cargo test --test acceptance -- <id>`.

use std::sync::Arc;

use mbox_cli::{node_budget, verify};
use mbox_core::Solver;

fn main() {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let solver = Arc::new(Solver::with_budget(node_budget().expect("valid node budget")));
    let ids: Vec<u8> = if only.is_empty() { (1..=verify::CRITERIA).collect() } else { only };
    let mut failed = 0;
    for id in ids {
        let report = verify::run(id, &solver);
        println!("{}", report.line());
        failed += usize::from(!report.passed);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
