//! Runs every acceptance criterion and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use ungauge_core::verify::{run_check, SuiteConfig, CHECK_NAMES};

fn main() -> ExitCode {
    let cfg = SuiteConfig::default();
    let mut failed = 0;
    for id in 1..=CHECK_NAMES.len() {
        let start = Instant::now();
        let out = run_check(id, &cfg);
        let status = if out.passed { "PASS" } else { "FAIL" };
        println!(
            "{status} {id:>2} {:<32} {:>8.2?}  {}",
            out.name,
            start.elapsed(),
            out.detail
        );
        failed += usize::from(!out.passed);
    }
    println!("{} passed, {failed} failed", CHECK_NAMES.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
