//! The twelve acceptance checks, one status line each. Runs without the
//! libtest harness so the lines always reach the output.

use std::process::ExitCode;

use utlab::harness::{run_check, CheckStatus, HarnessOptions, CHECK_IDS};

fn main() -> ExitCode {
    let opts = HarnessOptions::default();
    let verbose = std::env::args().any(|a| a == "--verbose");
    let mut failed = 0;
    for id in CHECK_IDS {
        let r = run_check(id, &opts);
        println!("{}", r.line());
        for line in &r.details {
            if verbose || line.starts_with("FAILED") || line.starts_with("undecided") {
                println!("      {line}");
            }
        }
        if r.status == CheckStatus::Fail {
            failed += 1;
        }
    }
    println!("acceptance: {failed} failing");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
