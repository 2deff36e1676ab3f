//! Runs A1-A10 at full budget and prints one line per criterion.

use std::process::ExitCode;

use ramsey_core::acceptance::{run_all, AcceptanceOptions, Budget, Status};

fn main() -> ExitCode {
    let opts = AcceptanceOptions { budget: Budget::Full, threads: 1 };
    let reports = run_all(&opts);
    for r in &reports {
        println!("{}  [{:.1}s]", r.line(), r.elapsed_secs);
    }
    let failed: Vec<&str> = reports.iter().filter(|r| r.status != Status::Pass).map(|r| r.id.as_str()).collect();
    if reports.len() == 10 && failed.is_empty() {
        println!("acceptance: 10/10 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: not passing: {failed:?}");
        ExitCode::FAILURE
    }
}
