//! Runs the twelve acceptance criteria and prints one line per criterion.
//! Set `ACCEPTANCE_VERBOSE=1` for the individual checks.

use std::process::ExitCode;
use std::time::Instant;

use rankcode::suite;
use rankcode_core::Limits;

fn main() -> ExitCode {
    let verbose = std::env::var_os("ACCEPTANCE_VERBOSE").is_some();
    let limits = Limits::default();
    let mut failed = Vec::new();
    for id in suite::select(None) {
        let start = Instant::now();
        let c = suite::run(id, &limits);
        println!("{}  ({:.1} s)", c.line(), start.elapsed().as_secs_f64());
        for d in &c.details {
            if verbose || d.starts_with("FAILED") {
                println!("    {d}");
            }
        }
        if !c.passed {
            failed.push(c.name);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {} failing: {}", failed.len(), failed.join(", "));
        ExitCode::FAILURE
    }
}
