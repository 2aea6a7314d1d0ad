//! Runs the 14 acceptance criteria and prints one line per criterion.
//! Exits nonzero if any criterion fails its value check or its budget.

use std::process::ExitCode;

use chromlat_cli::verify::{criteria, render_table, run_all};

fn main() -> ExitCode {
    let results = run_all(&criteria());
    print!("{}", render_table(&results));
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id.as_str()).collect();
    if results.len() == 14 && failed.is_empty() {
        println!("acceptance: 14/14 passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
