//! Runs the golden case catalog and writes one JSON report per case.

use pseudomult::cases::{list_cases, run_case_to};
use pseudomult::report::output_dir;

fn main() -> pseudomult::error::Result<()> {
    let dir = output_dir(std::env::args_os().nth(1).map(std::path::PathBuf::from).as_deref());
    let mut failed = 0;
    for spec in list_cases()? {
        let outcome = run_case_to(&spec.id, &dir)?;
        let mark = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{mark} {:<28} {}", spec.id, spec.title);
        for c in &outcome.checks {
            println!("     {} {}", if c.passed { "ok  " } else { "fail" }, c.description);
        }
        failed += usize::from(!outcome.passed);
    }
    println!("reports written to {}", dir.display());
    std::process::exit(i32::from(failed > 0));
}
