//! Runs the bundled length sweep and prints the result table as CSV.

use std::path::Path;

use icm::harness::{run_sweep, write_results, SweepSpec};

fn main() -> icm::Result<()> {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/scenarios/length_sweep.sweep");
    let spec = SweepSpec::from_file(file)?;
    let outcome = run_sweep(&spec)?;
    write_results(std::io::stdout().lock(), &outcome.rows)?;
    for v in &outcome.violations {
        eprintln!("{}: {}", v.column, v.message);
    }
    eprintln!("trends {}", if outcome.passed() { "hold" } else { "violated" });
    Ok(())
}
