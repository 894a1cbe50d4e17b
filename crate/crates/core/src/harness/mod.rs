//! Scenario files, batch runs, sweeps and CSV output.

pub mod report;
pub mod run;
pub mod scenario;
pub mod table4;

pub use report::{emit_csv, read_results, write_results, ResultRow};
pub use run::{run_scenario, run_sweep, ScenarioReport, SweepOutcome, Violation};
pub use scenario::{Analysis, Scenario, SweepSpec, SweepVariable, Trend};
pub use table4::{load_table4, reproduce_table4, Table4Report, Table4Row};
