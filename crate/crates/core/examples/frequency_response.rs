//! Bode magnitude of the exact transfer function, written as CSV to stdout.

use icm::exact::{bandwidth_3db, frequency_response, log_grid};
use icm::harness::report::write_frequency_response;
use icm::params::Termination;

fn main() -> icm::Result<()> {
    let (r1, c1) = (220.0, 2e-12);
    let term = Termination::resistive(50.0, 1e3)?;
    let grid = log_grid(1e7, 1e12, 26)?;
    let samples = frequency_response(r1, c1, &term, &grid)?;
    write_frequency_response(std::io::stdout().lock(), &samples)?;
    let bw = bandwidth_3db(r1, c1, &term)?;
    eprintln!("-3 dB at {bw:.4e} rad/s ({:.3} GHz)", bw / (2.0 * std::f64::consts::PI) / 1e9);
    Ok(())
}
