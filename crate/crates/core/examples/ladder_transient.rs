//! Step response of a distributed line into a shorted receiver, compared with
//! the closed-form delay. Pass an output path to save the waveform.

use icm::delay::delay_for_totals;
use icm::harness::report::write_trace;
use icm::ladder::{extract_metrics, simulate, LadderConfig};
use icm::params::{LinePerUnit, Termination};

fn main() -> icm::Result<()> {
    let line = LinePerUnit::new(4.5e6, 1.29129e-5, 1.5e-10)?;
    let d = 1e-3;
    let term = Termination::short(0.0)?;
    let cfg = LadderConfig::new(line.clone(), d, term, 1.0)?;
    let trace = simulate(&cfg)?;
    let m = extract_metrics(&trace)?;
    let tau = delay_for_totals(&line.totals(d)?, &term, false)?.tau_d;

    println!("{} segments, {} samples", cfg.n_segments, trace.len());
    println!("simulated t50 = {:.3} ps, t63 = {:.3} ps", m.t50 * 1e12, m.t63 * 1e12);
    println!("closed-form tau_d = {:.3} ps ({:+.2}%)", tau * 1e12, 100.0 * (m.t63 - tau) / tau);
    println!("final load current = {:.4e} A, overshoot {:.3}%", m.final_value, m.overshoot_pct);

    if let Some(path) = std::env::args().nth(1) {
        let f = std::fs::File::create(&path).map_err(|e| icm::Error::Io { path: path.clone().into(), source: e })?;
        write_trace(std::io::BufWriter::new(f), &trace)?;
        println!("waveform written to {path}");
    }
    Ok(())
}
