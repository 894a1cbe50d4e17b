use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use icm::error::ErrorClass;
use icm::exact::{frequency_response, log_grid};
use icm::harness::report::{write_frequency_response, write_results, write_trace};
use icm::harness::table4::write_table4_report;
use icm::harness::{load_table4, reproduce_table4, run_scenario, run_sweep, Analysis, Scenario, SweepSpec};
use icm::Error;

/// Interconnect delay, transient and energy analysis.
#[derive(Parser)]
#[command(name = "icm", version)]
struct Cli {
    /// Write CSV output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Override the ladder segment count.
    #[arg(long, global = true)]
    n_segments: Option<usize>,
    /// Override the series expansion order.
    #[arg(long, global = true)]
    order: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Closed-form dominant-pole delay.
    Delay { scenario: PathBuf },
    /// Transient ladder simulation; writes the waveform.
    Simulate { scenario: PathBuf },
    /// Parameter sweep with monotonicity checks.
    Sweep { sweep: PathBuf },
    /// Damping factor and inductive time constant.
    Merit { scenario: PathBuf },
    /// Energy per bit and throughput.
    Energy { scenario: PathBuf },
    /// Predict voltage-mode delays from a current-mode delay table.
    Table4 { table: PathBuf },
    /// Exact frequency response on a log grid.
    Freq {
        scenario: PathBuf,
        #[arg(long)]
        wmin: Option<f64>,
        #[arg(long)]
        wmax: Option<f64>,
        #[arg(long, default_value_t = 200)]
        points: usize,
    },
}

enum Outcome {
    Ok,
    PropertyViolated,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::PropertyViolated) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e}");
            match e.class() {
                ErrorClass::Validation => ExitCode::from(1),
                ErrorClass::Numerical => ExitCode::from(2),
            }
        }
    }
}

fn output(out: &Option<PathBuf>) -> icm::Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| Error::Io {
            path: p.clone(),
            source: e,
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn load(cli: &Cli, path: &Path, analysis: Analysis) -> icm::Result<Scenario> {
    let mut s = Scenario::from_file(path)?;
    s.analyses = [analysis].into_iter().collect();
    apply_overrides(cli, &mut s);
    Ok(s)
}

fn apply_overrides(cli: &Cli, s: &mut Scenario) {
    if let Some(n) = cli.n_segments {
        s.sim.n_segments = Some(n);
    }
    if let Some(m) = cli.order {
        s.series_order = m;
    }
}

fn run(cli: &Cli) -> icm::Result<Outcome> {
    match &cli.cmd {
        Cmd::Delay { scenario } => {
            let s = load(cli, scenario, Analysis::ClosedForm)?;
            let r = run_scenario(&s)?;
            let d = r.delay.expect("closed form was requested");
            eprintln!("{}: tau_d = {:e} s, t50 = {:e} s ({})", s.name, d.tau_d, d.t50, d.mode);
            if let Some(red) = r.row.reduction_vs_vm_pct {
                eprintln!("reduction vs open load: {red:.3}%");
            }
            if let Some(series) = &r.series {
                eprintln!("series k_m (m = 0..{}): {:?}", series.order, series.coefficients);
            }
            write_results(output(&cli.out)?, &[r.row])?;
        }
        Cmd::Simulate { scenario } => {
            let s = load(cli, scenario, Analysis::Simulate)?;
            let r = run_scenario(&s)?;
            let m = r.metrics.expect("simulation was requested");
            eprintln!(
                "{}: t50 = {:e} s, t63 = {:e} s, overshoot = {:.3}%, final = {:e}, settled = {}",
                s.name, m.t50, m.t63, m.overshoot_pct, m.final_value, m.settled
            );
            write_trace(output(&cli.out)?, r.trace.as_ref().expect("trace"))?;
        }
        Cmd::Sweep { sweep } => {
            let mut spec = SweepSpec::from_file(sweep)?;
            apply_overrides(cli, &mut spec.base);
            let outcome = run_sweep(&spec)?;
            write_results(output(&cli.out)?, &outcome.rows)?;
            if let Some(spread) = outcome.delay_spread_pct {
                eprintln!("delay spread over the sweep: {spread:.4}%");
            }
            for v in &outcome.violations {
                eprintln!("violation in {}: {}", v.column, v.message);
            }
            if !outcome.passed() {
                return Ok(Outcome::PropertyViolated);
            }
        }
        Cmd::Merit { scenario } => {
            let s = load(cli, scenario, Analysis::Merit)?;
            let r = run_scenario(&s)?;
            let d = r.damping.expect("merit was requested");
            eprintln!(
                "{}: xi = {}, omega0 = {:e} rad/s, {}, poles = {} / {}",
                s.name, d.xi, d.omega0, d.regime, d.poles[0], d.poles[1]
            );
            if let Some(tau) = r.inductive_tau {
                eprintln!("L/R time constant = {tau:e} s");
            }
            write_results(output(&cli.out)?, &[r.row])?;
        }
        Cmd::Energy { scenario } => {
            let s = load(cli, scenario, Analysis::Energy)?;
            let r = run_scenario(&s)?;
            eprintln!("{}: E_bit = {:e} J", s.name, r.e_bit.unwrap_or(f64::NAN));
            if let Some(e) = r.energy {
                eprintln!(
                    "throughput = {:e} bit/s, throughput*energy = {:e} W, energy/throughput = {:e} J*s",
                    e.throughput,
                    e.tep,
                    e.energy_delay()
                );
            }
            write_results(output(&cli.out)?, &[r.row])?;
        }
        Cmd::Table4 { table } => {
            let report = reproduce_table4(&load_table4(table)?)?;
            write_table4_report(output(&cli.out)?, &report)?;
            let (vm, red) = (report.max_vm_error_pct(), report.max_reduction_error_pp());
            eprintln!("max VM delay error {vm:.4}%, max reduction error {red:.4} pp");
            if !report.passes(1.0, 0.3) {
                return Ok(Outcome::PropertyViolated);
            }
        }
        Cmd::Freq { scenario, wmin, wmax, points } => {
            let s = load(cli, scenario, Analysis::ExactFreq)?;
            let t = s.totals()?;
            let rc = t.r_total * t.c_total;
            let grid = log_grid(wmin.unwrap_or(1e-2 / rc), wmax.unwrap_or(1e3 / rc), *points)?;
            let samples = frequency_response(t.r_total, t.c_total, &s.term, &grid)?;
            if let Ok(r) = run_scenario(&s) {
                if let Some(bw) = r.bandwidth {
                    eprintln!("{}: -3 dB at {bw:e} rad/s", s.name);
                }
            }
            write_frequency_response(output(&cli.out)?, &samples)?;
        }
    }
    Ok(Outcome::Ok)
}
