//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each.
//!
//! Run with `cargo test -p icm --test acceptance`.

use std::path::{Path, PathBuf};
use std::process::{Command, ExitCode, Stdio};
use std::time::Instant;

use icm::delay::{closed_form_delay, series_coefficients, AbcCoefficients, LoadLimit};
use icm::exact::exact_transfer;
use icm::harness::{
    load_table4, reproduce_table4, run_scenario, run_sweep, Analysis, Scenario, SweepSpec, SweepVariable,
};
use icm::ladder::{extract_metrics, simulate, LadderConfig};
use icm::merit::{energy_per_bit, inductive_time_constant, CURRENT_MODE_SWING};
use icm::params::{LineTotals, Load, Termination};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Criterion = (&'static str, &'static str, fn() -> icm::Result<Outcome>);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn log_uniform(rng: &mut StdRng, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn ac1_table4() -> icm::Result<Outcome> {
    let start = Instant::now();
    let report = reproduce_table4(&load_table4(data("table4_cnt_45nm.csv"))?)?;
    let secs = start.elapsed().as_secs_f64();
    let (vm, red) = (report.max_vm_error_pct(), report.max_reduction_error_pp());
    let complete = report.rows.len() == 9
        && report.rows.iter().all(|r| r.vm_error_pct.is_some() && r.reduction_error_pp.is_some());
    Ok(outcome(
        complete && vm <= 1.0 && red <= 0.3 && secs < 1.0,
        format!("9 rows, max VM error {vm:.3}% (<= 1%), max reduction error {red:.3} pp (<= 0.3), {secs:.3} s"),
    ))
}

fn ac2_vm_cm_ratio() -> icm::Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(2);
    let (cm, vm) = (Termination::short(0.0)?, Termination::open(0.0)?);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let r1 = log_uniform(&mut rng, 1e-2, 1e7);
        let c1 = log_uniform(&mut rng, 1e-16, 1e-9);
        let ratio = closed_form_delay(r1, c1, &cm, false, 0.0)?.tau_d / closed_form_delay(r1, c1, &vm, false, 0.0)?.tau_d;
        worst = worst.max((ratio - 1.0 / 3.0).abs() / (1.0 / 3.0));
    }
    Ok(outcome(
        worst <= 4.0 * f64::EPSILON,
        format!("1000 random R1C1, worst |ratio - 1/3| = {:.1} ulp", worst / f64::EPSILON),
    ))
}

fn ac3_inductive_tau() -> icm::Result<Outcome> {
    let tau = inductive_time_constant(19.37e-9, 2.5e3, 220.0)?;
    let err = (tau - 7e-12).abs() / 7e-12;
    Ok(outcome(
        (tau - 7.12e-12).abs() < 0.005e-12 && err < 0.05,
        format!("L/R = {:.3} ps, {:.2}% from 7 ps", tau * 1e12, 100.0 * err),
    ))
}

fn hyperbolic(a: f64, b: f64, c: f64, u: f64) -> f64 {
    (a / u + b * u) * u.sinh() + c * u.cosh()
}

fn ac4_series() -> icm::Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(4);
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let (a, b, c) = (
            log_uniform(&mut rng, 1e-4, 1e4),
            log_uniform(&mut rng, 1e-4, 1e4),
            1.0 + log_uniform(&mut rng, 1e-4, 1e4),
        );
        let u = rng.gen_range(1e-6..=1.0);
        let abc = AbcCoefficients {
            a,
            b,
            c,
            r1: 1.0,
            c1: 1.0,
            r_source: b,
            load: LoadLimit::Finite { r_load: 1.0 / a },
        };
        let s = series_coefficients(&abc, 8)?;
        let exact = hyperbolic(a, b, c, u);
        worst = worst.max(((s.eval(u) - exact) / exact).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    Ok(outcome(
        worst < 1e-10 && secs < 5.0,
        format!("10^4 random (a,b,c,u), worst rel. error {worst:.2e} (< 1e-10), {secs:.3} s"),
    ))
}

fn ac5_dc_gain() -> icm::Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let r1 = log_uniform(&mut rng, 1.0, 1e5);
        let c1 = log_uniform(&mut rng, 1e-15, 1e-11);
        let r_s = log_uniform(&mut rng, 1e-1, 1e4);
        let r_l = log_uniform(&mut rng, 1e-1, 1e7);
        let h = exact_transfer(r1, c1, &Termination::resistive(r_s, r_l)?, Complex64::new(0.0, 0.0))?;
        let divider = r_l / (r1 + r_l + r_s);
        worst = worst.max(((h.re - divider) / divider).abs()).max(h.im.abs());
    }
    Ok(outcome(worst < 1e-12, format!("100 random circuits, worst rel. error {worst:.2e} (< 1e-12)")))
}

fn ac6_overdamped() -> icm::Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(6);
    let start = Instant::now();
    let mut errors = Vec::new();
    let mut min_xi = f64::INFINITY;
    for i in 0..20 {
        let r_t = log_uniform(&mut rng, 1e3, 1e4);
        let c_t = log_uniform(&mut rng, 1e-13, 1e-12);
        let xi = rng.gen_range(3.0..10.0);
        let l_t = c_t * (r_t / (2.0 * xi)).powi(2);
        let r_s = rng.gen_range(0.0..0.2) * r_t;
        // four decades of load resistance around R_T
        let r_l = r_t * 10f64.powf(-2.0 + 4.0 * i as f64 / 19.0);
        let totals = LineTotals::new(r_t, l_t, c_t, 1e-3)?;
        let term = Termination::resistive(r_s, r_l)?;
        let s = Scenario::new(format!("od{i}"), totals.per_unit(), 1e-3, term)
            .with_analyses([Analysis::ClosedForm, Analysis::Simulate, Analysis::Merit]);
        let row = run_scenario(&s)?.row;
        min_xi = min_xi.min(row.xi.unwrap());
        errors.push(row.relative_difference().unwrap().abs());
    }
    let secs = start.elapsed().as_secs_f64();
    let worst = errors.iter().copied().fold(0.0, f64::max);
    let mean = errors.iter().sum::<f64>() / errors.len() as f64;
    Ok(outcome(
        worst < 0.10 && min_xi >= 3.0 && secs < 60.0,
        format!(
            "20 scenarios (xi >= {min_xi:.2}), |t63_sim - tau_d|/tau_d worst {:.2}%, average {:.2}%, {secs:.1} s",
            100.0 * worst,
            100.0 * mean
        ),
    ))
}

fn lumped_overshoot(xi: f64) -> icm::Result<f64> {
    let (l, c): (f64, f64) = (10e-9, 1e-12);
    let r = 2.0 * xi * (l / c).sqrt();
    let totals = LineTotals::new(r, l, c, 1e-3)?;
    let cfg = LadderConfig::new(totals.per_unit(), 1e-3, Termination::open(0.0)?, 1.0)?.with_segments(1);
    Ok(extract_metrics(&simulate(&cfg)?)?.overshoot_pct)
}

fn ac7_damping() -> icm::Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for xi in [1.0, 3.0, 10.0] {
        let os = lumped_overshoot(xi)?;
        pass &= os < 0.1;
        parts.push(format!("xi={xi}: {os:.4}%"));
    }
    for xi in [0.3f64, 0.5, 0.7] {
        let os = lumped_overshoot(xi)?;
        let formula = 100.0 * (-std::f64::consts::PI * xi / (1.0 - xi * xi).sqrt()).exp();
        pass &= (os - formula).abs() <= 3.0;
        parts.push(format!("xi={xi}: {os:.2}% vs {formula:.2}%"));
    }
    Ok(outcome(pass, parts.join(", ")))
}

fn ac8_load_capacitance() -> icm::Result<Outcome> {
    let spec = SweepSpec::from_file(data("scenarios/cload_sweep.sweep"))?;
    let c_t = spec.base.totals()?.c_total;
    let small = run_sweep(&spec)?;
    let t50: Vec<f64> = small.rows.iter().map(|r| r.t50_sim.unwrap()).collect();
    let spread = small.delay_spread_pct.unwrap();
    let big = SweepVariable::LoadCapacitance.apply(&spec.base, 10.0 * c_t)?;
    let t_big = run_scenario(&big)?.row.t50_sim.unwrap();
    let increase = 100.0 * (t_big - t50[0]) / t50[0];
    let receiver_ok = matches!(spec.base.term.load, Load::ResCap { r_load, .. } if r_load <= 10.0);
    Ok(outcome(
        c_t >= 2e-12 && receiver_ok && spread < 2.0 && increase > 20.0,
        format!(
            "C_T = {:.2} pF, t50 spread over 10..80 fF = {spread:.3}% (< 2%), +{increase:.1}% at C_L = 10 C_T (> 20%)",
            c_t * 1e12
        ),
    ))
}

fn ac9_monotone() -> icm::Result<Outcome> {
    let mut pass = true;
    let mut parts = Vec::new();
    for f in ["length_sweep.sweep", "rload_sweep.sweep"] {
        let out = run_sweep(&SweepSpec::from_file(data(&format!("scenarios/{f}")))?)?;
        pass &= out.passed();
        parts.push(format!("{f}: {}", if out.passed() { "monotone" } else { "violated" }));
    }
    // a reversed expectation must make the CLI exit with status 3
    let text = std::fs::read_to_string(data("scenarios/rload_sweep.sweep")).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.sweep");
    let text = text
        .replace("expect_delay = increasing", "expect_delay = decreasing")
        .replace("../lines_45nm.csv", data("lines_45nm.csv").to_str().unwrap());
    std::fs::write(&bad, text).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_icm"))
        .args(["sweep", bad.to_str().unwrap(), "--out", dir.path().join("o.csv").to_str().unwrap()])
        .stderr(Stdio::null())
        .status()
        .unwrap();
    pass &= status.code() == Some(3);
    parts.push(format!("violating sweep exits {:?}", status.code()));
    Ok(outcome(pass, parts.join(", ")))
}

fn ac10_energy() -> icm::Result<Outcome> {
    let vm = energy_per_bit(90e-15, 1.0, 1.0)?;
    let cm = energy_per_bit(90e-15, 1.0, CURRENT_MODE_SWING)?;
    let ok = (vm - 0.045e-12).abs() < 1e-6 * 0.045e-12 && (cm - 0.015e-12).abs() < 1e-6 * 0.015e-12;
    Ok(outcome(
        ok,
        format!("90 fF, 1 V: VM {:.4} pJ, CM (swing 1/sqrt 3) {:.4} pJ", vm * 1e12, cm * 1e12),
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC-1", "table self-consistency", ac1_table4),
        ("AC-2", "CM/VM delay ratio 1/3", ac2_vm_cm_ratio),
        ("AC-3", "inductive time constant", ac3_inductive_tau),
        ("AC-4", "series vs hyperbolic form", ac4_series),
        ("AC-5", "DC gain vs divider", ac5_dc_gain),
        ("AC-6", "closed form vs ladder", ac6_overdamped),
        ("AC-7", "damping regimes", ac7_damping),
        ("AC-8", "load-capacitance insensitivity", ac8_load_capacitance),
        ("AC-9", "monotone sweeps", ac9_monotone),
        ("AC-10", "energy per bit", ac10_energy),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let o = check().unwrap_or_else(|e| outcome(false, format!("error: {e}")));
        println!("[{}] {id} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
