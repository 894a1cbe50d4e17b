//! Running scenarios and sweeps.

use rayon::prelude::*;

use crate::delay::{delay_for_totals, series_coefficients, DelayEstimate, SeriesExpansion};
use crate::error::{Error, Result};
use crate::exact::bandwidth_3db;
use crate::harness::report::ResultRow;
use crate::harness::scenario::{Analysis, Scenario, SweepSpec, SweepVariable, Trend};
use crate::ladder::{extract_metrics, simulate, LadderConfig, SimTrace, StepMetrics, TimeStep};
use crate::merit::{
    damping_factor, energy_per_bit, inductive_time_constant, DampingReport, EnergyReport,
    ThroughputModel, CURRENT_MODE_SWING,
};
use crate::params::{Load, Termination};

/// Everything computed for one scenario. `row` is the CSV view of it.
#[derive(Debug, Clone)]
pub struct ScenarioReport {
    pub row: ResultRow,
    pub delay: Option<DelayEstimate>,
    /// Same line driven into an open load.
    pub vm_reference: Option<DelayEstimate>,
    pub series: Option<SeriesExpansion>,
    pub trace: Option<SimTrace>,
    pub metrics: Option<StepMetrics>,
    pub damping: Option<DampingReport>,
    /// L_T/(R_S + R_T), when R_S + R_T > 0.
    pub inductive_tau: Option<f64>,
    pub e_bit: Option<f64>,
    pub energy: Option<EnergyReport>,
    /// −3 dB angular frequency (rad/s).
    pub bandwidth: Option<f64>,
}

/// Ladder configuration for a scenario's `[sim]` settings.
pub fn ladder_config(s: &Scenario) -> Result<LadderConfig> {
    let mut cfg = LadderConfig::new(s.line.clone(), s.length, s.term, s.vdd)?;
    if let Some(n) = s.sim.n_segments {
        cfg = cfg.with_segments(n);
    }
    if let Some(t_end) = s.sim.t_end {
        cfg = cfg.with_t_end(t_end);
    }
    if let Some(dt) = s.sim.dt {
        cfg = cfg.with_step(TimeStep::Fixed(dt));
    }
    if let Some(rel_tol) = s.sim.adaptive_tol {
        cfg = cfg.with_step(TimeStep::Adaptive { rel_tol });
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Runs the analyses selected by the scenario. Only selected analyses are
/// computed; in particular no transient simulation runs unless `simulate`
/// is selected.
pub fn run_scenario(s: &Scenario) -> Result<ScenarioReport> {
    run_inner(s).map_err(|e| Error::Scenario {
        scenario: s.name.clone(),
        source: Box::new(e),
    })
}

fn run_inner(s: &Scenario) -> Result<ScenarioReport> {
    s.validate()?;
    let totals = s.totals()?;
    let wants = |a| s.analyses.contains(&a);
    let mut report = ScenarioReport {
        row: ResultRow::new(s.name.clone()),
        delay: None,
        vm_reference: None,
        series: None,
        trace: None,
        metrics: None,
        damping: None,
        inductive_tau: None,
        e_bit: None,
        energy: None,
        bandwidth: None,
    };

    if wants(Analysis::ClosedForm) {
        let delay = delay_for_totals(&totals, &s.term, s.inductance_aware)?;
        let vm_term = Termination { r_source: s.term.r_source, load: Load::Open };
        let vm = delay_for_totals(&totals, &vm_term, s.inductance_aware)?;
        report.series = Some(series_coefficients(&delay.abc, s.series_order)?);
        report.row.tau_d = Some(delay.tau_d);
        report.row.reduction_vs_vm_pct = Some(100.0 * (vm.tau_d - delay.tau_d) / vm.tau_d);
        report.delay = Some(delay);
        report.vm_reference = Some(vm);
    }

    if wants(Analysis::ExactFreq) {
        report.bandwidth = Some(bandwidth_3db(totals.r_total, totals.c_total, &s.term)?);
    }

    if wants(Analysis::Simulate) {
        let cfg = ladder_config(s)?;
        let trace = simulate(&cfg)?;
        let m = extract_metrics(&trace)?;
        report.row.t50_sim = Some(m.t50);
        report.row.t63_sim = Some(m.t63);
        report.metrics = Some(m);
        report.trace = Some(trace);
    }

    if wants(Analysis::Merit) {
        let d = damping_factor(&totals);
        report.row.xi = Some(d.xi);
        report.damping = Some(d);
        report.inductive_tau =
            inductive_time_constant(totals.l_total, s.term.r_source, totals.r_total).ok();
    }

    if wants(Analysis::Energy) {
        let swing = s.energy.swing_ratio.unwrap_or(if s.term.is_short() {
            CURRENT_MODE_SWING
        } else {
            1.0
        });
        let e_bit = energy_per_bit(totals.c_total, s.vdd, swing)?;
        report.e_bit = Some(e_bit);
        report.row.e_bit = Some(e_bit);
        let tau = match (&report.delay, &report.metrics) {
            (Some(d), _) => Some(d.tau_d),
            (None, Some(m)) => Some(m.t63),
            (None, None) => delay_for_totals(&totals, &s.term, s.inductance_aware)
                .ok()
                .map(|d| d.tau_d),
        };
        if let Some(tau) = tau {
            let model = ThroughputModel { bits_per_tau: s.energy.bits_per_tau };
            let er = model.report(tau, e_bit, swing)?;
            report.row.throughput = Some(er.throughput);
            report.energy = Some(er);
        }
    }

    Ok(report)
}

type Column = (&'static str, fn(&ResultRow) -> Option<f64>, Trend);

/// A sweep expectation that the results did not meet.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub column: &'static str,
    pub message: String,
}

#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub variable: SweepVariable,
    pub rows: Vec<ResultRow>,
    /// (max − min)/min of the delay column in percent; the simulated t50
    /// when available, else the closed-form delay.
    pub delay_spread_pct: Option<f64>,
    pub violations: Vec<Violation>,
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs every point of the sweep (in parallel, output in input order) and
/// checks the declared trends.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    spec.validate()?;
    let rows = spec
        .values
        .par_iter()
        .enumerate()
        .map(|(index, &v)| {
            let point = spec
                .variable
                .apply(&spec.base, v)
                .and_then(|s| run_scenario(&s))
                .map_err(|e| Error::SweepRow { index, source: Box::new(e) })?;
            let mut row = point.row;
            row.swept_value = Some(v);
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut violations = Vec::new();
    let columns: [Column; 4] = [
        ("tau_d_s", |r| r.tau_d, spec.expect_delay),
        ("t50_sim_s", |r| r.t50_sim, spec.expect_delay),
        ("t63_sim_s", |r| r.t63_sim, spec.expect_delay),
        ("throughput_bps", |r| r.throughput, spec.expect_throughput),
    ];
    for (name, get, trend) in columns {
        if let Some(vals) = rows.iter().map(get).collect::<Option<Vec<f64>>>() {
            if let Some(msg) = check_trend(&vals, &spec.values, trend) {
                violations.push(Violation { column: name, message: msg });
            }
        }
    }

    let delays = rows
        .iter()
        .map(|r| r.t50_sim)
        .collect::<Option<Vec<f64>>>()
        .or_else(|| rows.iter().map(|r| r.tau_d).collect());
    let delay_spread_pct = delays.map(|d| {
        let min = d.iter().copied().fold(f64::INFINITY, f64::min);
        let max = d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        100.0 * (max - min) / min
    });
    if let (Some(limit), Some(spread)) = (spec.max_delay_spread_pct, delay_spread_pct) {
        if spread > limit {
            violations.push(Violation {
                column: "delay",
                message: format!("spread {spread:.4}% exceeds {limit}%"),
            });
        }
    }

    Ok(SweepOutcome {
        variable: spec.variable,
        rows,
        delay_spread_pct,
        violations,
    })
}

fn check_trend(vals: &[f64], xs: &[f64], trend: Trend) -> Option<String> {
    let bad = |ok: fn(f64, f64) -> bool| {
        vals.windows(2)
            .position(|w| !ok(w[0], w[1]))
            .map(|i| format!("{:e} -> {:e} between sweep values {:e} and {:e}", vals[i], vals[i + 1], xs[i], xs[i + 1]))
    };
    match trend {
        Trend::Any => None,
        Trend::Increasing => bad(|a, b| b > a).map(|m| format!("not increasing: {m}")),
        Trend::Decreasing => bad(|a, b| b < a).map(|m| format!("not decreasing: {m}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ladder::simulation_count;
    use crate::params::LinePerUnit;

    fn base() -> Scenario {
        let line = LinePerUnit::new(22e3, 1.937e-7, 2e-10).unwrap();
        Scenario::new("t", line, 1e-3, Termination::short(0.0).unwrap())
    }

    #[test]
    fn closed_form_only_runs_no_simulation() {
        let before = simulation_count();
        let r = run_scenario(&base()).unwrap();
        assert_eq!(simulation_count(), before);
        let row = &r.row;
        assert!(row.tau_d.is_some() && row.t50_sim.is_none() && row.xi.is_none() && row.e_bit.is_none());
        assert!((row.reduction_vs_vm_pct.unwrap() - 100.0 * 2.0 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn simulate_runs_exactly_once() {
        let s = base().with_analyses([Analysis::Simulate]);
        let before = simulation_count();
        let r = run_scenario(&s).unwrap();
        assert_eq!(simulation_count(), before + 1);
        assert!(r.row.tau_d.is_none() && r.row.t63_sim.is_some());
    }

    #[test]
    fn energy_defaults_to_current_mode_swing_for_short() {
        let s = base().with_analyses([Analysis::Energy]);
        let r = run_scenario(&s).unwrap();
        let c_t = 2e-10 * 1e-3;
        assert!((r.row.e_bit.unwrap() - 0.5 * c_t / 3.0).abs() < 1e-27);
        assert!(r.row.throughput.is_some());
        assert!(r.row.tau_d.is_none());
    }

    #[test]
    fn errors_name_the_scenario() {
        let mut s = base();
        s.term = Termination::new(0.0, Load::ResCap { r_load: 5.0, c_load: 1e-15 }).unwrap();
        match run_scenario(&s) {
            Err(Error::Scenario { scenario, .. }) => assert_eq!(scenario, "t"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sweep_flags_violations() {
        let mut spec = SweepSpec::new(base(), SweepVariable::Length, vec![1e-4, 1e-3, 1e-2]).unwrap();
        spec.expect_delay = Trend::Increasing;
        spec.expect_throughput = Trend::Decreasing;
        let ok = run_sweep(&spec).unwrap();
        assert!(ok.passed(), "{:?}", ok.violations);
        assert_eq!(ok.rows.len(), 3);
        assert_eq!(ok.rows[1].swept_value, Some(1e-3));

        spec.expect_delay = Trend::Decreasing;
        let bad = run_sweep(&spec).unwrap();
        assert_eq!(bad.violations.len(), 1);
        assert_eq!(bad.violations[0].column, "tau_d_s");
    }
}
