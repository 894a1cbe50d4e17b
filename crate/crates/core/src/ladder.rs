//! Transient simulation of a line as an N-section gamma RLC ladder.
//!
//! Each section is a series `(r·Δx, l·Δx)` branch followed by a shunt
//! `c·Δx` capacitor. The near end is an ideal step of `Vdd` behind `R_S`; the
//! far end carries the load of the [`Termination`]. The circuit is written as
//! a state-space system `x' = A·x + B·u` whose states are capacitor voltages
//! and inductor currents. With the states interleaved along the line, `A` is
//! tridiagonal, so each implicit step is an O(n) solve.
//!
//! Integration is trapezoidal. The first interval is covered by two
//! backward-Euler half steps so that the input discontinuity does not leave
//! undamped ringing in the stiff modes of a finely segmented line.

use std::cell::Cell;

use crate::delay::{closed_form_delay, ONE_TAU_FRACTION};
use crate::error::{Error, Result};
use crate::params::{totals_from_per_unit, LinePerUnit, Load, Termination};

pub const DEFAULT_SEGMENTS: usize = 200;
/// Default number of fixed steps over the simulated window.
pub const DEFAULT_STEPS: usize = 10_000;
/// Default simulated window, in multiples of the analytic delay estimate.
pub const T_END_FACTOR: f64 = 20.0;
/// Relative distance to the DC value below which a trace counts as settled.
pub const SETTLE_TOLERANCE: f64 = 1e-3;

thread_local! {
    static SIMULATIONS: Cell<u64> = const { Cell::new(0) };
}

/// Number of [`simulate`] calls made on the current thread.
pub fn simulation_count() -> u64 {
    SIMULATIONS.with(|c| c.get())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeStep {
    Fixed(f64),
    /// Step-doubling error control with the given relative tolerance.
    Adaptive { rel_tol: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct LadderConfig {
    pub per_unit: LinePerUnit,
    /// Line length d (m).
    pub length: f64,
    pub n_segments: usize,
    pub term: Termination,
    pub vdd: f64,
    pub t_end: f64,
    pub step: TimeStep,
}

impl LadderConfig {
    /// Configuration with default segment count, window and step.
    pub fn new(per_unit: LinePerUnit, length: f64, term: Termination, vdd: f64) -> Result<Self> {
        let t_end = T_END_FACTOR * delay_estimate(&per_unit, length, &term)?;
        let cfg = LadderConfig {
            per_unit,
            length,
            n_segments: DEFAULT_SEGMENTS,
            term,
            vdd,
            t_end,
            step: TimeStep::Fixed(t_end / DEFAULT_STEPS as f64),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_segments(mut self, n: usize) -> Self {
        self.n_segments = n;
        self
    }

    /// Sets the window and rescales a fixed step to keep the step count.
    pub fn with_t_end(mut self, t_end: f64) -> Self {
        if let TimeStep::Fixed(dt) = self.step {
            self.step = TimeStep::Fixed(dt * t_end / self.t_end);
        }
        self.t_end = t_end;
        self
    }

    pub fn with_step(mut self, step: TimeStep) -> Self {
        self.step = step;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.per_unit.validate()?;
        self.term.validate()?;
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::invalid("length", format!("must be > 0 (got {})", self.length)));
        }
        if self.n_segments == 0 {
            return Err(Error::invalid("n_segments", "must be >= 1"));
        }
        if !self.vdd.is_finite() {
            return Err(Error::invalid("vdd", "must be finite"));
        }
        if !(self.t_end.is_finite() && self.t_end > 0.0) {
            return Err(Error::invalid("t_end", format!("must be > 0 (got {})", self.t_end)));
        }
        match self.step {
            TimeStep::Fixed(dt) => {
                if !(dt > 0.0 && dt <= self.t_end / 100.0 * (1.0 + 1e-12)) {
                    return Err(Error::invalid(
                        "dt",
                        format!("must satisfy 0 < dt <= t_end/100 (got {dt})"),
                    ));
                }
            }
            TimeStep::Adaptive { rel_tol } => {
                if !(rel_tol > 0.0 && rel_tol < 0.1) {
                    return Err(Error::invalid("rel_tol", "must lie in (0, 0.1)"));
                }
            }
        }
        let p = &self.per_unit;
        let r_loop = self.term.r_source + p.r * self.length;
        if p.l == 0.0 && p.r == 0.0 && self.term.r_source == 0.0 {
            return Err(Error::invalid(
                "r_source",
                "an ideal source directly across a lossless capacitance needs R_S > 0",
            ));
        }
        if self.term.is_short() && r_loop == 0.0 {
            return Err(Error::invalid(
                "r_source",
                "a shorted load needs R_S + R_T > 0 for a finite DC current",
            ));
        }
        Ok(())
    }

    /// Steady-state value of the observed output: load voltage, or load
    /// current for a shorted load.
    pub fn dc_final_value(&self) -> f64 {
        let r_loop = self.term.r_source + self.per_unit.r * self.length;
        match self.term.load_conductance() {
            Some(g) => self.vdd / (1.0 + g * r_loop),
            None => self.vdd / r_loop,
        }
    }

    /// True when the observed output is the load current.
    pub fn observes_current(&self) -> bool {
        self.term.is_short()
    }
}

/// Analytic time-scale used to size the default simulation window.
///
/// The dominant-pole delay of the resistive part of the load, plus the
/// extra `R_th·C_L` of a load capacitor, bounded below by the line's
/// time of flight and by the `2L/R` envelope decay of the driver loop.
pub fn delay_estimate(per_unit: &LinePerUnit, length: f64, term: &Termination) -> Result<f64> {
    let totals = totals_from_per_unit(per_unit, length)?;
    let r_s = term.r_source;
    let (resistive, c_load) = match term.load {
        Load::ResCap { r_load, c_load } => {
            let load = if r_load == 0.0 {
                Load::Short
            } else if r_load.is_infinite() {
                Load::Open
            } else {
                Load::Resistive { r_load }
            };
            (Termination { r_source: r_s, load }, c_load)
        }
        _ => (*term, 0.0),
    };
    let r_loop = r_s + totals.r_total;
    let g = resistive.load_conductance();
    let base = if totals.r_total > 0.0 {
        closed_form_delay(totals.r_total, totals.c_total, &resistive, false, 0.0)?.tau_d
    } else {
        match g {
            Some(g) => r_s / (1.0 + g * r_s) * totals.c_total,
            None => 0.0,
        }
    };
    let r_thevenin = match g {
        Some(g) => r_loop / (1.0 + g * r_loop),
        None => 0.0,
    };
    let flight = (totals.l_total * totals.c_total).sqrt();
    let envelope = if r_loop > 0.0 {
        2.0 * totals.l_total / r_loop
    } else {
        10.0 * flight
    };
    let est = (base + r_thevenin * c_load).max(flight).max(envelope);
    if est > 0.0 {
        Ok(est)
    } else {
        Ok(r_loop.max(1.0) * totals.c_total)
    }
}

/// Tridiagonal matrix, row `i` = `lower[i]·x[i-1] + diag[i]·x[i] + upper[i]·x[i+1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Tridiagonal {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
}

impl Tridiagonal {
    pub fn zeros(n: usize) -> Self {
        Tridiagonal {
            lower: vec![0.0; n],
            diag: vec![0.0; n],
            upper: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn mul_vec(&self, x: &[f64], out: &mut [f64]) {
        let n = self.len();
        for i in 0..n {
            let mut acc = self.diag[i] * x[i];
            if i > 0 {
                acc += self.lower[i] * x[i - 1];
            }
            if i + 1 < n {
                acc += self.upper[i] * x[i + 1];
            }
            out[i] = acc;
        }
    }

    /// `I − alpha·self`, factorised.
    fn identity_minus(&self, alpha: f64) -> Result<TridiagonalLu> {
        let n = self.len();
        let mut m = Tridiagonal::zeros(n);
        for i in 0..n {
            m.lower[i] = -alpha * self.lower[i];
            m.diag[i] = 1.0 - alpha * self.diag[i];
            m.upper[i] = -alpha * self.upper[i];
        }
        TridiagonalLu::factor(m)
    }
}

/// Thomas-algorithm factorisation.
#[derive(Debug, Clone)]
struct TridiagonalLu {
    lower: Vec<f64>,
    inv_pivot: Vec<f64>,
    upper_scaled: Vec<f64>,
}

impl TridiagonalLu {
    fn factor(m: Tridiagonal) -> Result<Self> {
        let n = m.len();
        let mut inv_pivot = vec![0.0; n];
        let mut upper_scaled = vec![0.0; n];
        for i in 0..n {
            let pivot = if i == 0 {
                m.diag[0]
            } else {
                m.diag[i] - m.lower[i] * upper_scaled[i - 1]
            };
            if pivot == 0.0 || !pivot.is_finite() {
                return Err(Error::Instability {
                    time: 0.0,
                    reason: format!("singular step matrix at row {i}"),
                });
            }
            inv_pivot[i] = 1.0 / pivot;
            upper_scaled[i] = m.upper[i] * inv_pivot[i];
        }
        Ok(TridiagonalLu {
            lower: m.lower,
            inv_pivot,
            upper_scaled,
        })
    }

    fn solve_in_place(&self, d: &mut [f64]) {
        let n = d.len();
        for i in 0..n {
            let prev = if i == 0 { 0.0 } else { self.lower[i] * d[i - 1] };
            d[i] = (d[i] - prev) * self.inv_pivot[i];
        }
        for i in (0..n.saturating_sub(1)).rev() {
            d[i] -= self.upper_scaled[i] * d[i + 1];
        }
    }
}

/// Linear read-out `Σ coef·x[idx] + feedthrough·u`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct LinearOutput {
    pub terms: Vec<(usize, f64)>,
    pub feedthrough: f64,
}

impl LinearOutput {
    pub fn eval(&self, x: &[f64], u: f64) -> f64 {
        self.terms.iter().map(|&(i, k)| k * x[i]).sum::<f64>() + self.feedthrough * u
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    /// Voltage of the shunt capacitor at the end of section `k` (1-based).
    CapacitorVoltage(usize),
    /// Current through the series branch of section `k` (1-based).
    InductorCurrent(usize),
}

/// `x' = A·x + B·u` with the read-outs the simulator records.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderSystem {
    pub a: Tridiagonal,
    pub b: Vec<(usize, f64)>,
    pub states: Vec<StateKind>,
    pub v_load: LinearOutput,
    pub i_load: LinearOutput,
    pub i_source: LinearOutput,
}

impl LadderSystem {
    pub fn n_states(&self) -> usize {
        self.states.len()
    }

    /// `A·x + B·u`
    pub fn derivative(&self, x: &[f64], u: f64, out: &mut [f64]) {
        self.a.mul_vec(x, out);
        for &(i, k) in &self.b {
            out[i] += k * u;
        }
    }
}

/// Builds the gamma-ladder state-space model of `cfg`.
///
/// A load capacitor sits across the last section's shunt capacitor and
/// shares its state. A shorted far end removes that last capacitor voltage
/// (it is pinned at zero). Without inductance the branch currents are
/// algebraic and only capacitor voltages remain; a line with neither
/// resistance nor inductance collapses to a single node.
pub fn build_ladder(cfg: &LadderConfig) -> Result<LadderSystem> {
    cfg.validate()?;
    let n = cfg.n_segments;
    let p = &cfg.per_unit;
    let dx = cfg.length / n as f64;
    let (rs, ls, cs) = (p.r * dx, p.l * dx, p.c * dx);
    let r_src = cfg.term.r_source;
    let c_load = cfg.term.load_capacitance();
    let g_load = cfg.term.load_conductance();
    let short = g_load.is_none();
    let g = g_load.unwrap_or(0.0);

    if ls > 0.0 {
        let n_states = 2 * n - usize::from(short);
        let mut a = Tridiagonal::zeros(n_states);
        let mut states = Vec::with_capacity(n_states);
        let mut b = Vec::new();
        for k in 1..=n {
            let ip = 2 * (k - 1);
            let has_v = k < n || !short;
            let r_k = rs + if k == 1 { r_src } else { 0.0 };
            states.push(StateKind::InductorCurrent(k));
            a.diag[ip] = -r_k / ls;
            if k == 1 {
                b.push((ip, 1.0 / ls));
            } else {
                a.lower[ip] = 1.0 / ls;
            }
            if has_v {
                a.upper[ip] = -1.0 / ls;
                let vq = ip + 1;
                states.push(StateKind::CapacitorVoltage(k));
                let cap = cs + if k == n { c_load } else { 0.0 };
                a.lower[vq] = 1.0 / cap;
                if k < n {
                    a.upper[vq] = -1.0 / cap;
                } else {
                    a.diag[vq] = -g / cap;
                }
            }
        }
        let last_i = 2 * (n - 1);
        let (v_load, i_load) = if short {
            (LinearOutput::default(), LinearOutput { terms: vec![(last_i, 1.0)], feedthrough: 0.0 })
        } else {
            let v = last_i + 1;
            (
                LinearOutput { terms: vec![(v, 1.0)], feedthrough: 0.0 },
                LinearOutput { terms: vec![(v, g)], feedthrough: 0.0 },
            )
        };
        return Ok(LadderSystem {
            a,
            b,
            states,
            v_load,
            i_load,
            i_source: LinearOutput { terms: vec![(0, 1.0)], feedthrough: 0.0 },
        });
    }

    if rs > 0.0 {
        // rc ladder: states v_1..v_N (v_N dropped when shorted)
        let n_states = n - usize::from(short);
        let cond = |k: usize| 1.0 / (rs + if k == 1 { r_src } else { 0.0 });
        let mut a = Tridiagonal::zeros(n_states);
        let mut b = Vec::new();
        let mut states = Vec::with_capacity(n_states);
        for k in 1..=n_states {
            let q = k - 1;
            states.push(StateKind::CapacitorVoltage(k));
            let cap = cs + if k == n { c_load } else { 0.0 };
            let g_right = if k < n { cond(k + 1) } else { g };
            a.diag[q] = -(cond(k) + g_right) / cap;
            if k == 1 {
                b.push((q, cond(1) / cap));
            } else {
                a.lower[q] = cond(k) / cap;
            }
            if k < n_states {
                a.upper[q] = cond(k + 1) / cap;
            }
        }
        let (v_load, i_load) = if short {
            let i_load = if n >= 2 {
                LinearOutput { terms: vec![(n - 2, cond(n))], feedthrough: 0.0 }
            } else {
                LinearOutput { terms: vec![], feedthrough: cond(1) }
            };
            (LinearOutput::default(), i_load)
        } else {
            (
                LinearOutput { terms: vec![(n - 1, 1.0)], feedthrough: 0.0 },
                LinearOutput { terms: vec![(n - 1, g)], feedthrough: 0.0 },
            )
        };
        let i_source = if n_states >= 1 {
            LinearOutput { terms: vec![(0, -cond(1))], feedthrough: cond(1) }
        } else {
            LinearOutput { terms: vec![], feedthrough: cond(1) }
        };
        return Ok(LadderSystem { a, b, states, v_load, i_load, i_source });
    }

    // neither r nor l: every node is the same node, driven through R_S
    let g_src = 1.0 / r_src;
    if short {
        let through = LinearOutput { terms: vec![], feedthrough: g_src };
        return Ok(LadderSystem {
            a: Tridiagonal::zeros(0),
            b: vec![],
            states: vec![],
            v_load: LinearOutput::default(),
            i_load: through.clone(),
            i_source: through,
        });
    }
    let cap = p.c * cfg.length + c_load;
    let mut a = Tridiagonal::zeros(1);
    a.diag[0] = -(g_src + g) / cap;
    Ok(LadderSystem {
        a,
        b: vec![(0, g_src / cap)],
        states: vec![StateKind::CapacitorVoltage(1)],
        v_load: LinearOutput { terms: vec![(0, 1.0)], feedthrough: 0.0 },
        i_load: LinearOutput { terms: vec![(0, g)], feedthrough: 0.0 },
        i_source: LinearOutput { terms: vec![(0, -g_src)], feedthrough: g_src },
    })
}

/// Time-sampled ladder response.
#[derive(Debug, Clone, PartialEq)]
pub struct SimTrace {
    pub times: Vec<f64>,
    pub v_load: Vec<f64>,
    pub i_load: Vec<f64>,
    pub i_source: Vec<f64>,
    /// Configuration that produced the trace; `None` for synthetic traces.
    pub meta: Option<LadderConfig>,
}

impl SimTrace {
    /// A synthetic voltage trace, e.g. for checking metric extraction.
    pub fn from_samples(times: Vec<f64>, v_load: Vec<f64>) -> Result<Self> {
        if times.len() != v_load.len() {
            return Err(Error::invalid("v_load", "length differs from times"));
        }
        if times.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::invalid("times", "must be strictly increasing"));
        }
        let zeros = vec![0.0; times.len()];
        Ok(SimTrace {
            times,
            v_load,
            i_load: zeros.clone(),
            i_source: zeros,
            meta: None,
        })
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Load current for a shorted load, load voltage otherwise.
    pub fn observed(&self) -> &[f64] {
        match &self.meta {
            Some(cfg) if cfg.observes_current() => &self.i_load,
            _ => &self.v_load,
        }
    }
}

struct Integrator<'a> {
    sys: &'a LadderSystem,
    u: f64,
    trap: Option<(f64, TridiagonalLu)>,
    euler: Option<(f64, TridiagonalLu)>,
    scratch: Vec<f64>,
}

impl<'a> Integrator<'a> {
    fn new(sys: &'a LadderSystem, u: f64) -> Self {
        Integrator {
            sys,
            u,
            trap: None,
            euler: None,
            scratch: vec![0.0; sys.n_states()],
        }
    }

    fn trapezoidal(&mut self, x: &mut [f64], h: f64) -> Result<()> {
        if self.trap.as_ref().map(|(hh, _)| *hh) != Some(h) {
            self.trap = Some((h, self.sys.a.identity_minus(0.5 * h)?));
        }
        let lu = &self.trap.as_ref().unwrap().1;
        self.sys.a.mul_vec(x, &mut self.scratch);
        for (xi, ax) in x.iter_mut().zip(&self.scratch) {
            *xi += 0.5 * h * ax;
        }
        for &(i, k) in &self.sys.b {
            x[i] += h * k * self.u;
        }
        lu.solve_in_place(x);
        Ok(())
    }

    fn backward_euler(&mut self, x: &mut [f64], h: f64) -> Result<()> {
        if self.euler.as_ref().map(|(hh, _)| *hh) != Some(h) {
            self.euler = Some((h, self.sys.a.identity_minus(h)?));
        }
        let lu = &self.euler.as_ref().unwrap().1;
        for &(i, k) in &self.sys.b {
            x[i] += h * k * self.u;
        }
        lu.solve_in_place(x);
        Ok(())
    }

    /// First interval: two backward-Euler half steps.
    fn startup(&mut self, x: &mut [f64], h: f64) -> Result<()> {
        self.backward_euler(x, 0.5 * h)?;
        self.backward_euler(x, 0.5 * h)
    }
}

struct Recorder<'a> {
    sys: &'a LadderSystem,
    u: f64,
    bound: f64,
    trace: SimTrace,
}

impl Recorder<'_> {
    fn push(&mut self, t: f64, x: &[f64]) -> Result<()> {
        for (state, &v) in self.sys.states.iter().zip(x) {
            let bad = !v.is_finite()
                || matches!(state, StateKind::CapacitorVoltage(_)) && v.abs() > self.bound;
            if bad {
                return Err(Error::Instability {
                    time: t,
                    reason: format!("state {state:?} = {v:e} outside the passive bound ±{:e} V", self.bound),
                });
            }
        }
        self.trace.times.push(t);
        self.trace.v_load.push(self.sys.v_load.eval(x, self.u));
        self.trace.i_load.push(self.sys.i_load.eval(x, self.u));
        self.trace.i_source.push(self.sys.i_source.eval(x, self.u));
        Ok(())
    }
}

/// Integrates the step response of the ladder described by `cfg`.
pub fn simulate(cfg: &LadderConfig) -> Result<SimTrace> {
    let sys = build_ladder(cfg)?;
    SIMULATIONS.with(|c| c.set(c.get() + 1));
    let u = cfg.vdd;
    let mut rec = Recorder {
        sys: &sys,
        u,
        // A step into a passive network never exceeds twice the source,
        // up to lossless ringing; anything well beyond that is divergence.
        bound: 3.0 * u.abs().max(f64::MIN_POSITIVE),
        trace: SimTrace {
            times: Vec::new(),
            v_load: Vec::new(),
            i_load: Vec::new(),
            i_source: Vec::new(),
            meta: Some(cfg.clone()),
        },
    };
    let mut x = vec![0.0; sys.n_states()];
    rec.push(0.0, &x)?;
    let mut integ = Integrator::new(&sys, u);
    match cfg.step {
        TimeStep::Fixed(dt) => {
            let steps = (cfg.t_end / dt - 1e-9).ceil().max(1.0) as usize;
            let h = cfg.t_end / steps as f64;
            integ.startup(&mut x, h)?;
            rec.push(h, &x)?;
            for k in 2..=steps {
                integ.trapezoidal(&mut x, h)?;
                rec.push(k as f64 * h, &x)?;
            }
        }
        TimeStep::Adaptive { rel_tol } => adaptive(cfg, &sys, &mut integ, &mut rec, &mut x, rel_tol)?,
    }
    Ok(rec.trace)
}

fn adaptive(
    cfg: &LadderConfig,
    sys: &LadderSystem,
    integ: &mut Integrator<'_>,
    rec: &mut Recorder<'_>,
    x: &mut Vec<f64>,
    rel_tol: f64,
) -> Result<()> {
    let h_max = cfg.t_end / 100.0;
    let h_min = cfg.t_end * 1e-12;
    let mut h = cfg.t_end * 1e-6;
    integ.startup(x, h)?;
    let mut t = h;
    rec.push(t, x)?;

    let r_loop = cfg.term.r_source + cfg.per_unit.r * cfg.length;
    let z0 = (cfg.per_unit.l / cfg.per_unit.c).sqrt();
    let v_floor = 1e-3 * cfg.vdd.abs().max(f64::MIN_POSITIVE);
    let i_floor = v_floor / (r_loop + z0).max(f64::MIN_POSITIVE);
    let mut peak: Vec<f64> = x.iter().map(|v| v.abs()).collect();
    let mut coarse = x.clone();

    while t < cfg.t_end * (1.0 - 1e-12) {
        h = h.min(cfg.t_end - t).min(h_max);
        coarse.copy_from_slice(x);
        integ.trapezoidal(&mut coarse, h)?;
        let mut fine = x.clone();
        integ.trapezoidal(&mut fine, 0.5 * h)?;
        integ.trapezoidal(&mut fine, 0.5 * h)?;
        let mut err: f64 = 0.0;
        for (i, state) in sys.states.iter().enumerate() {
            let floor = match state {
                StateKind::CapacitorVoltage(_) => v_floor,
                StateKind::InductorCurrent(_) => i_floor,
            };
            let scale = rel_tol * (peak[i].max(fine[i].abs()) + floor);
            err = err.max((fine[i] - coarse[i]).abs() / 3.0 / scale);
        }
        if err <= 1.0 || h <= h_min {
            t += h;
            *x = fine;
            for (p, v) in peak.iter_mut().zip(x.iter()) {
                *p = p.max(v.abs());
            }
            rec.push(t, x)?;
        }
        let factor = if err > 0.0 { 0.9 * err.powf(-1.0 / 3.0) } else { 2.0 };
        h = (h * factor.clamp(0.2, 2.0)).max(h_min);
    }
    Ok(())
}

/// Step-response measurements of a trace.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepMetrics {
    /// Time to 50% of the final value (s).
    pub t50: f64,
    /// Time to 63.2% of the final value (s).
    pub t63: f64,
    pub overshoot_pct: f64,
    pub final_value: f64,
    /// Last sample within 0.1% of the final value.
    pub settled: bool,
}

fn crossing(times: &[f64], y: &[f64], level: f64) -> Option<f64> {
    let i = y.iter().position(|&v| v >= level)?;
    if i == 0 {
        return Some(times[0]);
    }
    let (t0, t1, y0, y1) = (times[i - 1], times[i], y[i - 1], y[i]);
    Some(t0 + (level - y0) / (y1 - y0) * (t1 - t0))
}

/// Threshold crossings and overshoot of the observed output.
///
/// The final value is the DC solution of the traced circuit, or the last
/// sample for a synthetic trace.
pub fn extract_metrics(trace: &SimTrace) -> Result<StepMetrics> {
    if trace.is_empty() {
        return Err(Error::invalid("trace", "empty trace"));
    }
    let y = trace.observed();
    let last = *y.last().unwrap();
    let final_value = trace.meta.as_ref().map_or(last, LadderConfig::dc_final_value);
    if final_value == 0.0 || !final_value.is_finite() {
        return Err(Error::NotSettled { threshold_pct: 50.0 });
    }
    let norm: Vec<f64> = y.iter().map(|v| v / final_value).collect();
    let t50 = crossing(&trace.times, &norm, 0.5).ok_or(Error::NotSettled { threshold_pct: 50.0 })?;
    let t63 = crossing(&trace.times, &norm, ONE_TAU_FRACTION)
        .ok_or(Error::NotSettled { threshold_pct: 100.0 * ONE_TAU_FRACTION })?;
    let peak = norm.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(StepMetrics {
        t50,
        t63,
        overshoot_pct: (100.0 * (peak - 1.0)).max(0.0),
        final_value,
        settled: (last / final_value - 1.0).abs() <= SETTLE_TOLERANCE,
    })
}
