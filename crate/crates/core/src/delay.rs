//! Closed-form delay of a driven, resistively terminated distributed rc line.
//!
//! The exact load-end transfer function is `1 / f(u)` with
//! `u = sqrt(s·R1·C1)` and
//!
//! ```text
//! f(u) = (a/u + b·u)·sinh(u) + c·cosh(u)
//! a = R1/R_L,  b = R_S/R1,  c = 1 + R_S/R_L
//! ```
//!
//! Expanding `f` in powers of `u² = s·R1·C1` and keeping the first two terms
//! gives a single dominant pole whose reciprocal is the delay estimate
//!
//! ```text
//! tau_d = (b + c/2 + a/6) / (a + c) · R1·C1
//! ```
//!
//! Open and shorted loads are handled as algebraic limits of that ratio.

use std::fmt;

use crate::error::{Error, Result};
use crate::params::{Load, LineTotals, Termination};

/// Shielding factor applied to the source resistance in the inductance-aware mode.
pub const SOURCE_SHIELDING: f64 = 0.65;
/// Weight of the characteristic impedance in the inductance-aware mode.
pub const IMPEDANCE_WEIGHT: f64 = 0.36;
/// Highest supported series order.
pub const MAX_SERIES_ORDER: usize = 20;

/// Fraction of the final value reached after one time constant.
pub const ONE_TAU_FRACTION: f64 = 0.632_120_558_828_557_7;

/// Z0 = sqrt(L_T / C_T).
pub fn characteristic_impedance(totals: &LineTotals) -> f64 {
    (totals.l_total / totals.c_total).sqrt()
}

/// Inductance-resistance equivalent `0.65·R_S + 0.36·Z0 + R_T`.
pub fn equivalent_resistance(r_source: f64, z0: f64, r_total: f64) -> f64 {
    SOURCE_SHIELDING * r_source + IMPEDANCE_WEIGHT * z0 + r_total
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LoadLimit {
    Finite { r_load: f64 },
    /// R_L → ∞
    Open,
    /// R_L → 0
    Short,
}

/// Circuit constants of the line transfer function.
///
/// For [`LoadLimit::Short`] `a` and `c` diverge and are stored as `+∞`;
/// [`AbcCoefficients::projective`] returns the finite triple obtained by
/// scaling `f(u)` with `R_L/R1` before taking the limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AbcCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Effective total line resistance R1 (Ω).
    pub r1: f64,
    /// Total line capacitance C1 (F).
    pub c1: f64,
    pub r_source: f64,
    pub load: LoadLimit,
}

impl AbcCoefficients {
    /// Finite coefficients proportional to `(a, b, c)`; equal to them unless
    /// the load is a short.
    pub fn projective(&self) -> (f64, f64, f64) {
        match self.load {
            LoadLimit::Short => (1.0, 0.0, self.r_source / self.r1),
            _ => (self.a, self.b, self.c),
        }
    }

    /// Load-end DC voltage gain `1/(a+c) = R_L/(R1 + R_S + R_L)`.
    pub fn dc_gain(&self) -> f64 {
        match self.load {
            LoadLimit::Short => 0.0,
            _ => 1.0 / (self.a + self.c),
        }
    }

    pub fn rc_product(&self) -> f64 {
        self.r1 * self.c1
    }

    pub fn is_short_limit(&self) -> bool {
        matches!(self.load, LoadLimit::Short)
    }
}

pub fn abc_coefficients(r1: f64, c1: f64, term: &Termination) -> Result<AbcCoefficients> {
    if !(r1.is_finite() && r1 > 0.0) {
        return Err(Error::invalid("r1", format!("must be finite and > 0 (got {r1})")));
    }
    if !(c1.is_finite() && c1 > 0.0) {
        return Err(Error::invalid("c1", format!("must be finite and > 0 (got {c1})")));
    }
    term.validate()?;
    let r_s = term.r_source;
    let b = r_s / r1;
    let (a, c, load) = match term.load {
        Load::Resistive { r_load } => (r1 / r_load, 1.0 + r_s / r_load, LoadLimit::Finite { r_load }),
        Load::Open => (0.0, 1.0, LoadLimit::Open),
        Load::Short => (f64::INFINITY, f64::INFINITY, LoadLimit::Short),
        Load::ResCap { .. } => {
            return Err(Error::Unsupported(
                "closed-form delay covers resistive, open and short loads only".into(),
            ))
        }
    };
    Ok(AbcCoefficients {
        a,
        b,
        c,
        r1,
        c1,
        r_source: r_s,
        load,
    })
}

/// Truncated expansion `f(u) ≈ Σ k_m·u^(2m)`, `m = 0..=order`.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesExpansion {
    pub coefficients: Vec<f64>,
    pub order: usize,
    /// Set for a shorted load: the coefficients expand `(R_L/R1)·f(u)` in the
    /// limit R_L → 0.
    pub load_scaled: bool,
}

impl SeriesExpansion {
    /// Evaluates the polynomial at real `u`.
    pub fn eval(&self, u: f64) -> f64 {
        let u2 = u * u;
        self.coefficients.iter().rev().fold(0.0, |acc, k| acc * u2 + k)
    }

    pub fn eval_complex(&self, u: num_complex::Complex64) -> num_complex::Complex64 {
        let u2 = u * u;
        self.coefficients
            .iter()
            .rev()
            .fold(num_complex::Complex64::new(0.0, 0.0), |acc, &k| acc * u2 + k)
    }
}

pub fn series_coefficients(abc: &AbcCoefficients, order: usize) -> Result<SeriesExpansion> {
    if order == 0 {
        return Err(Error::invalid("order", "series order must be >= 1"));
    }
    if order > MAX_SERIES_ORDER {
        return Err(Error::invalid(
            "order",
            format!("series order {order} exceeds the maximum of {MAX_SERIES_ORDER}"),
        ));
    }
    let (a, b, c) = abc.projective();
    // inv_fact[k] = 1/k!
    let mut inv_fact = vec![1.0f64; 2 * order + 2];
    for k in 1..inv_fact.len() {
        inv_fact[k] = inv_fact[k - 1] / k as f64;
    }
    let mut coefficients = Vec::with_capacity(order + 1);
    coefficients.push(a + c);
    for m in 1..=order {
        coefficients.push(b * inv_fact[2 * m - 1] + c * inv_fact[2 * m] + a * inv_fact[2 * m + 1]);
    }
    Ok(SeriesExpansion {
        coefficients,
        order,
        load_scaled: abc.is_short_limit(),
    })
}

/// Single-pole reduction `K1/(s + a1)` of the line transfer function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstOrderModel {
    pub dc_gain: f64,
    /// Dominant pole (1/s).
    pub a1: f64,
    /// K1 = a1·dc_gain (1/s).
    pub k1: f64,
    pub tau_d: f64,
}

pub fn first_order_model(abc: &AbcCoefficients) -> FirstOrderModel {
    let (a, b, c) = abc.projective();
    let tau_d = (b + 0.5 * c + a / 6.0) / (a + c) * abc.rc_product();
    let a1 = 1.0 / tau_d;
    let dc_gain = abc.dc_gain();
    FirstOrderModel {
        dc_gain,
        a1,
        k1: a1 * dc_gain,
        tau_d,
    }
}

/// `Vdd·dc_gain·(1 − e^(−a1·t))`, zero for `t < 0`.
pub fn step_response(model: &FirstOrderModel, vdd: f64, t: f64) -> f64 {
    if t <= 0.0 {
        return 0.0;
    }
    vdd * model.dc_gain * -(-model.a1 * t).exp_m1()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeLabel {
    General,
    VoltageModeLimit,
    CurrentModeLimit,
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModeLabel::General => "general",
            ModeLabel::VoltageModeLimit => "voltage-mode-limit",
            ModeLabel::CurrentModeLimit => "current-mode-limit",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DelayEstimate {
    pub tau_d: f64,
    /// ln(2)·tau_d
    pub t50: f64,
    /// tau_d
    pub t63: f64,
    pub mode: ModeLabel,
    pub inductance_aware: bool,
    /// Coefficients actually used, after any inductance-aware substitution.
    pub abc: AbcCoefficients,
}

/// Dominant-pole delay of a line with total resistance `r1` and capacitance `c1`.
///
/// With `inductance_aware` set, the source resistance becomes `0.65·R_S` and
/// the line resistance becomes `R1 + 0.36·Z0` before evaluating the delay, so
/// their sum matches the inductance-resistance equivalent. Otherwise `z0` is
/// ignored.
pub fn closed_form_delay(
    r1: f64,
    c1: f64,
    term: &Termination,
    inductance_aware: bool,
    z0: f64,
) -> Result<DelayEstimate> {
    let (r1_eff, term_eff) = if inductance_aware {
        if !(z0.is_finite() && z0 >= 0.0) {
            return Err(Error::invalid("z0", format!("must be finite and >= 0 (got {z0})")));
        }
        let t = Termination {
            r_source: SOURCE_SHIELDING * term.r_source,
            load: term.load,
        };
        (r1 + IMPEDANCE_WEIGHT * z0, t)
    } else {
        (r1, *term)
    };
    let abc = abc_coefficients(r1_eff, c1, &term_eff)?;
    let model = first_order_model(&abc);
    let mode = match abc.load {
        LoadLimit::Finite { .. } => ModeLabel::General,
        LoadLimit::Open => ModeLabel::VoltageModeLimit,
        LoadLimit::Short => ModeLabel::CurrentModeLimit,
    };
    Ok(DelayEstimate {
        tau_d: model.tau_d,
        t50: std::f64::consts::LN_2 * model.tau_d,
        t63: model.tau_d,
        mode,
        inductance_aware,
        abc,
    })
}

/// [`closed_form_delay`] from line totals, with Z0 taken from the totals.
pub fn delay_for_totals(
    totals: &LineTotals,
    term: &Termination,
    inductance_aware: bool,
) -> Result<DelayEstimate> {
    closed_form_delay(
        totals.r_total,
        totals.c_total,
        term,
        inductance_aware,
        characteristic_impedance(totals),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn characteristic_impedance_examples() {
        let t = LineTotals::new(0.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(characteristic_impedance(&t), 1.0);
        let t = LineTotals::new(0.0, 0.0, 1e-12, 1.0).unwrap();
        assert_eq!(characteristic_impedance(&t), 0.0);
        let t = LineTotals::new(0.0, 25e-9, 1e-12, 1.0).unwrap();
        assert!((characteristic_impedance(&t) - 158.113883).abs() < 1e-6);
    }

    #[test]
    fn equivalent_resistance_examples() {
        assert_eq!(equivalent_resistance(0.0, 0.0, 100.0), 100.0);
        assert!((equivalent_resistance(100.0, 50.0, 200.0) - 283.0).abs() < 1e-12);
        assert!((equivalent_resistance(2500.0, 0.0, 220.0) - 1845.0).abs() < 1e-9);
    }

    #[test]
    fn abc_for_resistive_load() {
        let term = Termination::resistive(100.0, 500.0).unwrap();
        let abc = abc_coefficients(1e3, 1e-12, &term).unwrap();
        assert!(rel(abc.a, 2.0) < 1e-15);
        assert!(rel(abc.b, 0.1) < 1e-15);
        assert!(rel(abc.c, 1.2) < 1e-15);
    }

    #[test]
    fn abc_for_open_and_short() {
        let abc = abc_coefficients(123.0, 4e-13, &Termination::open(0.0).unwrap()).unwrap();
        assert_eq!((abc.a, abc.b, abc.c), (0.0, 0.0, 1.0));

        let abc = abc_coefficients(1e3, 1e-12, &Termination::short(0.0).unwrap()).unwrap();
        assert!(abc.is_short_limit());
        assert_eq!(abc.dc_gain(), 0.0);
        let tau = first_order_model(&abc).tau_d;
        assert!(rel(tau, 1e-9 / 6.0) < 1e-15);
    }

    #[test]
    fn abc_rejects_rescap_and_bad_inputs() {
        let term = Termination::new(0.0, Load::ResCap { r_load: 10.0, c_load: 1e-15 }).unwrap();
        assert!(matches!(abc_coefficients(1.0, 1.0, &term), Err(Error::Unsupported(_))));
        let open = Termination::open(0.0).unwrap();
        assert!(abc_coefficients(0.0, 1.0, &open).is_err());
        assert!(abc_coefficients(1.0, 0.0, &open).is_err());
    }

    #[test]
    fn series_matches_known_maclaurin_expansions() {
        let mk = |a, b, c| AbcCoefficients {
            a,
            b,
            c,
            r1: 1.0,
            c1: 1.0,
            r_source: 0.0,
            load: LoadLimit::Open,
        };
        // cosh
        let s = series_coefficients(&mk(0.0, 0.0, 1.0), 3).unwrap();
        let want = [1.0, 0.5, 1.0 / 24.0, 1.0 / 720.0];
        for (k, w) in s.coefficients.iter().zip(want) {
            assert!(rel(*k, w) < 1e-15);
        }
        // sinh(u)/u
        let s = series_coefficients(&mk(1.0, 0.0, 0.0), 2).unwrap();
        let want = [1.0, 1.0 / 6.0, 1.0 / 120.0];
        for (k, w) in s.coefficients.iter().zip(want) {
            assert!(rel(*k, w) < 1e-15);
        }
        // u·sinh(u)
        let s = series_coefficients(&mk(0.0, 1.0, 0.0), 2).unwrap();
        assert_eq!(s.coefficients[0], 0.0);
        assert_eq!(s.coefficients[1], 1.0);
        assert!(rel(s.coefficients[2], 1.0 / 6.0) < 1e-15);
    }

    #[test]
    fn series_order_bounds() {
        let abc = abc_coefficients(1.0, 1.0, &Termination::open(0.0).unwrap()).unwrap();
        assert!(series_coefficients(&abc, 0).is_err());
        assert!(series_coefficients(&abc, 21).is_err());
        assert_eq!(series_coefficients(&abc, 20).unwrap().coefficients.len(), 21);
    }

    #[test]
    fn first_order_examples() {
        // R1C1 = 1 ns
        let term = Termination::resistive(100.0, 500.0).unwrap();
        let abc = abc_coefficients(1e3, 1e-12, &term).unwrap();
        let m = first_order_model(&abc);
        let want = (0.1 + 0.6 + 2.0 / 6.0) / 3.2 * 1e-9;
        assert!(rel(m.tau_d, want) < 1e-12);
        assert!(rel(m.tau_d, 322.917e-12) < 1e-5);
        assert!(rel(m.dc_gain, 1.0 / 3.2) < 1e-15);
        assert!((m.tau_d * m.a1 - 1.0).abs() < 1e-15);

        let abc = abc_coefficients(1e3, 1e-12, &Termination::open(0.0).unwrap()).unwrap();
        assert!(rel(first_order_model(&abc).tau_d, 0.5e-9) < 1e-15);
    }

    #[test]
    fn open_limit_with_source_resistance() {
        // open limit: R_S·C1 + R1·C1/2 = 600 ps
        let near_open = Termination::resistive(100.0, 1e12).unwrap();
        let d = closed_form_delay(1e3, 1e-12, &near_open, false, 0.0).unwrap();
        assert!(rel(d.tau_d, 600e-12) < 1e-8);
        let open = Termination::open(100.0).unwrap();
        let d = closed_form_delay(1e3, 1e-12, &open, false, 0.0).unwrap();
        assert!(rel(d.tau_d, 600e-12) < 1e-14);
        assert_eq!(d.mode, ModeLabel::VoltageModeLimit);
    }

    #[test]
    fn table4_last_row_limits() {
        let rc = 6.0 * 46.245e-12;
        let vm = closed_form_delay(rc, 1.0, &Termination::open(0.0).unwrap(), false, 0.0).unwrap();
        assert!(rel(vm.tau_d, 138.735e-12) < 1e-12);
        assert!(rel(vm.tau_d, 138.737e-12) < 1e-4);
        let cm = closed_form_delay(rc, 1.0, &Termination::short(0.0).unwrap(), false, 0.0).unwrap();
        assert!(rel(cm.tau_d, 46.245e-12) < 1e-12);
        assert_eq!(cm.mode, ModeLabel::CurrentModeLimit);
        assert!(cm.t50 < cm.t63);
    }

    #[test]
    fn inductance_aware_substitution() {
        let term = Termination::resistive(100.0, 500.0).unwrap();
        let aware = closed_form_delay(1e3, 1e-12, &term, true, 50.0).unwrap();
        assert!(rel(aware.abc.r1, 1018.0) < 1e-15);
        assert!(rel(aware.abc.r_source, 65.0) < 1e-15);
        // naive mode ignores z0
        let naive = closed_form_delay(1e3, 1e-12, &term, false, 50.0).unwrap();
        let plain = closed_form_delay(1e3, 1e-12, &term, false, 0.0).unwrap();
        assert_eq!(naive.tau_d, plain.tau_d);
        assert!(!naive.inductance_aware && aware.inductance_aware);
    }

    #[test]
    fn step_response_examples() {
        let abc = abc_coefficients(1e3, 1e-12, &Termination::resistive(100.0, 500.0).unwrap()).unwrap();
        let m = first_order_model(&abc);
        assert_eq!(step_response(&m, 1.0, 0.0), 0.0);
        assert_eq!(step_response(&m, 1.0, -1.0), 0.0);
        let v = step_response(&m, 2.0, m.tau_d);
        assert!(rel(v, 2.0 * m.dc_gain * ONE_TAU_FRACTION) < 1e-14);
        let v = step_response(&m, 2.0, 1e3 * m.tau_d);
        assert!(rel(v, 2.0 / 3.2) < 1e-15);
    }
}
