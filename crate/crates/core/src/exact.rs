//! Exact s-domain transfer function of the distributed rc line.
//!
//! `H(s) = 1 / [(a/u + b·u)·sinh(u) + c·cosh(u)]`, `u = sqrt(s·R1·C1)`.
//! The expression is even in `u`, so the choice of square-root branch does
//! not matter. Inductance does not appear here; it only enters the
//! closed-form model through the equivalent-resistance substitution.

use num_complex::Complex64;

use crate::delay::{abc_coefficients, AbcCoefficients};
use crate::error::{Error, Result};
use crate::params::{Load, Termination};

/// One evaluation point of the exact transfer function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferSample {
    pub s: Complex64,
    pub h: Complex64,
}

impl TransferSample {
    pub fn omega(&self) -> f64 {
        self.s.im
    }

    pub fn magnitude(&self) -> f64 {
        self.h.norm()
    }

    pub fn phase(&self) -> f64 {
        self.h.arg()
    }
}

/// `sinh(u)/u`, continuous through `u = 0`.
fn sinhc(u: Complex64) -> Complex64 {
    if u.norm() < 1e-3 {
        let u2 = u * u;
        Complex64::new(1.0, 0.0) + u2 / 6.0 * (Complex64::new(1.0, 0.0) + u2 / 20.0 * (Complex64::new(1.0, 0.0) + u2 / 42.0))
    } else {
        u.sinh() / u
    }
}

/// Denominator `f(u)` of the transfer function, evaluated with hyperbolic
/// functions of complex argument.
pub fn denominator(abc: &AbcCoefficients, u: Complex64) -> Complex64 {
    let (a, b, c) = abc.projective();
    a * sinhc(u) + b * u * u.sinh() + c * u.cosh()
}

fn check_load(term: &Termination) -> Result<()> {
    match term.load {
        Load::Resistive { .. } | Load::Open => Ok(()),
        Load::Short => Err(Error::Unsupported(
            "the load-end voltage transfer of a shorted line is identically zero".into(),
        )),
        Load::ResCap { .. } => Err(Error::Unsupported(
            "the exact transfer covers resistive (and open) loads only".into(),
        )),
    }
}

fn transfer_from_abc(abc: &AbcCoefficients, s: Complex64) -> Result<Complex64> {
    let u = (s * abc.rc_product()).sqrt();
    let (a, b, c) = abc.projective();
    let terms = [a * sinhc(u), b * u * u.sinh(), c * u.cosh()];
    let f: Complex64 = terms.iter().sum();
    // each term is bounded by its coefficient times (1 + |u|²)·cosh|u|
    let scale = (a + b * u.norm_sqr() + c) * u.norm().cosh();
    if !f.is_finite() {
        // |u| large enough that cosh overflows: the line has fully attenuated.
        return Ok(Complex64::new(0.0, 0.0));
    }
    if f.norm() <= 1e-12 * scale {
        return Err(Error::Pole {
            re: s.re,
            im: s.im,
            magnitude: f.norm(),
        });
    }
    Ok(f.inv())
}

/// `V(d, s) / V_in(s)` for a line driven through `R_S` into a resistive load.
pub fn exact_transfer(r1: f64, c1: f64, term: &Termination, s: Complex64) -> Result<Complex64> {
    check_load(term)?;
    let abc = abc_coefficients(r1, c1, term)?;
    transfer_from_abc(&abc, s)
}

/// Exact transfer at `s = jω` for every ω in `omegas` (positive, ascending).
pub fn frequency_response(
    r1: f64,
    c1: f64,
    term: &Termination,
    omegas: &[f64],
) -> Result<Vec<TransferSample>> {
    check_load(term)?;
    let abc = abc_coefficients(r1, c1, term)?;
    if let Some(bad) = omegas.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
        return Err(Error::invalid("omega", format!("grid values must be > 0 (got {bad})")));
    }
    if omegas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid("omega", "grid must be strictly ascending"));
    }
    omegas
        .iter()
        .map(|&w| {
            let s = Complex64::new(0.0, w);
            Ok(TransferSample {
                s,
                h: transfer_from_abc(&abc, s)?,
            })
        })
        .collect()
}

/// `points` logarithmically spaced frequencies from `w_min` to `w_max`.
pub fn log_grid(w_min: f64, w_max: f64, points: usize) -> Result<Vec<f64>> {
    if !(w_min > 0.0 && w_max.is_finite() && w_max >= w_min) {
        return Err(Error::invalid("omega", "need 0 < wmin <= wmax"));
    }
    if points == 0 {
        return Ok(Vec::new());
    }
    if points == 1 {
        return Ok(vec![w_min]);
    }
    let (lo, hi) = (w_min.ln(), w_max.ln());
    let mut grid: Vec<f64> = (0..points)
        .map(|i| (lo + (hi - lo) * i as f64 / (points - 1) as f64).exp())
        .collect();
    grid[0] = w_min;
    grid[points - 1] = w_max;
    grid.dedup();
    Ok(grid)
}

/// Angular frequency at which `|H(jω)|` falls to `dc_gain/√2`.
pub fn bandwidth_3db(r1: f64, c1: f64, term: &Termination) -> Result<f64> {
    check_load(term)?;
    let abc = abc_coefficients(r1, c1, term)?;
    let target = abc.dc_gain() / std::f64::consts::SQRT_2;
    let mag = |w: f64| transfer_from_abc(&abc, Complex64::new(0.0, w)).map(|h| h.norm());
    let mut lo = 1e-3 / abc.rc_product();
    let mut hi = lo;
    while mag(hi)? > target {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 / abc.rc_product() {
            return Err(Error::invalid("term", "no -3 dB point found"));
        }
    }
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if mag(mid)? > target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi / lo - 1.0 < 1e-14 {
            break;
        }
    }
    Ok((lo * hi).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dc_gain_is_resistive_divider() {
        let term = Termination::resistive(100.0, 500.0).unwrap();
        let h = exact_transfer(1e3, 1e-12, &term, Complex64::new(0.0, 0.0)).unwrap();
        assert!((h.re - 0.3125).abs() < 1e-15 && h.im == 0.0);
    }

    #[test]
    fn unloaded_dc_gain_is_unity() {
        let h = exact_transfer(1e3, 1e-12, &Termination::open(0.0).unwrap(), Complex64::new(1e-3, 0.0)).unwrap();
        assert!((h.re - 1.0).abs() < 1e-12);
        let near_open = Termination::resistive(0.0, 1e15).unwrap();
        let h = exact_transfer(1e3, 1e-12, &near_open, Complex64::new(0.0, 0.0)).unwrap();
        assert!((h.re - 1.0).abs() < 1e-11);
    }

    #[test]
    fn magnitude_is_monotone_low_pass() {
        let term = Termination::resistive(100.0, 500.0).unwrap();
        let grid = log_grid(1e6, 1e12, 2000).unwrap();
        let resp = frequency_response(1e3, 1e-12, &term, &grid).unwrap();
        for w in resp.windows(2) {
            assert!(w[1].magnitude() < w[0].magnitude(), "not decreasing at {}", w[1].omega());
        }
    }

    #[test]
    fn empty_and_single_point_grids() {
        let term = Termination::resistive(100.0, 500.0).unwrap();
        assert!(frequency_response(1e3, 1e-12, &term, &[]).unwrap().is_empty());
        let r = frequency_response(1e3, 1e-12, &term, &[1e-3]).unwrap();
        assert!((r[0].magnitude() - 0.3125).abs() < 1e-12);
    }

    #[test]
    fn grid_must_be_positive_and_ascending() {
        let term = Termination::open(0.0).unwrap();
        assert!(frequency_response(1.0, 1.0, &term, &[1.0, 1.0]).is_err());
        assert!(frequency_response(1.0, 1.0, &term, &[0.0, 1.0]).is_err());
        assert!(frequency_response(1.0, 1.0, &term, &[2.0, 1.0]).is_err());
    }

    #[test]
    fn pole_is_reported() {
        // open line, R_S = 0: f(u) = cosh(u); zero at u = iπ/2 -> s = -(π/2)²/RC
        let term = Termination::open(0.0).unwrap();
        let s = Complex64::new(-(std::f64::consts::FRAC_PI_2).powi(2), 0.0);
        match exact_transfer(1.0, 1.0, &term, s) {
            Err(Error::Pole { magnitude, .. }) => assert!(magnitude < 1e-12),
            other => panic!("expected a pole, got {other:?}"),
        }
    }

    #[test]
    fn even_in_u() {
        let term = Termination::resistive(37.0, 250.0).unwrap();
        let abc = abc_coefficients(800.0, 2e-12, &term).unwrap();
        for (re, im) in [(0.3, 0.1), (-2.0, 5.0), (1e-5, -1e-5), (4.0, 0.0)] {
            let u = Complex64::new(re, im);
            let f1 = denominator(&abc, u);
            let f2 = denominator(&abc, -u);
            assert!((f1 - f2).norm() <= 1e-15 * f1.norm());
        }
    }

    #[test]
    fn short_and_rescap_are_unsupported() {
        let s = Complex64::new(0.0, 1.0);
        assert!(matches!(
            exact_transfer(1.0, 1.0, &Termination::short(0.0).unwrap(), s),
            Err(Error::Unsupported(_))
        ));
        let rc = Termination::new(0.0, Load::ResCap { r_load: 1.0, c_load: 1.0 }).unwrap();
        assert!(exact_transfer(1.0, 1.0, &rc, s).is_err());
    }

    #[test]
    fn log_grid_endpoints() {
        let g = log_grid(1e6, 1e12, 7).unwrap();
        assert_eq!(g.len(), 7);
        assert!(g[0] == 1e6 && g[6] == 1e12);
        assert!(log_grid(1.0, 10.0, 0).unwrap().is_empty());
    }
}
