//! Figures of merit: lumped-RLC damping, energy per bit and throughput.

use std::fmt;

use num_complex::Complex64;

use crate::delay::DelayEstimate;
use crate::error::{Error, Result};
use crate::params::LineTotals;

/// Default effective swing of a current-mode receiver relative to full rail.
pub const CURRENT_MODE_SWING: f64 = 0.577_350_269_189_625_8; // 1/sqrt(3)

const CRITICAL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Overdamped,
    Critical,
    Underdamped,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Overdamped => "overdamped",
            Regime::Critical => "critical",
            Regime::Underdamped => "underdamped",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DampingReport {
    /// Damping factor; `+∞` for a line without inductance.
    pub xi: f64,
    /// Undamped natural frequency 1/sqrt(L_T·C_T) (rad/s).
    pub omega0: f64,
    pub poles: [Complex64; 2],
    pub regime: Regime,
}

/// Damping of the single-section series RLC model of a line:
/// `ξ = (R_T/2)·sqrt(C_T/L_T)`, poles `ω0·(−ξ ± sqrt(ξ² − 1))`.
///
/// A line with `L_T = 0` is the pure rc limit: `ξ = +∞`, the first pole
/// tends to `−1/(R_T·C_T)` and the second to `−∞`.
pub fn damping_factor(totals: &LineTotals) -> DampingReport {
    let (r, l, c) = (totals.r_total, totals.l_total, totals.c_total);
    if l == 0.0 {
        let p1 = if r > 0.0 { -1.0 / (r * c) } else { f64::NEG_INFINITY };
        return DampingReport {
            xi: f64::INFINITY,
            omega0: f64::INFINITY,
            poles: [Complex64::new(p1, 0.0), Complex64::new(f64::NEG_INFINITY, 0.0)],
            regime: Regime::Overdamped,
        };
    }
    let xi = 0.5 * r * (c / l).sqrt();
    let omega0 = 1.0 / (l * c).sqrt();
    let disc = Complex64::new(xi * xi - 1.0, 0.0).sqrt();
    let mut poles = [omega0 * (-xi + disc), omega0 * (-xi - disc)];
    if xi > 1.0 {
        // product form keeps the small root accurate when ξ ≫ 1
        let big = omega0 * (-xi - (xi * xi - 1.0).sqrt());
        poles = [Complex64::new(omega0 * omega0 / big, 0.0), Complex64::new(big, 0.0)];
    }
    let regime = if (xi - 1.0).abs() < CRITICAL_TOLERANCE {
        poles = [Complex64::new(-omega0, 0.0); 2];
        Regime::Critical
    } else if xi > 1.0 {
        Regime::Overdamped
    } else {
        Regime::Underdamped
    };
    DampingReport {
        xi,
        omega0,
        poles,
        regime,
    }
}

/// Percent overshoot of an ideal second-order step response,
/// `100·exp(−πξ/sqrt(1 − ξ²))`, zero for `ξ ≥ 1`.
pub fn second_order_overshoot_pct(xi: f64) -> f64 {
    if xi >= 1.0 {
        0.0
    } else {
        100.0 * (-std::f64::consts::PI * xi / (1.0 - xi * xi).sqrt()).exp()
    }
}

/// L/R time constant of the driver loop, `L_T / (R_S + R_T)`.
pub fn inductive_time_constant(l_total: f64, r_source: f64, r_total: f64) -> Result<f64> {
    let r = r_source + r_total;
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::invalid("r_source + r_total", format!("must be > 0 (got {r})")));
    }
    if !(l_total.is_finite() && l_total >= 0.0) {
        return Err(Error::invalid("l_total", format!("must be >= 0 (got {l_total})")));
    }
    Ok(l_total / r)
}

/// `½·C_int·(swing_ratio·Vdd)²`. With `swing_ratio = 1` this is the plain
/// CV²/2 switching energy.
pub fn energy_per_bit(c_int: f64, vdd: f64, swing_ratio: f64) -> Result<f64> {
    if !(c_int.is_finite() && c_int >= 0.0) {
        return Err(Error::invalid("c_int", format!("must be >= 0 (got {c_int})")));
    }
    if !(vdd.is_finite() && vdd >= 0.0) {
        return Err(Error::invalid("vdd", format!("must be >= 0 (got {vdd})")));
    }
    if !(swing_ratio > 0.0 && swing_ratio <= 1.0) {
        return Err(Error::invalid("swing_ratio", format!("must lie in (0, 1] (got {swing_ratio})")));
    }
    let v = swing_ratio * vdd;
    Ok(0.5 * c_int * v * v)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    /// Energy per bit (J).
    pub e_bit: f64,
    /// bit/s
    pub throughput: f64,
    /// Throughput-energy product (W).
    pub tep: f64,
    pub swing_ratio: f64,
}

impl EnergyReport {
    /// Energy per bit divided by throughput, i.e. energy·delay (J·s).
    pub fn energy_delay(&self) -> f64 {
        self.e_bit / self.throughput
    }
}

/// Throughput convention: `bits_per_tau` bits per delay time constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThroughputModel {
    pub bits_per_tau: f64,
}

impl Default for ThroughputModel {
    fn default() -> Self {
        ThroughputModel { bits_per_tau: 1.0 }
    }
}

impl ThroughputModel {
    pub fn throughput(&self, tau_d: f64) -> Result<f64> {
        if !(tau_d.is_finite() && tau_d > 0.0) {
            return Err(Error::invalid("tau_d", format!("must be > 0 (got {tau_d})")));
        }
        if !(self.bits_per_tau.is_finite() && self.bits_per_tau > 0.0) {
            return Err(Error::invalid("bits_per_tau", "must be > 0"));
        }
        Ok(self.bits_per_tau / tau_d)
    }

    pub fn report(&self, tau_d: f64, e_bit: f64, swing_ratio: f64) -> Result<EnergyReport> {
        let throughput = self.throughput(tau_d)?;
        if !(e_bit.is_finite() && e_bit >= 0.0) {
            return Err(Error::invalid("e_bit", format!("must be >= 0 (got {e_bit})")));
        }
        Ok(EnergyReport {
            e_bit,
            throughput,
            tep: throughput * e_bit,
            swing_ratio,
        })
    }
}

/// Throughput `1/tau_d` and throughput-energy product for a full-swing bit.
pub fn throughput_energy(delay: &DelayEstimate, e_bit: f64) -> Result<EnergyReport> {
    ThroughputModel::default().report(delay.tau_d, e_bit, 1.0)
}
