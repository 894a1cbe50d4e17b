//! Damping factor of a line against the overshoot seen in a single-section
//! simulation.

use icm::ladder::{extract_metrics, simulate, LadderConfig};
use icm::merit::{damping_factor, second_order_overshoot_pct};
use icm::params::{LineTotals, Termination};

fn main() -> icm::Result<()> {
    let (l, c): (f64, f64) = (10e-9, 1e-12);
    println!("{:>6} {:>12} {:>14} {:>14}", "xi", "regime", "overshoot %", "formula %");
    for xi in [0.2, 0.5, 0.8, 1.0, 2.0, 5.0] {
        let r = 2.0 * xi * (l / c).sqrt();
        let totals = LineTotals::new(r, l, c, 1e-3)?;
        let d = damping_factor(&totals);
        let cfg = LadderConfig::new(totals.per_unit(), 1e-3, Termination::open(0.0)?, 1.0)?.with_segments(1);
        let m = extract_metrics(&simulate(&cfg)?)?;
        println!(
            "{:>6.2} {:>12} {:>14.3} {:>14.3}",
            d.xi,
            d.regime.to_string(),
            m.overshoot_pct,
            second_order_overshoot_pct(d.xi)
        );
    }
    Ok(())
}
