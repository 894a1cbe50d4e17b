//! Energy per bit and throughput for voltage-mode and current-mode receivers.

use icm::delay::closed_form_delay;
use icm::merit::{energy_per_bit, ThroughputModel, CURRENT_MODE_SWING};
use icm::params::Termination;

fn main() -> icm::Result<()> {
    let (r1, c1, vdd) = (500.0, 90e-15, 1.0);
    let model = ThroughputModel::default();
    for (label, term, swing) in [
        ("VM", Termination::open(0.0)?, 1.0),
        ("CM", Termination::short(0.0)?, CURRENT_MODE_SWING),
    ] {
        let tau = closed_form_delay(r1, c1, &term, false, 0.0)?.tau_d;
        let e = energy_per_bit(c1, vdd, swing)?;
        let r = model.report(tau, e, swing)?;
        println!(
            "{label}: tau_d = {:.3} ps, E_bit = {:.4} pJ, throughput = {:.2} Gb/s, E/throughput = {:.3e} J*s",
            tau * 1e12,
            e * 1e12,
            r.throughput / 1e9,
            r.energy_delay()
        );
    }
    Ok(())
}
