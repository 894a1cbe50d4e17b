//! Dominant-pole delay of a 10 mm line for several receiver impedances,
//! with and without the inductance-aware correction.

use icm::delay::{characteristic_impedance, delay_for_totals};
use icm::params::{LinePerUnit, Termination};

fn main() -> icm::Result<()> {
    let line = LinePerUnit::new(22e3, 1.29129e-5, 2e-10)?;
    let totals = line.totals(10e-3)?;
    println!(
        "R_T = {} ohm, L_T = {:e} H, C_T = {:e} F, Z0 = {:.1} ohm",
        totals.r_total,
        totals.l_total,
        totals.c_total,
        characteristic_impedance(&totals)
    );

    let loads = [
        ("short", Termination::short(0.0)?),
        ("50 ohm", Termination::resistive(0.0, 50.0)?),
        ("1 kohm", Termination::resistive(0.0, 1e3)?),
        ("open", Termination::open(0.0)?),
    ];
    println!("{:>8} {:>12} {:>12} {:>16}", "load", "tau_d (ps)", "t50 (ps)", "aware tau (ps)");
    for (label, term) in loads {
        let naive = delay_for_totals(&totals, &term, false)?;
        let aware = delay_for_totals(&totals, &term, true)?;
        println!(
            "{label:>8} {:>12.3} {:>12.3} {:>16.3}",
            naive.tau_d * 1e12,
            naive.t50 * 1e12,
            aware.tau_d * 1e12
        );
    }
    Ok(())
}
