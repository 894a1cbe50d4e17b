//! Voltage-mode delays predicted from the tabulated current-mode delays.

use std::path::Path;

use icm::harness::{load_table4, reproduce_table4};

fn main() -> icm::Result<()> {
    let file = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/table4_cnt_45nm.csv");
    let report = reproduce_table4(&load_table4(file)?)?;
    println!("{:>9} {:>9} {:>12} {:>10} {:>9}", "len (um)", "CM (ps)", "VM pred (ps)", "VM (ps)", "red. %");
    for r in &report.rows {
        println!(
            "{:>9} {:>9} {:>12.4} {:>10} {:>9.3}",
            r.length_um,
            r.cm_delay_ps,
            r.vm_predicted_ps,
            r.vm_table_ps.map_or("-".into(), |v| v.to_string()),
            r.reduction_predicted_pct
        );
    }
    println!(
        "max VM error {:.3}%, max reduction error {:.3} pp",
        report.max_vm_error_pct(),
        report.max_reduction_error_pp()
    );
    Ok(())
}
