//! Current-mode vs voltage-mode delay table.
//!
//! Each input row carries a measured current-mode delay. With an ideal
//! driver (R_S = 0) the current-mode delay is `R1·C1/6`, which fixes the
//! line's `R1·C1`; the voltage-mode delay and the reduction then follow
//! from the closed-form model and are compared with the tabulated columns.

use std::io::{Read, Write};
use std::path::Path;

use crate::delay::closed_form_delay;
use crate::error::{Error, Result};
use crate::harness::report::fmt_num;
use crate::params::{Termination, Tier};

pub const TABLE4_HEADER: [&str; 5] = ["tier", "length_um", "cm_delay_ps", "vm_delay_ps", "reduction_pct"];

pub const REPORT_HEADER: [&str; 10] = [
    "length_um",
    "cm_delay_ps",
    "rc_product_ps",
    "vm_predicted_ps",
    "vm_table_ps",
    "vm_error_pct",
    "reduction_predicted_pct",
    "reduction_table_pct",
    "reduction_error_pp",
    "reduction_from_columns_pct",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Table4Row {
    pub tier: Option<Tier>,
    pub length_um: f64,
    pub cm_delay_ps: f64,
    pub vm_delay_ps: Option<f64>,
    pub reduction_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table4Prediction {
    pub length_um: f64,
    pub cm_delay_ps: f64,
    pub rc_product_ps: f64,
    pub vm_predicted_ps: f64,
    pub vm_table_ps: Option<f64>,
    /// |predicted − table| / table, percent.
    pub vm_error_pct: Option<f64>,
    pub reduction_predicted_pct: f64,
    pub reduction_table_pct: Option<f64>,
    /// |predicted − table| in percentage points.
    pub reduction_error_pp: Option<f64>,
    /// Reduction recomputed from the tabulated delay columns.
    pub reduction_from_columns_pct: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table4Report {
    pub rows: Vec<Table4Prediction>,
}

impl Table4Report {
    pub fn max_vm_error_pct(&self) -> f64 {
        self.rows.iter().filter_map(|r| r.vm_error_pct).fold(0.0, f64::max)
    }

    pub fn max_reduction_error_pp(&self) -> f64 {
        self.rows.iter().filter_map(|r| r.reduction_error_pp).fold(0.0, f64::max)
    }

    pub fn passes(&self, vm_tol_pct: f64, reduction_tol_pp: f64) -> bool {
        self.max_vm_error_pct() <= vm_tol_pct && self.max_reduction_error_pp() <= reduction_tol_pp
    }
}

pub fn read_table4<R: Read>(r: R) -> Result<Vec<Table4Row>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(TABLE4_HEADER) {
        return Err(Error::Parse {
            line: 1,
            reason: format!("expected header `{}`", TABLE4_HEADER.join(",")),
        });
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let num = |i: usize| -> Result<Option<f64>> {
            if rec[i].is_empty() {
                return Ok(None);
            }
            rec[i]
                .parse::<f64>()
                .map(Some)
                .map_err(|e| Error::Parse { line, reason: format!("{}: {e}", TABLE4_HEADER[i]) })
        };
        let tier = if rec[0].is_empty() {
            None
        } else {
            Some(rec[0].parse::<Tier>().map_err(|reason| Error::Parse { line, reason })?)
        };
        let length_um = num(1)?.ok_or_else(|| Error::validation("length_um", "required").at_line(line))?;
        let cm_delay_ps = num(2)?.ok_or_else(|| Error::validation("cm_delay_ps", "required").at_line(line))?;
        if !length_um.is_finite() || length_um <= 0.0 {
            return Err(Error::validation("length_um", "must be > 0").at_line(line));
        }
        if !(cm_delay_ps > 0.0 && cm_delay_ps.is_finite()) {
            return Err(Error::validation("cm_delay_ps", "must be > 0").at_line(line));
        }
        rows.push(Table4Row {
            tier,
            length_um,
            cm_delay_ps,
            vm_delay_ps: num(3)?,
            reduction_pct: num(4)?,
        });
    }
    Ok(rows)
}

pub fn load_table4(path: impl AsRef<Path>) -> Result<Vec<Table4Row>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_table4(file)
}

/// Predicts the voltage-mode delay and the reduction for every row.
pub fn reproduce_table4(rows: &[Table4Row]) -> Result<Table4Report> {
    const C1: f64 = 1e-12;
    let cm_term = Termination::short(0.0)?;
    let vm_term = Termination::open(0.0)?;
    let rows = rows
        .iter()
        .map(|row| {
            let rc_product_ps = 6.0 * row.cm_delay_ps;
            let r1 = rc_product_ps * 1e-12 / C1;
            let cm = closed_form_delay(r1, C1, &cm_term, false, 0.0)?;
            let vm = closed_form_delay(r1, C1, &vm_term, false, 0.0)?;
            let vm_predicted_ps = vm.tau_d * 1e12;
            let reduction_predicted_pct = 100.0 * (1.0 - cm.tau_d / vm.tau_d);
            Ok(Table4Prediction {
                length_um: row.length_um,
                cm_delay_ps: row.cm_delay_ps,
                rc_product_ps,
                vm_predicted_ps,
                vm_table_ps: row.vm_delay_ps,
                vm_error_pct: row.vm_delay_ps.map(|t| 100.0 * ((vm_predicted_ps - t) / t).abs()),
                reduction_predicted_pct,
                reduction_table_pct: row.reduction_pct,
                reduction_error_pp: row.reduction_pct.map(|t| (reduction_predicted_pct - t).abs()),
                reduction_from_columns_pct: row
                    .vm_delay_ps
                    .map(|vm| 100.0 * (vm - row.cm_delay_ps) / vm),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table4Report { rows })
}

pub fn write_table4_report<W: Write>(w: W, report: &Table4Report) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(REPORT_HEADER)?;
    let opt = |x: Option<f64>| x.map(fmt_num).unwrap_or_default();
    for r in &report.rows {
        wtr.write_record([
            fmt_num(r.length_um),
            fmt_num(r.cm_delay_ps),
            fmt_num(r.rc_product_ps),
            fmt_num(r.vm_predicted_ps),
            opt(r.vm_table_ps),
            opt(r.vm_error_pct),
            fmt_num(r.reduction_predicted_pct),
            opt(r.reduction_table_pct),
            opt(r.reduction_error_pp),
            opt(r.reduction_from_columns_pct),
        ])?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}
