//! Result rows and the CSV files written by the harness.

use std::io::{Read, Write};

use crate::error::{Error, Result};
use crate::exact::TransferSample;
use crate::ladder::SimTrace;

pub const RESULT_HEADER: [&str; 9] = [
    "scenario",
    "swept_value",
    "tau_d_s",
    "t50_sim_s",
    "t63_sim_s",
    "xi",
    "e_bit_J",
    "throughput_bps",
    "reduction_vs_vm_pct",
];

pub const TRACE_HEADER: [&str; 3] = ["t_s", "v_load_V", "i_source_A"];
pub const FREQ_HEADER: [&str; 3] = ["omega_rad_s", "mag", "phase_rad"];

/// One output row. Analyses that were not requested leave their column empty.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultRow {
    pub scenario: String,
    pub swept_value: Option<f64>,
    pub tau_d: Option<f64>,
    pub t50_sim: Option<f64>,
    pub t63_sim: Option<f64>,
    pub xi: Option<f64>,
    pub e_bit: Option<f64>,
    pub throughput: Option<f64>,
    pub reduction_vs_vm_pct: Option<f64>,
}

impl ResultRow {
    pub fn new(scenario: impl Into<String>) -> Self {
        ResultRow {
            scenario: scenario.into(),
            ..Default::default()
        }
    }

    /// `(t63_sim − tau_d) / tau_d`, when both are present.
    pub fn relative_difference(&self) -> Option<f64> {
        match (self.t63_sim, self.tau_d) {
            (Some(sim), Some(tau)) if tau != 0.0 => Some((sim - tau) / tau),
            _ => None,
        }
    }

    fn fields(&self) -> [String; 9] {
        [
            self.scenario.clone(),
            fmt_opt(self.swept_value),
            fmt_opt(self.tau_d),
            fmt_opt(self.t50_sim),
            fmt_opt(self.t63_sim),
            fmt_opt(self.xi),
            fmt_opt(self.e_bit),
            fmt_opt(self.throughput),
            fmt_opt(self.reduction_vs_vm_pct),
        ]
    }
}

/// Shortest text that parses back to exactly `x`.
pub fn fmt_num(x: f64) -> String {
    let a = x.abs();
    if x == 0.0 || !x.is_finite() || (1e-4..1e15).contains(&a) {
        format!("{x}")
    } else {
        format!("{x:e}")
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

fn parse_opt(field: &str, line: u64, name: &str) -> Result<Option<f64>> {
    if field.is_empty() {
        return Ok(None);
    }
    field
        .parse::<f64>()
        .map(Some)
        .map_err(|e| Error::Parse { line, reason: format!("{name}: {e}") })
}

pub fn write_results<W: Write>(w: W, rows: &[ResultRow]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(RESULT_HEADER)?;
    for row in rows {
        wtr.write_record(row.fields())?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}

/// Writes rows to `path`.
pub fn emit_csv(path: impl AsRef<std::path::Path>, rows: &[ResultRow]) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_results(std::io::BufWriter::new(file), rows)
}

pub fn read_results<R: Read>(r: R) -> Result<Vec<ResultRow>> {
    let mut rdr = csv::ReaderBuilder::new().from_reader(r);
    let header = rdr.headers()?.clone();
    if header.iter().ne(RESULT_HEADER) {
        return Err(Error::Parse {
            line: 1,
            reason: format!("expected header `{}`", RESULT_HEADER.join(",")),
        });
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec?;
        let line = rec.position().map_or(0, |p| p.line());
        let get = |i: usize| parse_opt(&rec[i], line, RESULT_HEADER[i]);
        rows.push(ResultRow {
            scenario: rec[0].to_string(),
            swept_value: get(1)?,
            tau_d: get(2)?,
            t50_sim: get(3)?,
            t63_sim: get(4)?,
            xi: get(5)?,
            e_bit: get(6)?,
            throughput: get(7)?,
            reduction_vs_vm_pct: get(8)?,
        });
    }
    Ok(rows)
}

pub fn write_trace<W: Write>(w: W, trace: &SimTrace) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(TRACE_HEADER)?;
    for i in 0..trace.len() {
        wtr.write_record([
            fmt_num(trace.times[i]),
            fmt_num(trace.v_load[i]),
            fmt_num(trace.i_source[i]),
        ])?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}

pub fn write_frequency_response<W: Write>(w: W, samples: &[TransferSample]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(FREQ_HEADER)?;
    for s in samples {
        wtr.write_record([fmt_num(s.omega()), fmt_num(s.magnitude()), fmt_num(s.phase())])?;
    }
    wtr.flush().map_err(csv::Error::from)?;
    Ok(())
}
