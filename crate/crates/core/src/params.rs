//! Physical line parameters, terminations and reference geometry.
//!
//! All values are SI. The CSV loaders validate every record and either return
//! the complete list or an error; there is no partially valid result.

use std::fmt;
use std::io::{Read, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Material {
    Al,
    Cu,
    Cnt,
    Other(String),
}

impl FromStr for Material {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "Al" => Material::Al,
            "Cu" => Material::Cu,
            "CNT" => Material::Cnt,
            other => Material::Other(other.to_string()),
        })
    }
}

impl fmt::Display for Material {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Material::Al => f.write_str("Al"),
            Material::Cu => f.write_str("Cu"),
            Material::Cnt => f.write_str("CNT"),
            Material::Other(s) => f.write_str(s),
        }
    }
}

/// Per-unit-length parameters of a wire.
#[derive(Debug, Clone, PartialEq)]
pub struct LinePerUnit {
    /// Resistance per length (Ω/m).
    pub r: f64,
    /// Inductance per length (H/m).
    pub l: f64,
    /// Capacitance per length (F/m).
    pub c: f64,
    /// Metadata only.
    pub material: Material,
    /// Free-text technology label, e.g. `45nm`.
    pub node_label: String,
}

impl LinePerUnit {
    pub fn new(r: f64, l: f64, c: f64) -> Result<Self> {
        let p = LinePerUnit {
            r,
            l,
            c,
            material: Material::Other("unspecified".into()),
            node_label: String::new(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_labels(mut self, material: Material, node_label: impl Into<String>) -> Self {
        self.material = material;
        self.node_label = node_label.into();
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_field("r", self.r, |v| v >= 0.0, "must be finite and >= 0")?;
        check_field("l", self.l, |v| v >= 0.0, "must be finite and >= 0")?;
        check_field("c", self.c, |v| v > 0.0, "must be finite and > 0")?;
        Ok(())
    }

    pub fn totals(&self, d: f64) -> Result<LineTotals> {
        totals_from_per_unit(self, d)
    }
}

fn check_field(name: &str, v: f64, ok: impl Fn(f64) -> bool, reason: &str) -> Result<()> {
    if v.is_finite() && ok(v) {
        Ok(())
    } else {
        Err(Error::validation(name, format!("{reason} (got {v})")))
    }
}

/// Totals of a segment of length `d`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineTotals {
    /// Total resistance R_T (Ω).
    pub r_total: f64,
    /// Total inductance L_T (H).
    pub l_total: f64,
    /// Total capacitance C_T (F).
    pub c_total: f64,
    /// Length (m).
    pub length: f64,
}

impl LineTotals {
    /// Totals given directly (not derived from per-unit values).
    pub fn new(r_total: f64, l_total: f64, c_total: f64, length: f64) -> Result<Self> {
        check_field("r_total", r_total, |v| v >= 0.0, "must be finite and >= 0")?;
        check_field("l_total", l_total, |v| v >= 0.0, "must be finite and >= 0")?;
        check_field("c_total", c_total, |v| v > 0.0, "must be finite and > 0")?;
        check_field("length", length, |v| v > 0.0, "must be finite and > 0")?;
        Ok(LineTotals {
            r_total,
            l_total,
            c_total,
            length,
        })
    }

    /// Per-unit values that reproduce these totals over `self.length`.
    pub fn per_unit(&self) -> LinePerUnit {
        LinePerUnit {
            r: self.r_total / self.length,
            l: self.l_total / self.length,
            c: self.c_total / self.length,
            material: Material::Other("inline".into()),
            node_label: String::new(),
        }
    }
}

pub fn totals_from_per_unit(p: &LinePerUnit, d: f64) -> Result<LineTotals> {
    if !(d.is_finite() && d > 0.0) {
        return Err(Error::invalid("d", format!("length must be > 0 (got {d})")));
    }
    Ok(LineTotals {
        r_total: p.r * d,
        l_total: p.l * d,
        c_total: p.c * d,
        length: d,
    })
}

/// Far-end load of a line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Load {
    /// Finite resistive termination (R_L > 0).
    Resistive { r_load: f64 },
    /// Unterminated far end (voltage mode, R_L → ∞).
    Open,
    /// Ideal current-mode receiver (R_L → 0).
    Short,
    /// R_L in parallel with C_L. `r_load` may be 0 (short) or +∞ (open).
    ResCap { r_load: f64, c_load: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Termination {
    /// Driver (source) resistance R_S (Ω).
    pub r_source: f64,
    pub load: Load,
}

impl Termination {
    pub fn new(r_source: f64, load: Load) -> Result<Self> {
        let t = Termination { r_source, load };
        t.validate()?;
        Ok(t)
    }

    pub fn resistive(r_source: f64, r_load: f64) -> Result<Self> {
        Self::new(r_source, Load::Resistive { r_load })
    }

    pub fn open(r_source: f64) -> Result<Self> {
        Self::new(r_source, Load::Open)
    }

    pub fn short(r_source: f64) -> Result<Self> {
        Self::new(r_source, Load::Short)
    }

    pub fn validate(&self) -> Result<()> {
        check_field("r_source", self.r_source, |v| v >= 0.0, "must be finite and >= 0")?;
        match self.load {
            Load::Resistive { r_load } => {
                check_field("r_load", r_load, |v| v > 0.0, "must be finite and > 0")
            }
            Load::Open | Load::Short => Ok(()),
            Load::ResCap { r_load, c_load } => {
                if r_load.is_nan() || r_load < 0.0 {
                    return Err(Error::validation("r_load", format!("must be >= 0 (got {r_load})")));
                }
                check_field("c_load", c_load, |v| v >= 0.0, "must be finite and >= 0")
            }
        }
    }

    /// Load conductance 1/R_L; `None` for a short.
    pub fn load_conductance(&self) -> Option<f64> {
        match self.load {
            Load::Resistive { r_load } => Some(1.0 / r_load),
            Load::Open => Some(0.0),
            Load::Short => None,
            Load::ResCap { r_load: 0.0, .. } => None,
            Load::ResCap { r_load, .. } => Some(1.0 / r_load),
        }
    }

    pub fn load_capacitance(&self) -> f64 {
        match self.load {
            Load::ResCap { c_load, .. } => c_load,
            _ => 0.0,
        }
    }

    pub fn is_short(&self) -> bool {
        self.load_conductance().is_none()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tier {
    Local,
    Intermediate,
    Global,
}

impl FromStr for Tier {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "local" => Ok(Tier::Local),
            "intermediate" => Ok(Tier::Intermediate),
            "global" => Ok(Tier::Global),
            _ => Err(format!("unknown tier `{s}`")),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Local => "local",
            Tier::Intermediate => "intermediate",
            Tier::Global => "global",
        })
    }
}

/// Interconnect cross-section dimensions. Reference data only.
#[derive(Debug, Clone, PartialEq)]
pub struct GeometrySpec {
    pub node_label: String,
    pub tier: Tier,
    pub width: f64,
    pub thickness: f64,
    pub spacing: f64,
    pub height: f64,
    pub dielectric_const: f64,
}

impl GeometrySpec {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v > 0.0;
        check_field("width", self.width, positive, "must be finite and > 0")?;
        check_field("thickness", self.thickness, positive, "must be finite and > 0")?;
        check_field("spacing", self.spacing, positive, "must be finite and > 0")?;
        check_field("height", self.height, positive, "must be finite and > 0")?;
        check_field(
            "dielectric",
            self.dielectric_const,
            |v| v >= 1.0,
            "must be finite and >= 1",
        )
    }
}

pub const LINE_PARAMS_HEADER: [&str; 5] = ["material", "node", "r_per_m", "l_per_m", "c_per_m"];
pub const GEOMETRY_HEADER: [&str; 7] = [
    "node",
    "tier",
    "width_m",
    "thickness_m",
    "spacing_m",
    "height_m",
    "dielectric",
];

fn csv_reader<R: Read>(rdr: R) -> csv::Reader<R> {
    csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .has_headers(true)
        .from_reader(rdr)
}

fn check_header(rdr: &mut csv::Reader<impl Read>, expected: &[&str]) -> Result<()> {
    let header = rdr.headers()?.clone();
    let found: Vec<&str> = header.iter().collect();
    if found != expected {
        let line = header.position().map_or(1, |p| p.line());
        return Err(Error::Parse {
            line,
            reason: format!("expected header `{}`, found `{}`", expected.join(","), found.join(",")),
        });
    }
    Ok(())
}

fn parse_number(record: &csv::StringRecord, idx: usize, field: &str, line: u64) -> Result<f64> {
    let raw = record.get(idx).ok_or_else(|| Error::Parse {
        line,
        reason: format!("missing field `{field}`"),
    })?;
    raw.parse::<f64>().map_err(|_| Error::Parse {
        line,
        reason: format!("field `{field}`: `{raw}` is not a number"),
    })
}

fn record_line(record: &csv::StringRecord) -> u64 {
    record.position().map_or(0, |p| p.line())
}

pub fn read_line_params<R: Read>(rdr: R) -> Result<Vec<LinePerUnit>> {
    let mut rdr = csv_reader(rdr);
    check_header(&mut rdr, &LINE_PARAMS_HEADER)?;
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record_line(&record);
        if record.len() != LINE_PARAMS_HEADER.len() {
            return Err(Error::Parse {
                line,
                reason: format!("expected {} fields, found {}", LINE_PARAMS_HEADER.len(), record.len()),
            });
        }
        let p = LinePerUnit {
            material: record[0].parse().unwrap(),
            node_label: record[1].to_string(),
            r: parse_number(&record, 2, "r_per_m", line)?,
            l: parse_number(&record, 3, "l_per_m", line)?,
            c: parse_number(&record, 4, "c_per_m", line)?,
        };
        p.validate().map_err(|e| e.at_line(line))?;
        out.push(p);
    }
    Ok(out)
}

pub fn load_line_params(path: impl AsRef<Path>) -> Result<Vec<LinePerUnit>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_line_params(file)
}

pub fn write_line_params<W: Write>(w: W, params: &[LinePerUnit]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(LINE_PARAMS_HEADER)?;
    for p in params {
        wtr.write_record([
            p.material.to_string(),
            p.node_label.clone(),
            p.r.to_string(),
            p.l.to_string(),
            p.c.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<writer>", e))?;
    Ok(())
}

pub fn read_geometry<R: Read>(rdr: R) -> Result<Vec<GeometrySpec>> {
    let mut rdr = csv_reader(rdr);
    check_header(&mut rdr, &GEOMETRY_HEADER)?;
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record_line(&record);
        if record.len() != GEOMETRY_HEADER.len() {
            return Err(Error::Parse {
                line,
                reason: format!("expected {} fields, found {}", GEOMETRY_HEADER.len(), record.len()),
            });
        }
        let g = GeometrySpec {
            node_label: record[0].to_string(),
            tier: record[1]
                .parse()
                .map_err(|reason| Error::Parse { line, reason })?,
            width: parse_number(&record, 2, "width_m", line)?,
            thickness: parse_number(&record, 3, "thickness_m", line)?,
            spacing: parse_number(&record, 4, "spacing_m", line)?,
            height: parse_number(&record, 5, "height_m", line)?,
            dielectric_const: parse_number(&record, 6, "dielectric", line)?,
        };
        g.validate().map_err(|e| e.at_line(line))?;
        out.push(g);
    }
    Ok(out)
}

pub fn load_geometry(path: impl AsRef<Path>) -> Result<Vec<GeometrySpec>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_geometry(file)
}

pub fn write_geometry<W: Write>(w: W, specs: &[GeometrySpec]) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(GEOMETRY_HEADER)?;
    for g in specs {
        wtr.write_record([
            g.node_label.clone(),
            g.tier.to_string(),
            g.width.to_string(),
            g.thickness.to_string(),
            g.spacing.to_string(),
            g.height.to_string(),
            g.dielectric_const.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::io("<writer>", e))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_scale_exactly() {
        let p = LinePerUnit::new(0.0, 0.0, 1e-10).unwrap();
        let t = totals_from_per_unit(&p, 1.0).unwrap();
        assert_eq!((t.r_total, t.l_total, t.c_total), (0.0, 0.0, 1e-10));

        let p = LinePerUnit::new(22e3, 1.29129e-5, 1e-10).unwrap();
        let t = p.totals(0.01).unwrap();
        assert!((t.r_total - 220.0).abs() < 1e-9);
        assert!((t.l_total - 129.129e-9).abs() < 1e-18);
    }

    #[test]
    fn non_positive_length_is_rejected() {
        let p = LinePerUnit::new(1.0, 0.0, 1e-10).unwrap();
        for d in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                totals_from_per_unit(&p, d),
                Err(Error::InvalidArgument { name: "d", .. })
            ));
        }
    }

    #[test]
    fn per_unit_invariants() {
        assert!(LinePerUnit::new(0.0, 0.0, 0.0).is_err());
        assert!(LinePerUnit::new(-1.0, 0.0, 1e-12).is_err());
        assert!(LinePerUnit::new(1.0, f64::INFINITY, 1e-12).is_err());
    }

    #[test]
    fn header_only_file_is_empty() {
        let data = "material,node,r_per_m,l_per_m,c_per_m\n";
        assert!(read_line_params(data.as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn reads_a_cnt_row() {
        let data = "material,node,r_per_m,l_per_m,c_per_m\n# a comment\nCNT,45nm,1000,1.29129e-5,1e-10\n";
        let rows = read_line_params(data.as_bytes()).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].material, Material::Cnt);
        assert_eq!(rows[0].node_label, "45nm");
        assert_eq!(rows[0].r, 1000.0);
        assert_eq!(rows[0].l, 1.29129e-5);
        assert_eq!(rows[0].c, 1e-10);
    }

    #[test]
    fn negative_capacitance_names_field_and_line() {
        let data = "material,node,r_per_m,l_per_m,c_per_m\nCu,45nm,1,0,1e-10\nCu,45nm,1,0,-1e-12\n";
        match read_line_params(data.as_bytes()) {
            Err(Error::Validation { field, line, .. }) => {
                assert_eq!(field, "c");
                assert_eq!(line, Some(3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_row_names_line() {
        let data = "material,node,r_per_m,l_per_m,c_per_m\nCu,45nm,abc,0,1e-10\n";
        match read_line_params(data.as_bytes()) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
        let data = "material,node,r_per_m,l_per_m,c_per_m\nCu,45nm,1,0\n";
        assert!(matches!(read_line_params(data.as_bytes()), Err(Error::Parse { .. })));
    }

    #[test]
    fn wrong_header_is_rejected() {
        let data = "material,node,r,l,c\n";
        assert!(matches!(read_line_params(data.as_bytes()), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn low_dielectric_is_rejected() {
        let data = "node,tier,width_m,thickness_m,spacing_m,height_m,dielectric\n45nm,local,68e-9,136e-9,68e-9,136e-9,0.5\n";
        match read_geometry(data.as_bytes()) {
            Err(Error::Validation { field, .. }) => assert_eq!(field, "dielectric"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn terminations_validate() {
        assert!(Termination::resistive(0.0, 0.0).is_err());
        assert!(Termination::resistive(-1.0, 10.0).is_err());
        assert!(Termination::new(0.0, Load::ResCap { r_load: 0.0, c_load: 1e-15 }).is_ok());
        assert!(Termination::new(0.0, Load::ResCap { r_load: f64::INFINITY, c_load: 1e-15 }).is_ok());
        assert!(Termination::new(0.0, Load::ResCap { r_load: 5.0, c_load: -1.0 }).is_err());
        assert!(Termination::short(0.0).unwrap().is_short());
        assert_eq!(Termination::open(0.0).unwrap().load_conductance(), Some(0.0));
    }
}
