//! Scenario and sweep files.
//!
//! Line-oriented `key = value` pairs grouped under `[section]` headers; `#`
//! starts a comment. Dimensioned values must carry a unit suffix.
//!
//! ```text
//! [scenario]
//! name = cnt_10mm_cm
//! analyses = closed_form, simulate, merit, energy
//! inductance_aware = false
//! vdd = 1 V
//! series_order = 8
//!
//! [line]
//! length = 10 mm
//! r = 22 kohm/m          # or: r_total / l_total / c_total,
//! l = 1.937 nH/mm        #  or: params = lines.csv + material + node
//! c = 0.2 fF/um
//!
//! [termination]
//! source = 0 ohm
//! load = short           # resistive | open | short | rescap
//! r_load = 500 ohm
//! c_load = 10 fF
//!
//! [sim]
//! n_segments = 200
//! t_end = 2 ns           # optional; dt or adaptive_tol optional
//!
//! [energy]
//! swing_ratio = 0.57735  # default 1/sqrt(3) for a shorted load, else 1
//! bits_per_tau = 1
//! ```
//!
//! A sweep file is a scenario plus a `[sweep]` section:
//!
//! ```text
//! [sweep]
//! variable = length                  # length | r_load | c_load | r_source
//! values = 10 um, 50 um, 100 um
//! expect_delay = increasing          # increasing | decreasing | any
//! expect_throughput = decreasing
//! max_delay_spread_pct = 2
//! ```

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::params::{load_line_params, LinePerUnit, LineTotals, Load, Material, Termination};
use crate::units::{parse_quantity, Dimension};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Analysis {
    ClosedForm,
    ExactFreq,
    Simulate,
    Merit,
    Energy,
}

impl FromStr for Analysis {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "closed_form" => Analysis::ClosedForm,
            "exact_freq" => Analysis::ExactFreq,
            "simulate" => Analysis::Simulate,
            "merit" => Analysis::Merit,
            "energy" => Analysis::Energy,
            _ => return Err(format!("unknown analysis `{s}`")),
        })
    }
}

impl fmt::Display for Analysis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Analysis::ClosedForm => "closed_form",
            Analysis::ExactFreq => "exact_freq",
            Analysis::Simulate => "simulate",
            Analysis::Merit => "merit",
            Analysis::Energy => "energy",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct SimSettings {
    /// `None` means the ladder default.
    pub n_segments: Option<usize>,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
    pub adaptive_tol: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergySettings {
    /// `None` picks 1/sqrt(3) for a shorted load and 1 otherwise.
    pub swing_ratio: Option<f64>,
    pub bits_per_tau: f64,
}

impl Default for EnergySettings {
    fn default() -> Self {
        EnergySettings {
            swing_ratio: None,
            bits_per_tau: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub line: LinePerUnit,
    pub length: f64,
    pub term: Termination,
    pub vdd: f64,
    pub analyses: BTreeSet<Analysis>,
    pub inductance_aware: bool,
    pub series_order: usize,
    pub sim: SimSettings,
    pub energy: EnergySettings,
}

impl Scenario {
    /// Scenario with the given circuit, `Vdd = 1 V`, and the closed-form
    /// analysis only.
    pub fn new(name: impl Into<String>, line: LinePerUnit, length: f64, term: Termination) -> Self {
        Scenario {
            name: name.into(),
            line,
            length,
            term,
            vdd: 1.0,
            analyses: [Analysis::ClosedForm].into_iter().collect(),
            inductance_aware: false,
            series_order: 8,
            sim: SimSettings::default(),
            energy: EnergySettings::default(),
        }
    }

    pub fn with_analyses(mut self, analyses: impl IntoIterator<Item = Analysis>) -> Self {
        self.analyses = analyses.into_iter().collect();
        self
    }

    pub fn totals(&self) -> Result<LineTotals> {
        self.line.totals(self.length)
    }

    pub fn validate(&self) -> Result<()> {
        if self.name.is_empty() || self.name.contains([',', '"', '\n']) {
            return Err(Error::validation("name", "must be non-empty without commas or quotes"));
        }
        if self.analyses.is_empty() {
            return Err(Error::validation("analyses", "select at least one analysis"));
        }
        self.line.validate()?;
        self.term.validate()?;
        if !(self.length.is_finite() && self.length > 0.0) {
            return Err(Error::validation("length", "must be > 0"));
        }
        if !self.vdd.is_finite() || self.vdd < 0.0 {
            return Err(Error::validation("vdd", "must be finite and >= 0"));
        }
        if let Some(s) = self.energy.swing_ratio {
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::validation("swing_ratio", "must lie in (0, 1]"));
            }
        }
        if !(self.energy.bits_per_tau > 0.0 && self.energy.bits_per_tau.is_finite()) {
            return Err(Error::validation("bits_per_tau", "must be > 0"));
        }
        Ok(())
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Parses scenario text; relative `params` paths resolve against `base_dir`.
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let doc = Document::parse(text)?;
        doc.check_sections(&["scenario", "line", "termination", "sim", "energy"])?;
        scenario_from_doc(&doc, base_dir)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Length,
    LoadResistance,
    LoadCapacitance,
    SourceResistance,
}

impl SweepVariable {
    pub fn dimension(self) -> Dimension {
        match self {
            SweepVariable::Length => Dimension::Length,
            SweepVariable::LoadResistance | SweepVariable::SourceResistance => Dimension::Resistance,
            SweepVariable::LoadCapacitance => Dimension::Capacitance,
        }
    }

    /// Copy of `base` with this variable set to `value`.
    pub fn apply(self, base: &Scenario, value: f64) -> Result<Scenario> {
        let mut s = base.clone();
        match self {
            SweepVariable::Length => {
                if !(value > 0.0 && value.is_finite()) {
                    return Err(Error::validation("length", format!("sweep value {value} must be > 0")));
                }
                s.length = value;
            }
            SweepVariable::SourceResistance => {
                if !(value >= 0.0 && value.is_finite()) {
                    return Err(Error::validation("r_source", format!("sweep value {value} must be >= 0")));
                }
                s.term.r_source = value;
            }
            SweepVariable::LoadResistance => {
                if !(value > 0.0 && value.is_finite()) {
                    return Err(Error::validation("r_load", format!("sweep value {value} must be > 0")));
                }
                s.term.load = match base.term.load {
                    Load::ResCap { c_load, .. } => Load::ResCap { r_load: value, c_load },
                    _ => Load::Resistive { r_load: value },
                };
            }
            SweepVariable::LoadCapacitance => {
                if !(value >= 0.0 && value.is_finite()) {
                    return Err(Error::validation("c_load", format!("sweep value {value} must be >= 0")));
                }
                let r_load = match base.term.load {
                    Load::Resistive { r_load } | Load::ResCap { r_load, .. } => r_load,
                    Load::Open => f64::INFINITY,
                    Load::Short => 0.0,
                };
                s.term.load = Load::ResCap { r_load, c_load: value };
            }
        }
        Ok(s)
    }
}

impl FromStr for SweepVariable {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "length" | "d" => SweepVariable::Length,
            "r_load" | "R_L" => SweepVariable::LoadResistance,
            "c_load" | "C_L" => SweepVariable::LoadCapacitance,
            "r_source" | "R_S" => SweepVariable::SourceResistance,
            _ => return Err(format!("unknown sweep variable `{s}`")),
        })
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SweepVariable::Length => "length",
            SweepVariable::LoadResistance => "r_load",
            SweepVariable::LoadCapacitance => "c_load",
            SweepVariable::SourceResistance => "r_source",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Increasing,
    Decreasing,
    Any,
}

impl FromStr for Trend {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "increasing" => Ok(Trend::Increasing),
            "decreasing" => Ok(Trend::Decreasing),
            "any" => Ok(Trend::Any),
            _ => Err(format!("unknown trend `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub base: Scenario,
    pub variable: SweepVariable,
    pub values: Vec<f64>,
    pub expect_delay: Trend,
    pub expect_throughput: Trend,
    /// Largest allowed (max − min)/min of the delay column, in percent.
    pub max_delay_spread_pct: Option<f64>,
}

impl SweepSpec {
    pub fn new(base: Scenario, variable: SweepVariable, values: Vec<f64>) -> Result<Self> {
        let spec = SweepSpec {
            base,
            variable,
            values,
            expect_delay: Trend::Any,
            expect_throughput: Trend::Any,
            max_delay_spread_pct: None,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        if self.values.len() < 2 {
            return Err(Error::validation("values", "a sweep needs at least two values"));
        }
        if self.values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::validation("values", "sweep values must be strictly ascending"));
        }
        for &v in &self.values {
            self.variable.apply(&self.base, v)?;
        }
        Ok(())
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text, path.parent().unwrap_or(Path::new(".")))
    }

    pub fn parse(text: &str, base_dir: &Path) -> Result<Self> {
        let doc = Document::parse(text)?;
        doc.check_sections(&["scenario", "line", "termination", "sim", "energy", "sweep"])?;
        let base = scenario_from_doc(&doc, base_dir)?;
        let sweep = doc.section("sweep");
        sweep.check_keys(&["variable", "values", "expect_delay", "expect_throughput", "max_delay_spread_pct"])?;
        let variable: SweepVariable = sweep.parsed("variable")?.ok_or_else(|| sweep.missing("variable"))?;
        let (raw, line) = sweep.raw("values").ok_or_else(|| sweep.missing("values"))?;
        let values = raw
            .split(',')
            .map(|v| parse_quantity(v, variable.dimension()).map_err(|reason| Error::Parse { line, reason }))
            .collect::<Result<Vec<_>>>()?;
        let spec = SweepSpec {
            base,
            variable,
            values,
            expect_delay: sweep.parsed("expect_delay")?.unwrap_or(Trend::Any),
            expect_throughput: sweep.parsed("expect_throughput")?.unwrap_or(Trend::Any),
            max_delay_spread_pct: sweep.parsed("max_delay_spread_pct")?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

struct Entry {
    key: String,
    value: String,
    line: u64,
}

struct Section {
    name: String,
    line: u64,
    entries: Vec<Entry>,
}

struct Document {
    sections: Vec<Section>,
}

impl Document {
    fn parse(text: &str) -> Result<Self> {
        let mut sections: Vec<Section> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i as u64 + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(name) = content.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                let name = name.trim().to_string();
                if sections.iter().any(|s| s.name == name) {
                    return Err(Error::Parse { line, reason: format!("duplicate section [{name}]") });
                }
                sections.push(Section { name, line, entries: Vec::new() });
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                reason: format!("expected `key = value`, found `{content}`"),
            })?;
            let section = sections.last_mut().ok_or_else(|| Error::Parse {
                line,
                reason: "key outside of any [section]".into(),
            })?;
            let key = key.trim().to_string();
            if section.entries.iter().any(|e| e.key == key) {
                return Err(Error::Parse { line, reason: format!("duplicate key `{key}`") });
            }
            section.entries.push(Entry {
                key,
                value: value.trim().to_string(),
                line,
            });
        }
        Ok(Document { sections })
    }

    fn check_sections(&self, allowed: &[&str]) -> Result<()> {
        for s in &self.sections {
            if !allowed.contains(&s.name.as_str()) {
                return Err(Error::Parse {
                    line: s.line,
                    reason: format!("unknown section [{}]", s.name),
                });
            }
        }
        Ok(())
    }

    fn section(&self, name: &str) -> SectionView<'_> {
        SectionView {
            name: name.to_string(),
            section: self.sections.iter().find(|s| s.name == name),
        }
    }
}

struct SectionView<'a> {
    name: String,
    section: Option<&'a Section>,
}

impl SectionView<'_> {
    fn raw(&self, key: &str) -> Option<(&str, u64)> {
        self.section?
            .entries
            .iter()
            .find(|e| e.key == key)
            .map(|e| (e.value.as_str(), e.line))
    }

    fn has(&self, key: &str) -> bool {
        self.raw(key).is_some()
    }

    fn missing(&self, key: &str) -> Error {
        Error::validation(format!("{}.{key}", self.name), "required key is missing")
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        if let Some(s) = self.section {
            for e in &s.entries {
                if !allowed.contains(&e.key.as_str()) {
                    return Err(Error::Parse {
                        line: e.line,
                        reason: format!("unknown key `{}` in [{}]", e.key, self.name),
                    });
                }
            }
        }
        Ok(())
    }

    fn quantity(&self, key: &str, dim: Dimension) -> Result<Option<f64>> {
        match self.raw(key) {
            None => Ok(None),
            Some((v, line)) => parse_quantity(v, dim)
                .map(Some)
                .map_err(|reason| Error::Parse { line, reason: format!("`{key}`: {reason}") }),
        }
    }

    fn required_quantity(&self, key: &str, dim: Dimension) -> Result<f64> {
        self.quantity(key, dim)?.ok_or_else(|| self.missing(key))
    }

    fn parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match self.raw(key) {
            None => Ok(None),
            Some((v, line)) => v
                .parse::<T>()
                .map(Some)
                .map_err(|e| Error::Parse { line, reason: format!("`{key}`: {e}") }),
        }
    }
}

fn scenario_from_doc(doc: &Document, base_dir: &Path) -> Result<Scenario> {
    let head = doc.section("scenario");
    head.check_keys(&["name", "analyses", "inductance_aware", "vdd", "series_order"])?;
    let name = head.raw("name").ok_or_else(|| head.missing("name"))?.0.to_string();
    let analyses = match head.raw("analyses") {
        None => [Analysis::ClosedForm].into_iter().collect(),
        Some((list, line)) => list
            .split(',')
            .map(|a| a.trim().parse::<Analysis>().map_err(|reason| Error::Parse { line, reason }))
            .collect::<Result<BTreeSet<_>>>()?,
    };

    let line_sec = doc.section("line");
    line_sec.check_keys(&[
        "length", "params", "material", "node", "r", "l", "c", "r_total", "l_total", "c_total",
    ])?;
    let length = line_sec.required_quantity("length", Dimension::Length)?;
    let line = line_from_section(&line_sec, length, base_dir)?;

    let term_sec = doc.section("termination");
    term_sec.check_keys(&["source", "load", "r_load", "c_load"])?;
    let r_source = term_sec.required_quantity("source", Dimension::Resistance)?;
    let load_kind = term_sec.raw("load").ok_or_else(|| term_sec.missing("load"))?;
    let load = match load_kind.0 {
        "open" => Load::Open,
        "short" => Load::Short,
        "resistive" => Load::Resistive {
            r_load: term_sec.required_quantity("r_load", Dimension::Resistance)?,
        },
        "rescap" => Load::ResCap {
            r_load: term_sec.required_quantity("r_load", Dimension::Resistance)?,
            c_load: term_sec.required_quantity("c_load", Dimension::Capacitance)?,
        },
        other => {
            return Err(Error::Parse {
                line: load_kind.1,
                reason: format!("unknown load `{other}` (resistive | open | short | rescap)"),
            })
        }
    };
    let term = Termination::new(r_source, load)?;

    let sim_sec = doc.section("sim");
    sim_sec.check_keys(&["n_segments", "t_end", "dt", "adaptive_tol"])?;
    let sim = SimSettings {
        n_segments: sim_sec.parsed("n_segments")?,
        t_end: sim_sec.quantity("t_end", Dimension::Time)?,
        dt: sim_sec.quantity("dt", Dimension::Time)?,
        adaptive_tol: sim_sec.parsed("adaptive_tol")?,
    };

    let energy_sec = doc.section("energy");
    energy_sec.check_keys(&["swing_ratio", "bits_per_tau"])?;
    let energy = EnergySettings {
        swing_ratio: energy_sec.parsed("swing_ratio")?,
        bits_per_tau: energy_sec.parsed("bits_per_tau")?.unwrap_or(1.0),
    };

    let scenario = Scenario {
        name,
        line,
        length,
        term,
        vdd: head.quantity("vdd", Dimension::Voltage)?.unwrap_or(1.0),
        analyses,
        inductance_aware: head.parsed("inductance_aware")?.unwrap_or(false),
        series_order: head.parsed("series_order")?.unwrap_or(8),
        sim,
        energy,
    };
    scenario.validate()?;
    Ok(scenario)
}

fn line_from_section(sec: &SectionView<'_>, length: f64, base_dir: &Path) -> Result<LinePerUnit> {
    let by_file = sec.has("params");
    let per_unit = sec.has("r") || sec.has("l") || sec.has("c");
    let totals = sec.has("r_total") || sec.has("l_total") || sec.has("c_total");
    if usize::from(by_file) + usize::from(per_unit) + usize::from(totals) != 1 {
        return Err(Error::validation(
            "line",
            "give exactly one of: params (+ material, node) | r, l, c | r_total, l_total, c_total",
        ));
    }
    if by_file {
        let file: PathBuf = base_dir.join(sec.raw("params").unwrap().0);
        let material: Option<Material> = sec.parsed("material")?;
        let node = sec.raw("node").map(|(n, _)| n.to_string());
        let rows = load_line_params(&file)?;
        return rows
            .into_iter()
            .find(|p| material.as_ref().is_none_or(|m| *m == p.material) && node.as_ref().is_none_or(|n| *n == p.node_label))
            .ok_or_else(|| {
                Error::validation("line.params", format!("no matching line in {}", file.display()))
            });
    }
    if per_unit {
        let p = LinePerUnit {
            r: sec.required_quantity("r", Dimension::ResistancePerLength)?,
            l: sec.required_quantity("l", Dimension::InductancePerLength)?,
            c: sec.required_quantity("c", Dimension::CapacitancePerLength)?,
            material: sec.parsed("material")?.unwrap_or(Material::Other("inline".into())),
            node_label: sec.raw("node").map_or(String::new(), |(n, _)| n.to_string()),
        };
        p.validate()?;
        return Ok(p);
    }
    let totals = LineTotals::new(
        sec.required_quantity("r_total", Dimension::Resistance)?,
        sec.required_quantity("l_total", Dimension::Inductance)?,
        sec.required_quantity("c_total", Dimension::Capacitance)?,
        length,
    )?;
    Ok(totals.per_unit())
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = "
[scenario]
name = basic
analyses = closed_form, merit
vdd = 1.2 V

[line]
length = 10 mm
r_total = 220 ohm
l_total = 19.37 nH
c_total = 2 pF

[termination]
source = 2.5 kohm
load = resistive
r_load = 500 ohm
";

    #[test]
    fn parses_inline_totals() {
        let s = Scenario::parse(BASIC, Path::new(".")).unwrap();
        assert_eq!(s.name, "basic");
        assert_eq!(s.analyses.len(), 2);
        assert!((s.vdd - 1.2).abs() < 1e-15);
        let t = s.totals().unwrap();
        assert!((t.r_total - 220.0).abs() < 1e-9);
        assert!((t.l_total - 19.37e-9).abs() < 1e-18);
        assert!((t.c_total - 2e-12).abs() < 1e-24);
        assert_eq!(s.term.load, Load::Resistive { r_load: 500.0 });
        assert_eq!(s.term.r_source, 2500.0);
    }

    #[test]
    fn missing_unit_is_a_parse_error_with_line() {
        let text = BASIC.replace("r_load = 500 ohm", "r_load = 500");
        match Scenario::parse(&text, Path::new(".")) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 16),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unknown_keys_and_sections_are_rejected() {
        let text = format!("{BASIC}\n[bogus]\nx = 1\n");
        assert!(matches!(Scenario::parse(&text, Path::new(".")), Err(Error::Parse { .. })));
        let text = BASIC.replace("vdd = 1.2 V", "vdd = 1.2 V\ncolour = red");
        assert!(matches!(Scenario::parse(&text, Path::new(".")), Err(Error::Parse { .. })));
    }

    #[test]
    fn empty_analysis_set_is_invalid() {
        let line = LinePerUnit::new(1e4, 0.0, 1e-10).unwrap();
        let s = Scenario::new("x", line, 1e-3, Termination::open(0.0).unwrap()).with_analyses([]);
        assert!(s.validate().is_err());
    }

    #[test]
    fn conflicting_line_sources_are_rejected() {
        let text = BASIC.replace("c_total = 2 pF", "c_total = 2 pF\nr = 1 ohm/m");
        assert!(Scenario::parse(&text, Path::new(".")).is_err());
    }

    #[test]
    fn sweep_parsing_and_validation() {
        let text = format!(
            "{BASIC}\n[sweep]\nvariable = length\nvalues = 10 um, 50 um, 100 um\nexpect_delay = increasing\n"
        );
        let spec = SweepSpec::parse(&text, Path::new(".")).unwrap();
        assert_eq!(spec.variable, SweepVariable::Length);
        assert_eq!(spec.values.len(), 3);
        assert!((spec.values[1] - 50e-6).abs() < 1e-18);
        assert_eq!(spec.expect_delay, Trend::Increasing);
        assert_eq!(spec.expect_throughput, Trend::Any);

        let one = format!("{BASIC}\n[sweep]\nvariable = length\nvalues = 10 um\n");
        assert!(SweepSpec::parse(&one, Path::new(".")).is_err());
        let desc = format!("{BASIC}\n[sweep]\nvariable = length\nvalues = 10 um, 5 um\n");
        assert!(SweepSpec::parse(&desc, Path::new(".")).is_err());
        let bad = format!("{BASIC}\n[sweep]\nvariable = r_load\nvalues = 0 ohm, 5 ohm\n");
        assert!(SweepSpec::parse(&bad, Path::new(".")).is_err());
    }

    #[test]
    fn c_load_sweep_keeps_the_load_resistance() {
        let s = Scenario::parse(BASIC, Path::new(".")).unwrap();
        let swept = SweepVariable::LoadCapacitance.apply(&s, 10e-15).unwrap();
        assert_eq!(swept.term.load, Load::ResCap { r_load: 500.0, c_load: 10e-15 });
        let mut short = s.clone();
        short.term.load = Load::Short;
        let swept = SweepVariable::LoadCapacitance.apply(&short, 10e-15).unwrap();
        assert_eq!(swept.term.load, Load::ResCap { r_load: 0.0, c_load: 10e-15 });
    }
}
