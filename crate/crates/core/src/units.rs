//! Unit-suffixed quantity parsing.
//!
//! Everything inside the crate is strict SI. Text inputs carry an explicit
//! suffix (`220 ohm`, `10 mm`, `19.37nH`, `22 kohm/mm`) which is resolved
//! here, once, at the parse boundary. A bare number is rejected for any
//! dimensioned quantity.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Resistance,
    Inductance,
    Capacitance,
    Length,
    Time,
    Voltage,
    Energy,
    ResistancePerLength,
    InductancePerLength,
    CapacitancePerLength,
}

impl Dimension {
    fn base(self) -> (&'static str, bool) {
        match self {
            Dimension::Resistance => ("ohm", false),
            Dimension::Inductance => ("H", false),
            Dimension::Capacitance => ("F", false),
            Dimension::Length => ("m", false),
            Dimension::Time => ("s", false),
            Dimension::Voltage => ("V", false),
            Dimension::Energy => ("J", false),
            Dimension::ResistancePerLength => ("ohm", true),
            Dimension::InductancePerLength => ("H", true),
            Dimension::CapacitancePerLength => ("F", true),
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, per_length) = self.base();
        if per_length {
            write!(f, "{base}/m")
        } else {
            f.write_str(base)
        }
    }
}

/// Decimal exponent of an SI prefix.
fn prefix_exponent(prefix: &str) -> Option<i32> {
    Some(match prefix {
        "" => 0,
        "f" => -15,
        "p" => -12,
        "n" => -9,
        "u" | "µ" | "μ" => -6,
        "m" => -3,
        "k" => 3,
        "M" => 6,
        "G" => 9,
        "T" => 12,
        _ => return None,
    })
}

/// Splits `unit` into (prefix exponent, base symbol).
fn split_unit(unit: &str) -> Option<(i32, &'static str)> {
    const BASES: [&str; 8] = ["ohm", "Ω", "H", "F", "m", "s", "V", "J"];
    for base in BASES {
        if let Some(prefix) = unit.strip_suffix(base) {
            if let Some(exp) = prefix_exponent(prefix) {
                let canonical = if base == "Ω" { "ohm" } else { base };
                return Some((exp, canonical));
            }
        }
    }
    None
}

fn unit_exponent(unit: &str, dim: Dimension) -> Result<i32, String> {
    let (want_base, per_length) = dim.base();
    let (numer, denom) = match unit.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (unit, None),
    };
    if per_length != denom.is_some() {
        return Err(format!("unit `{unit}` is not a {dim} unit"));
    }
    let (exp, base) =
        split_unit(numer).ok_or_else(|| format!("unrecognised unit `{numer}`"))?;
    if base != want_base {
        return Err(format!("unit `{unit}` is not a {dim} unit"));
    }
    match denom {
        None => Ok(exp),
        Some(d) => {
            let (len_exp, len_base) =
                split_unit(d).ok_or_else(|| format!("unrecognised unit `{d}`"))?;
            if len_base != "m" {
                return Err(format!("`{d}` is not a length unit"));
            }
            Ok(exp - len_exp)
        }
    }
}

/// Parses `"<number> <unit>"` (the space is optional) into SI.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let text = text.trim();
    let (number, unit) = match text.split_once(char::is_whitespace) {
        Some((n, u)) => (n, u.trim()),
        None => {
            // longest numeric prefix, e.g. "10mm" or "1.5e-3H/m"
            let split = (1..=text.len())
                .rev()
                .filter(|&i| text.is_char_boundary(i))
                .find(|&i| text[..i].parse::<f64>().is_ok())
                .ok_or_else(|| format!("`{text}` does not start with a number"))?;
            (&text[..split], &text[split..])
        }
    };
    let value: f64 = number
        .parse()
        .map_err(|_| format!("`{number}` is not a number"))?;
    if unit.is_empty() {
        return Err(format!("`{text}` is missing a unit suffix ({dim})"));
    }
    let exp = unit_exponent(unit, dim)?;
    if exp == 0 || !value.is_finite() {
        return Ok(value);
    }
    // shift the decimal exponent in text so "10 fF" rounds once, to 1e-14
    let (mantissa, own_exp) = match number.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| format!("`{number}` is not a number"))?),
        None => (number, 0),
    };
    format!("{mantissa}e{}", own_exp + exp)
        .parse()
        .map_err(|_| format!("`{number}` is not a number"))
}
