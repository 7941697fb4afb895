//! Machine-readable output: a canonical JSON writer (stable key order,
//! fixed-width float notation, byte-reproducible across runs) and a small
//! CSV table builder. Everything the binary prints flows through here so the
//! two formats cannot drift apart.

use crate::character::CharacterFunctional;
use crate::numeric::SpectralReport;
use crate::profiles::PerturbationParams;
use crate::symbolic::{WeightSet, WeightSetKind};
use std::collections::BTreeMap;
use std::fmt::Write as _;

#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<JsonValue>),
    Object(BTreeMap<String, JsonValue>),
}

impl JsonValue {
    pub fn object(entries: impl IntoIterator<Item = (&'static str, JsonValue)>) -> JsonValue {
        JsonValue::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
    }

    /// Canonical text: keys in lexicographic order (the map is ordered),
    /// floats always in `{:.16e}` notation so that equal values are equal
    /// bytes, integers plain, no insignificant whitespace.
    pub fn to_canonical(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            JsonValue::Null => out.push_str("null"),
            JsonValue::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            JsonValue::Int(i) => {
                let _ = write!(out, "{i}");
            }
            JsonValue::Float(x) => {
                debug_assert!(x.is_finite(), "canonical JSON cannot hold {x}");
                let _ = write!(out, "{x:.16e}");
            }
            JsonValue::Str(s) => write_escaped(s, out),
            JsonValue::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            JsonValue::Object(map) => {
                out.push('{');
                for (i, (k, v)) in map.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    write_escaped(k, out);
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}

fn write_escaped(s: &str, out: &mut String) {
    out.push('"');
    for ch in s.chars() {
        match ch {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Re-expresses any parsed JSON document in the canonical form. Documents
/// produced by [`JsonValue::to_canonical`] survive a parse → convert →
/// re-emit cycle byte-identically (integers stay integers because the float
/// notation always carries an exponent).
pub fn from_serde(v: &serde_json::Value) -> JsonValue {
    match v {
        serde_json::Value::Null => JsonValue::Null,
        serde_json::Value::Bool(b) => JsonValue::Bool(*b),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                JsonValue::Int(i)
            } else {
                JsonValue::Float(n.as_f64().expect("JSON number fits f64"))
            }
        }
        serde_json::Value::String(s) => JsonValue::Str(s.clone()),
        serde_json::Value::Array(items) => {
            JsonValue::Array(items.iter().map(from_serde).collect())
        }
        serde_json::Value::Object(map) => JsonValue::Object(
            map.iter().map(|(k, v)| (k.clone(), from_serde(v))).collect(),
        ),
    }
}

/// Shortest decimal that round-trips the value, for CSV cells.
pub fn float_cell(x: f64) -> String {
    format!("{x}")
}

/// Minimal CSV: comma separator, LF line ends, RFC-style quoting only where
/// needed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.header.len(), "ragged CSV row");
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for line in std::iter::once(&self.header).chain(&self.rows) {
            for (i, cell) in line.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                if cell.contains([',', '"', '\n', '\r']) {
                    out.push('"');
                    out.push_str(&cell.replace('"', "\"\""));
                    out.push('"');
                } else {
                    out.push_str(cell);
                }
            }
            out.push('\n');
        }
        out
    }
}

pub fn params_json(p: &PerturbationParams) -> JsonValue {
    JsonValue::object([
        ("m", JsonValue::Int(p.m)),
        ("s", JsonValue::Float(p.s)),
        ("t", JsonValue::Float(p.t)),
        ("eps1", JsonValue::Float(p.eps1)),
        ("eps2", JsonValue::Float(p.eps2)),
    ])
}

/// Symbolic kernel support. Keys are exactly `case`, `variant`, and — for
/// finite supports only — `weights`.
pub fn weight_set_json(ws: &WeightSet) -> JsonValue {
    let mut obj = vec![("case", JsonValue::Str(ws.case.as_str().to_string()))];
    match &ws.kind {
        WeightSetKind::Empty => obj.push(("variant", JsonValue::Str("empty".into()))),
        WeightSetKind::AllIntegers => {
            obj.push(("variant", JsonValue::Str("all_integers".into())))
        }
        WeightSetKind::NonFredholm => {
            obj.push(("variant", JsonValue::Str("non_fredholm".into())))
        }
        WeightSetKind::Finite(weights) => {
            obj.push(("variant", JsonValue::Str("finite".into())));
            obj.push((
                "weights",
                JsonValue::Array(weights.iter().map(|&n| JsonValue::Int(n)).collect()),
            ));
        }
    }
    JsonValue::object(obj)
}

pub fn spectral_report_json(rep: &SpectralReport) -> JsonValue {
    let evs = |v: &[f64]| JsonValue::Array(v.iter().map(|&x| JsonValue::Float(x)).collect());
    JsonValue::object([
        ("n", JsonValue::Int(rep.n)),
        ("half_width", JsonValue::Float(rep.disc.half_width)),
        ("h", JsonValue::Float(rep.disc.h)),
        ("tau_zero", JsonValue::Float(rep.thresholds.tau_zero)),
        ("tau_gap", JsonValue::Float(rep.thresholds.tau_gap)),
        ("low_plus", evs(&rep.low_plus)),
        ("low_minus", evs(&rep.low_minus)),
        ("kernel_plus", JsonValue::Bool(rep.kernel_plus)),
        ("kernel_minus", JsonValue::Bool(rep.kernel_minus)),
    ])
}

/// Character functional evaluated over an inclusive window, with the exact
/// support patterns alongside (the window never truncates the stored
/// support, it only chooses what to print).
pub fn character_json(chi: &CharacterFunctional, window: (i64, i64)) -> JsonValue {
    JsonValue::object([
        ("plus", JsonValue::Str(chi.plus.pattern().into())),
        ("minus", JsonValue::Str(chi.minus.pattern().into())),
        (
            "window",
            JsonValue::Array(vec![JsonValue::Int(window.0), JsonValue::Int(window.1)]),
        ),
        (
            "values",
            JsonValue::Array(
                chi.evaluate_window(window).into_iter().map(JsonValue::Int).collect(),
            ),
        ),
    ])
}

/// Weight list as one CSV cell: space-separated levels, or the pattern tag
/// for non-finite supports.
pub fn weights_cell(kind: &WeightSetKind) -> String {
    match kind {
        WeightSetKind::Empty => String::new(),
        WeightSetKind::Finite(v) => {
            v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" ")
        }
        WeightSetKind::AllIntegers => "all_integers".into(),
        WeightSetKind::NonFredholm => "non_fredholm".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::CaseLabel;

    #[test]
    fn canonical_object_sorts_keys_and_pins_float_notation() {
        let doc = JsonValue::object([
            ("zeta", JsonValue::Float(1.0)),
            ("alpha", JsonValue::Int(3)),
            ("mid", JsonValue::Float(-0.001)),
        ]);
        assert_eq!(
            doc.to_canonical(),
            r#"{"alpha":3,"mid":-1.0000000000000000e-3,"zeta":1.0000000000000000e0}"#
        );
    }

    #[test]
    fn strings_are_escaped() {
        let doc = JsonValue::Str("a\"b\\c\nd\u{1}".into());
        assert_eq!(doc.to_canonical(), "\"a\\\"b\\\\c\\nd\\u0001\"");
    }

    #[test]
    fn canonical_round_trips_through_a_generic_parser_byte_identically() {
        let doc = JsonValue::object([
            ("params", params_json(&PerturbationParams::new(2, 0.5, 1.0, 1.0, 0.0).unwrap())),
            ("flags", JsonValue::Array(vec![JsonValue::Bool(true), JsonValue::Null])),
            ("counts", JsonValue::Array(vec![JsonValue::Int(-3), JsonValue::Int(0)])),
            (
                "spectrum",
                JsonValue::Array(vec![JsonValue::Float(1.25e-7), JsonValue::Float(3.0)]),
            ),
        ]);
        let text = doc.to_canonical();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(from_serde(&parsed).to_canonical(), text);
    }

    #[test]
    fn weight_set_json_has_exactly_the_contract_keys() {
        let finite = WeightSet {
            kind: WeightSetKind::Finite(vec![-1, 0, 1]),
            case: CaseLabel::III,
            threshold_modes: vec![],
        };
        assert_eq!(
            weight_set_json(&finite).to_canonical(),
            r#"{"case":"III","variant":"finite","weights":[-1,0,1]}"#
        );
        let all = WeightSet {
            kind: WeightSetKind::AllIntegers,
            case: CaseLabel::I,
            threshold_modes: vec![],
        };
        assert_eq!(
            weight_set_json(&all).to_canonical(),
            r#"{"case":"I","variant":"all_integers"}"#
        );
    }

    #[test]
    fn csv_quotes_only_when_needed_and_ends_lines_with_lf() {
        let mut t = CsvTable::new(&["a", "b"]);
        t.push(vec!["plain".into(), "has,comma".into()]);
        t.push(vec!["has\"quote".into(), float_cell(0.1)]);
        assert_eq!(t.to_csv(), "a,b\nplain,\"has,comma\"\n\"has\"\"quote\",0.1\n");
    }

    #[test]
    fn float_cells_are_shortest_round_trip() {
        for &x in &[0.1, 1.0, -2.5e-7, 12.0] {
            let cell = float_cell(x);
            assert_eq!(cell.parse::<f64>().unwrap(), x);
        }
        assert_eq!(float_cell(1.0), "1");
        assert_eq!(float_cell(0.5), "0.5");
    }

    #[test]
    fn weights_cell_is_space_separated() {
        assert_eq!(weights_cell(&WeightSetKind::Finite(vec![2, 3, 4])), "2 3 4");
        assert_eq!(weights_cell(&WeightSetKind::Empty), "");
        assert_eq!(weights_cell(&WeightSetKind::AllIntegers), "all_integers");
    }
}
