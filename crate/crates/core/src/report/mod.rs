//! Report documents shared by every command.
//!
//! A document is a flat list of records so that JSON and CSV carry exactly
//! the same fields. Numbers travel as decimal strings at full precision;
//! only the pretty renderer rounds.

mod build;
mod csv_io;
mod pretty;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use build::{
    bracket_document, checks_document, finite_set_document, profile_document, sequence_document,
    series_document, table_document,
};
pub use csv_io::{from_csv, to_csv};
pub use pretty::{render_pretty, sig4};

pub const FORMAT_NAME: &str = "gapdens-report";
pub const FORMAT_VERSION: u32 = 1;

/// JSON Schema the documents validate against.
pub const SCHEMA: &str = include_str!("../../schema/report.schema.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DocKind {
    Sequence,
    FiniteSet,
    Profile,
    Checks,
    Series,
    Bracket,
    Table,
}

impl DocKind {
    pub fn name(self) -> &'static str {
        match self {
            DocKind::Sequence => "sequence",
            DocKind::FiniteSet => "finite-set",
            DocKind::Profile => "profile",
            DocKind::Checks => "checks",
            DocKind::Series => "series",
            DocKind::Bracket => "bracket",
            DocKind::Table => "table",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            DocKind::Sequence,
            DocKind::FiniteSet,
            DocKind::Profile,
            DocKind::Checks,
            DocKind::Series,
            DocKind::Bracket,
            DocKind::Table,
        ]
        .into_iter()
        .find(|k| k.name() == s)
    }
}

impl fmt::Display for DocKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub subject: String,
    pub section: String,
    pub name: String,
    pub value: Option<String>,
    pub text: Option<String>,
    pub index: Option<u64>,
    pub diagnostic: Option<String>,
    pub status: Option<String>,
}

impl Record {
    pub fn new(subject: &str, section: &str, name: &str) -> Self {
        Record {
            subject: subject.to_string(),
            section: section.to_string(),
            name: name.to_string(),
            value: None,
            text: None,
            index: None,
            diagnostic: None,
            status: None,
        }
    }

    pub fn value(mut self, v: impl Into<String>) -> Self {
        self.value = Some(v.into());
        self
    }

    pub fn num(self, v: f64) -> Self {
        self.value(decimal(v))
    }

    pub fn text(mut self, t: impl Into<String>) -> Self {
        let t = t.into();
        if !t.is_empty() {
            self.text = Some(t);
        }
        self
    }

    pub fn index(mut self, i: usize) -> Self {
        self.index = Some(i as u64);
        self
    }

    pub fn diagnostic(mut self, d: impl fmt::Display) -> Self {
        self.diagnostic = Some(d.to_string());
        self
    }

    pub fn status(mut self, s: impl fmt::Display) -> Self {
        self.status = Some(s.to_string());
        self
    }

    /// The value parsed as a double.
    pub fn number(&self) -> Option<f64> {
        self.value.as_deref().and_then(parse_decimal)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub format: String,
    pub version: u32,
    pub kind: DocKind,
    pub records: Vec<Record>,
}

impl Document {
    pub fn new(kind: DocKind) -> Self {
        Document {
            format: FORMAT_NAME.to_string(),
            version: FORMAT_VERSION,
            kind,
            records: Vec::new(),
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn extend(&mut self, other: Document) {
        self.records.extend(other.records);
    }

    pub fn find(&self, subject: &str, section: &str, name: &str) -> Option<&Record> {
        self.records
            .iter()
            .find(|r| r.subject == subject && r.section == section && r.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    }
}

/// Shortest round-trip decimal for a double; `inf`, `-inf`, `nan` otherwise.
pub fn decimal(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if v != 0.0 && (v.abs() >= 1e16 || v.abs() < 1e-5) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

/// All significant digits of a multi-precision value.
pub fn decimal_float(v: &rug::Float) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v.is_sign_positive() { "inf" } else { "-inf" }.into()
    } else if v.is_zero() {
        "0".into()
    } else {
        v.to_string_radix(10, None)
    }
}

pub fn parse_decimal(s: &str) -> Option<f64> {
    match s {
        "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        "nan" => Some(f64::NAN),
        _ => s.parse().ok(),
    }
}
