//! Declarative family specs: whitespace-separated `key=value` tokens, one
//! family per line, e.g. `family=power a=0.5 n=10000`.
//!
//! Interleave sub-families use prefixed keys: `a.family=arithmetic a.l=1
//! b.family=geometric b.b=2 schedule=10,10`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use super::{FamilyKind, FamilySpec, GenConfig};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct KvMap {
    entries: BTreeMap<String, String>,
}

impl KvMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.entries.insert(key.into(), value.into());
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Keys starting with `prefix.`, with the prefix stripped.
    pub fn scoped(&self, prefix: &str) -> KvMap {
        let p = format!("{prefix}.");
        KvMap {
            entries: self
                .entries
                .iter()
                .filter_map(|(k, v)| k.strip_prefix(&p).map(|s| (s.to_string(), v.clone())))
                .collect(),
        }
    }

    pub fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|_| Error::param(format!("cannot parse {key}={v}"))),
        }
    }

    pub fn require<T: FromStr>(&self, key: &str) -> Result<T> {
        self.parse(key)?
            .ok_or_else(|| Error::param(format!("missing key {key}")))
    }

    pub fn parse_or<T: FromStr>(&self, key: &str, default: T) -> Result<T> {
        Ok(self.parse(key)?.unwrap_or(default))
    }

    /// A real that may also be written as a fraction `p/q`.
    pub fn real(&self, key: &str) -> Result<Option<f64>> {
        self.get(key).map(|v| parse_real(key, v)).transpose()
    }

    pub fn require_real(&self, key: &str) -> Result<f64> {
        self.real(key)?
            .ok_or_else(|| Error::param(format!("missing key {key}")))
    }

    fn list<T: FromStr>(&self, key: &str) -> Result<Option<Vec<T>>> {
        self.get(key)
            .map(|v| {
                v.split(',')
                    .map(|s| {
                        s.trim()
                            .parse()
                            .map_err(|_| Error::param(format!("cannot parse {key}={v}")))
                    })
                    .collect()
            })
            .transpose()
    }

    /// Builds the family described by this map.
    pub fn to_family_spec(&self) -> Result<FamilySpec> {
        let family = self
            .get("family")
            .ok_or_else(|| Error::param("missing key family"))?;
        let kind = match family {
            "power" => FamilyKind::Power {
                a: self.require_real("a")?,
            },
            "geometric" => FamilyKind::GeometricLike {
                alpha: self.real("alpha")?.unwrap_or(1.0),
                b: self.require_real("b")?,
            },
            "arithmetic" => FamilyKind::Arithmetic {
                k: self.parse_or("k", 0)?,
                l: self.parse_or("l", 1)?,
            },
            "quadratic" => FamilyKind::quadratic(
                self.parse_or("k", 0)?,
                self.parse_or("l", 0)?,
                self.parse_or("t", 1)?,
            ),
            "polynomial" => FamilyKind::Polynomial {
                coeffs: self
                    .list("coeffs")?
                    .ok_or_else(|| Error::param("missing key coeffs"))?,
            },
            "real-power" => FamilyKind::RealPower {
                t: self.real("t")?.unwrap_or(1.0),
                d: self.require_real("d")?,
            },
            "double-exp-union" => FamilyKind::DoubleExpUnion,
            "sqrt-exp" => FamilyKind::SqrtExp,
            "nonsquare-squares" => FamilyKind::NonSquareSquares,
            "product" => FamilyKind::Product {
                c: self.real("c")?.unwrap_or(1.0),
                alpha: self.require_real("alpha")?,
            },
            "file" => FamilyKind::FromFile {
                path: PathBuf::from(
                    self.get("path")
                        .ok_or_else(|| Error::param("missing key path"))?,
                ),
                dedup: self.parse_or("dedup", false)?,
            },
            "interleave" => {
                let sub = |p: &str| -> Result<Box<FamilySpec>> {
                    let mut m = self.scoped(p);
                    for key in ["n", "precision", "exact_bits", "stall"] {
                        if let (false, Some(v)) = (m.contains(key), self.get(key)) {
                            m.insert(key, v);
                        }
                    }
                    Ok(Box::new(m.to_family_spec()?))
                };
                FamilyKind::Interleave {
                    first: sub("a")?,
                    second: sub("b")?,
                    schedule: self
                        .list("schedule")?
                        .ok_or_else(|| Error::param("missing key schedule"))?,
                }
            }
            other => return Err(Error::param(format!("unknown family {other}"))),
        };
        let defaults = GenConfig::default();
        let config = GenConfig {
            precision_bits: self.parse_or("precision", defaults.precision_bits)?,
            exact_bit_budget: self.parse_or("exact_bits", defaults.exact_bit_budget)?,
            stall_window: self.parse_or("stall", defaults.stall_window)?,
        };
        let spec = FamilySpec {
            kind,
            length: self.parse_or("n", 10_000)?,
            config,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn parse_real(key: &str, v: &str) -> Result<f64> {
    let bad = || Error::param(format!("cannot parse {key}={v}"));
    match v.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            Ok(p / q)
        }
        None => v.trim().parse().map_err(|_| bad()),
    }
}

/// Parses one line of `key=value` tokens; `#` starts a comment.
pub fn parse_kv_line(line: &str) -> Result<KvMap> {
    let body = line.split('#').next().unwrap_or("");
    let mut map = KvMap::new();
    for tok in body.split_whitespace() {
        let (k, v) = tok
            .split_once('=')
            .ok_or_else(|| Error::param(format!("expected key=value, got {tok}")))?;
        if k.is_empty() {
            return Err(Error::param(format!("empty key in {tok}")));
        }
        map.insert(k, v);
    }
    Ok(map)
}

/// Reads a family file: one family per non-empty line.
pub fn parse_family_file(path: &Path) -> Result<Vec<FamilySpec>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let map = parse_kv_line(line).map_err(|e| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        })?;
        if map.is_empty() {
            continue;
        }
        out.push(map.to_family_spec()?);
    }
    Ok(out)
}
