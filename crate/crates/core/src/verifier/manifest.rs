//! Batch manifests: one check per line, `check=<id> tol=<t>` plus either
//! family keys or grid keys.
//!
//! ```text
//! family=power a=1/2 n=10000 check=sandwich tol=0.05
//! check=analytic log_points=10000 growth_points=1000
//! ```

use std::path::Path;

use super::analytic::{check_analytic_inequalities, GridSpec};
use super::density::{check_implied_interval, check_rho_profile, check_sandwich, DEFAULT_TOL};
use super::report::CheckReport;
use super::stolz::check_stolz_prefix;
use crate::error::{Error, Result};
use crate::estimators::{density_profile, ProfileConfig};
use crate::generators::{catalog, parse_kv_line, FamilySpec, KvMap};
use crate::par;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckKind {
    Sandwich,
    RhoTauZero,
    ImpliedInterval,
    Stolz,
    Analytic,
    /// Every prefix check above.
    All,
}

impl CheckKind {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "sandwich" => CheckKind::Sandwich,
            "rho-tau-zero" => CheckKind::RhoTauZero,
            "implied-interval" => CheckKind::ImpliedInterval,
            "stolz" => CheckKind::Stolz,
            "analytic" => CheckKind::Analytic,
            "all" => CheckKind::All,
            other => return Err(Error::param(format!("unknown check {other}"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Sandwich => "sandwich",
            CheckKind::RhoTauZero => "rho-tau-zero",
            CheckKind::ImpliedInterval => "implied-interval",
            CheckKind::Stolz => "stolz",
            CheckKind::Analytic => "analytic",
            CheckKind::All => "all",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ManifestTarget {
    Family(FamilySpec),
    Grid(GridSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ManifestEntry {
    pub target: ManifestTarget,
    pub check: CheckKind,
    pub tol: f64,
}

fn grid_from_kv(m: &KvMap) -> Result<GridSpec> {
    let d = GridSpec::default();
    Ok(GridSpec {
        log_points: m.parse_or("log_points", d.log_points)?,
        log_max: m.real("log_max")?.unwrap_or(d.log_max),
        growth_points: m.parse_or("growth_points", d.growth_points)?,
        growth_max: m.real("growth_max")?.unwrap_or(d.growth_max),
        precision_bits: m.parse_or("precision", d.precision_bits)?,
        derivative_rel_tol: m.real("derivative_tol")?.unwrap_or(d.derivative_rel_tol),
    })
}

impl ManifestEntry {
    pub fn from_kv(m: &KvMap) -> Result<Self> {
        let check = CheckKind::parse(m.get("check").unwrap_or("all"))?;
        let tol = m.real("tol")?.unwrap_or(DEFAULT_TOL);
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(Error::param("tol must be non-negative"));
        }
        let target = if check == CheckKind::Analytic {
            let g = grid_from_kv(m)?;
            g.validate()?;
            ManifestTarget::Grid(g)
        } else {
            ManifestTarget::Family(m.to_family_spec()?)
        };
        Ok(ManifestEntry { target, check, tol })
    }

    pub fn label(&self) -> String {
        match &self.target {
            ManifestTarget::Family(f) => format!("{} check={} tol={}", f.label(), self.check.name(), self.tol),
            ManifestTarget::Grid(_) => format!("grid check={} tol={}", self.check.name(), self.tol),
        }
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<ManifestEntry>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let wrap = |e: Error| Error::Parse {
            line: i + 1,
            msg: e.to_string(),
        };
        let m = parse_kv_line(line).map_err(wrap)?;
        if m.is_empty() {
            continue;
        }
        out.push(ManifestEntry::from_kv(&m).map_err(wrap)?);
    }
    Ok(out)
}

pub fn read_manifest(path: &Path) -> Result<Vec<ManifestEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_manifest(&text)
}

/// Every catalog family at length `n` under all prefix checks, plus the
/// analytic grids.
pub fn catalog_manifest(n: usize) -> Vec<ManifestEntry> {
    let mut out: Vec<ManifestEntry> = catalog(n)
        .into_iter()
        .map(|f| ManifestEntry {
            target: ManifestTarget::Family(f),
            check: CheckKind::All,
            tol: DEFAULT_TOL,
        })
        .collect();
    out.push(ManifestEntry {
        target: ManifestTarget::Grid(GridSpec::default()),
        check: CheckKind::Analytic,
        tol: DEFAULT_TOL,
    });
    out
}

pub fn run_entry(entry: &ManifestEntry) -> Result<Vec<CheckReport>> {
    let spec = match &entry.target {
        ManifestTarget::Grid(g) => return Ok(vec![check_analytic_inequalities(g)?]),
        ManifestTarget::Family(f) => f,
    };
    let prefix = spec.generate_prefix()?;
    let tol = entry.tol;
    let needs_profile = entry.check != CheckKind::Stolz;
    let profile = if needs_profile {
        Some(density_profile(&prefix, &ProfileConfig::default())?)
    } else {
        None
    };
    let mut out = Vec::new();
    let wants = |k: CheckKind| entry.check == k || entry.check == CheckKind::All;
    if let Some(p) = &profile {
        if wants(CheckKind::Sandwich) {
            out.push(check_sandwich(p, tol));
        }
        if wants(CheckKind::RhoTauZero) {
            out.push(check_rho_profile(p, tol));
        }
        if wants(CheckKind::ImpliedInterval) {
            out.push(check_implied_interval(p, tol));
        }
    }
    if wants(CheckKind::Stolz) {
        out.push(check_stolz_prefix(&prefix)?);
    }
    Ok(out)
}

/// Runs entries in parallel; results keep manifest order.
pub fn run_manifest(entries: &[ManifestEntry]) -> Result<Vec<CheckReport>> {
    let results = par::map_slice(entries, run_entry);
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verifier::CheckStatus;

    #[test]
    fn parses_entries() {
        let m = parse_manifest(
            "# c\nfamily=power a=1/2 n=2000 check=sandwich tol=0.05\n\ncheck=analytic log_points=100 growth_points=50\n",
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert_eq!(m[0].check, CheckKind::Sandwich);
        assert!(matches!(m[1].target, ManifestTarget::Grid(_)));
    }

    #[test]
    fn bad_line_reports_number() {
        let err = parse_manifest("family=power a=1/2\ncheck=bogus family=sqrt-exp\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn runs_in_manifest_order() {
        let m = parse_manifest(
            "family=geometric alpha=1 b=2 n=2000 check=all\nfamily=power a=1/2 n=2000 check=rho-tau-zero\n",
        )
        .unwrap();
        let reports = run_manifest(&m).unwrap();
        let ids: Vec<&str> = reports.iter().map(|r| r.check_id.as_str()).collect();
        assert_eq!(ids, ["sandwich", "rho-tau-zero", "implied-interval", "stolz", "rho-tau-zero"]);
        assert!(reports[..4].iter().all(|r| !r.status.is_fail()));
        assert_eq!(reports[4].status, CheckStatus::Vacuous);
    }

    #[test]
    fn catalog_manifest_covers_catalog() {
        let m = catalog_manifest(100);
        assert_eq!(m.len(), 11);
    }

    #[test]
    fn stolz_on_union_prefix_passes() {
        let e = ManifestEntry::from_kv(&parse_kv_line("family=double-exp-union n=60 check=stolz").unwrap())
            .unwrap();
        let r = run_entry(&e).unwrap();
        assert_eq!(r[0].status, CheckStatus::Pass);
    }
}
