//! The gap-statistic table: estimated `alpha`, `beta` per family next to the
//! published values.

use crate::error::Result;
use crate::estimators::{density_profile, Diagnostic, ProfileConfig};
use crate::generators::{FamilyKind, FamilySpec};
use crate::par;

/// Published `(alpha, beta)` for a family, `None` where the table has no row.
///
/// Rows, in table order: `floor(n^(1/a))` gives `(1/a, 1/a)`; the
/// double-exponential union gives `(0, +inf)`; the non-square squares give
/// `(2, 4)`; `alpha b^n (1 + o(1))` gives `(+inf, +inf)`; `k + l n` gives
/// `(1, 1)`; `k + l n + t n^2` gives `(2, 2)`; `t n^d (1 + o(1))` gives
/// `(d, d)`. The sqrt-exp family is the worked example that follows the
/// table, with both statistics infinite.
pub fn expected_stats(kind: &FamilyKind) -> Option<(f64, f64)> {
    let inf = f64::INFINITY;
    match kind {
        FamilyKind::Power { a } => Some((1.0 / a, 1.0 / a)),
        FamilyKind::DoubleExpUnion => Some((0.0, inf)),
        FamilyKind::NonSquareSquares => Some((2.0, 4.0)),
        FamilyKind::GeometricLike { .. } => Some((inf, inf)),
        FamilyKind::Arithmetic { .. } => Some((1.0, 1.0)),
        FamilyKind::Polynomial { coeffs } if coeffs.len() == 3 && coeffs[2] > 0 => Some((2.0, 2.0)),
        FamilyKind::RealPower { d, .. } => Some((*d, *d)),
        FamilyKind::SqrtExp => Some((inf, inf)),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub family: String,
    pub length: usize,
    pub alpha_hat: f64,
    pub beta_hat: f64,
    pub alpha_diagnostic: Diagnostic,
    pub beta_diagnostic: Diagnostic,
    pub expected: Option<(f64, f64)>,
    pub eps_hat: f64,
    /// Largest deviation from the published pair; `0` when both sides are
    /// infinite, `+inf` when only one is.
    pub delta: Option<f64>,
}

fn deviation(est: f64, want: f64) -> f64 {
    match (est.is_infinite(), want.is_infinite()) {
        (true, true) => 0.0,
        (false, false) => (est - want).abs(),
        _ => f64::INFINITY,
    }
}

pub fn table_row(spec: &FamilySpec) -> Result<TableRow> {
    let prefix = spec.generate_prefix()?;
    let p = density_profile(&prefix, &ProfileConfig::default())?;
    let (a, b) = (p.alpha_hat(), p.beta_hat());
    let expected = expected_stats(&spec.kind);
    Ok(TableRow {
        family: spec.label(),
        length: prefix.len(),
        alpha_hat: a,
        beta_hat: b,
        alpha_diagnostic: p.alpha_stat_liminf.diagnostic,
        beta_diagnostic: p.beta_stat_limsup.diagnostic,
        expected,
        eps_hat: p.eps_hat(),
        delta: expected.map(|(ea, eb)| deviation(a, ea).max(deviation(b, eb))),
    })
}

/// The catalog at length `n`, with the double-exponential union at
/// `union_n` instead.
pub fn table_families(n: usize, union_n: usize) -> Vec<FamilySpec> {
    crate::generators::catalog(n)
        .into_iter()
        .map(|f| match f.kind {
            FamilyKind::DoubleExpUnion => f.with_length(union_n),
            _ => f,
        })
        .collect()
}

/// Rows in the order of `families`, computed in parallel.
pub fn compute_table(families: &[FamilySpec]) -> Result<Vec<TableRow>> {
    par::map_slice(families, table_row).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_rows() {
        assert_eq!(expected_stats(&FamilyKind::Power { a: 0.5 }), Some((2.0, 2.0)));
        assert_eq!(
            expected_stats(&FamilyKind::DoubleExpUnion),
            Some((0.0, f64::INFINITY))
        );
        assert_eq!(expected_stats(&FamilyKind::quadratic(1, 2, 3)), Some((2.0, 2.0)));
        assert_eq!(expected_stats(&FamilyKind::Product { c: 1.0, alpha: 0.5 }), None);
    }

    #[test]
    fn deviations() {
        assert_eq!(deviation(f64::INFINITY, f64::INFINITY), 0.0);
        assert_eq!(deviation(3.0, f64::INFINITY), f64::INFINITY);
        assert!((deviation(1.98, 2.0) - 0.02).abs() < 1e-12);
    }

    #[test]
    fn small_table() {
        let rows = compute_table(&table_families(2000, 60)).unwrap();
        assert_eq!(rows.len(), 10);
        let union = &rows[2];
        assert_eq!(union.length, 60);
        assert!(union.beta_diagnostic == Diagnostic::Diverging && union.alpha_hat <= 0.05);
        assert!(rows[0].delta.unwrap() < 0.1);
    }
}
