//! Ratio-of-differences bounds for `x_n / y_n`.
//!
//! For `y` strictly increasing and positive from index `m` on,
//! `x_n / y_n` is a mediant of `x_m / y_m` and the difference ratios
//! `dx_k / dy_k` for `m <= k < n`, so it lies between their minimum and
//! maximum. That finite form is what the check enforces; the four tail
//! estimates of the limit statement are reported alongside.

use rug::Float;

use super::report::{CheckReport, CheckStatus, Witness};
use crate::error::{Error, Result};
use crate::sequence::{gap_ratio_samples, SequencePrefix};

pub const STOLZ_TOL: f64 = 1e-9;

fn tail_extrema(v: &[f64]) -> (f64, f64) {
    v.iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| (lo.min(x), hi.max(x)))
}

pub fn check_stolz(x: &[f64], y: &[f64]) -> Result<CheckReport> {
    check_stolz_with(x, y, 0.5, STOLZ_TOL)
}

/// `window` is the fraction of indices, counted from the end, checked.
/// `tol` is relative to the magnitude of the bounds.
pub fn check_stolz_with(x: &[f64], y: &[f64], window: f64, tol: f64) -> Result<CheckReport> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if let Some(i) = (1..y.len()).find(|&i| !(y[i] > y[i - 1])) {
        return Err(Error::NotIncreasing { index: i });
    }
    let dx: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    check_stolz_differences(x, y, &dx, &dy, window, tol)
}

/// As [`check_stolz_with`], with the differences supplied separately so that
/// they can carry more precision than `y` itself.
pub fn check_stolz_differences(
    x: &[f64],
    y: &[f64],
    dx: &[f64],
    dy: &[f64],
    window: f64,
    tol: f64,
) -> Result<CheckReport> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    let len = x.len();
    if len < 3 {
        return Err(Error::TooShort { needed: 3, got: len });
    }
    if dx.len() + 1 != len || dy.len() + 1 != len {
        return Err(Error::LengthMismatch {
            left: len - 1,
            right: dx.len().min(dy.len()),
        });
    }
    if let Some(k) = dy.iter().position(|d| !(*d > 0.0)) {
        return Err(Error::NotIncreasing { index: k + 1 });
    }
    if x.iter().chain(y).chain(dx).chain(dy).any(|v| !v.is_finite()) {
        return Err(Error::param("sequences must be finite"));
    }

    let diffs: Vec<f64> = dx.iter().zip(dy).map(|(a, b)| a / b).collect();
    Ok(stolz_on_ratios(x, y, &diffs, window, tol))
}

fn finite_scale(vals: &[f64]) -> f64 {
    vals.iter()
        .filter(|v| v.is_finite())
        .fold(0.0f64, |m, v| m.max(v.abs()))
}

/// Core of the check on precomputed difference ratios `diffs[k] =
/// dx_k / dy_k`, which may be `+inf` where `dy` is below double range.
fn stolz_on_ratios(x: &[f64], y: &[f64], diffs: &[f64], window: f64, tol: f64) -> CheckReport {
    let len = x.len();
    let mut r = CheckReport::new("stolz", "custom", tol);
    let tail = ((window * len as f64).ceil() as usize).clamp(2, len);
    let Some(m) = (len - tail..len - 1).find(|&i| y[i] > 0.0) else {
        r.status = CheckStatus::Vacuous;
        r.note("y is not positive inside the window");
        return r;
    };

    let ratios: Vec<f64> = (m..len).map(|i| x[i] / y[i]).collect();
    let diffs = &diffs[m..len - 1];

    let mut lo = ratios[0];
    let mut hi = ratios[0];
    for (j, d) in diffs.iter().enumerate() {
        lo = lo.min(*d);
        hi = hi.max(*d);
        let n = m + j + 1;
        let q = ratios[j + 1];
        let slack = tol * (1.0 + finite_scale(&[lo, hi, q]));
        if q < lo - slack || q > hi + slack {
            r.fail(Witness::new(n, &[("ratio", q), ("lower", lo), ("upper", hi)]));
            break;
        }
    }

    let (d_lo, d_hi) = tail_extrema(diffs);
    let (q_lo, q_hi) = tail_extrema(&ratios[1..]);
    r.measure("liminf_diff_ratio", d_lo);
    r.measure("liminf_ratio", q_lo);
    r.measure("limsup_ratio", q_hi);
    r.measure("limsup_diff_ratio", d_hi);
    r.measure("window_start", m as f64);
    let slack = tol * (1.0 + finite_scale(&[d_lo, d_hi, q_lo, q_hi]));
    if !(d_lo <= q_lo + slack && q_lo <= q_hi && q_hi <= d_hi + slack) {
        // possible on a finite window when x_m / y_m still dominates
        r.note("tail chain not ordered; start ratio lies outside the difference ratios");
    }
    r
}

/// `x_n = ln n` against `y_n = ln a_n` for a prefix.
pub fn check_stolz_prefix(prefix: &SequencePrefix) -> Result<CheckReport> {
    let first = prefix.meta().first_index;
    let x: Vec<f64> = (0..prefix.len()).map(|i| ((first + i) as f64).ln()).collect();
    let y = prefix.ln_values_f64();
    if prefix.len() < 3 {
        return Err(Error::TooShort {
            needed: 3,
            got: prefix.len(),
        });
    }
    let prec = prefix.precision_bits();
    // ln((n+1)/n) over ln(a_{n+1}/a_n), the latter from the gap ratio so that
    // neighbours like 2^k and 2^k + 1 keep their difference
    let diffs: Vec<f64> = gap_ratio_samples(prefix)?
        .iter()
        .map(|g| {
            let n = g.index as f64;
            let dx = (1.0 / n).ln_1p();
            let dy = g.gap_over_curr.clone().ln_1p();
            (Float::with_val(prec, dx) / dy).to_f64()
        })
        .collect();
    let mut r = stolz_on_ratios(&x, &y, &diffs, 0.5, STOLZ_TOL);
    r.subject = prefix.family_tag().to_string();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_case() {
        let y: Vec<f64> = (1..=100).map(|n| (n * n) as f64).collect();
        let r = check_stolz(&y, &y).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        for k in ["liminf_diff_ratio", "liminf_ratio", "limsup_ratio", "limsup_diff_ratio"] {
            assert_eq!(r.measurement(k), Some(1.0));
        }
    }

    #[test]
    fn log_index_over_log_powers_of_two() {
        let x: Vec<f64> = (1..=400).map(|n| (n as f64).ln()).collect();
        let y: Vec<f64> = (1..=400).map(|n| n as f64 * 2f64.ln()).collect();
        let r = check_stolz(&x, &y).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert!(r.measurement("limsup_diff_ratio").unwrap() < 0.01);
        assert!(r.measurement("limsup_ratio").unwrap() < 0.04);
    }

    #[test]
    fn oscillating_differences_bracket_ratio() {
        let x: Vec<f64> = (1..=1000)
            .map(|n| n as f64 + if n % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        let y: Vec<f64> = (1..=1000).map(|n| n as f64).collect();
        let r = check_stolz(&x, &y).unwrap();
        assert_eq!(r.status, CheckStatus::Pass);
        assert_eq!(r.measurement("liminf_diff_ratio"), Some(-1.0));
        assert_eq!(r.measurement("limsup_diff_ratio"), Some(3.0));
        let q = r.measurement("limsup_ratio").unwrap();
        assert!((q - 1.0).abs() < 0.01);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            check_stolz(&[1.0, 2.0, 3.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { left: 3, right: 2 })
        ));
        assert!(matches!(
            check_stolz(&[1.0, 2.0, 3.0], &[1.0, 2.0, 2.0]),
            Err(Error::NotIncreasing { index: 2 })
        ));
    }

    #[test]
    fn nonpositive_y_in_window_is_vacuous() {
        let r = check_stolz(&[1.0, 1.0, 1.0], &[-3.0, -2.0, -1.0]).unwrap();
        assert_eq!(r.status, CheckStatus::Vacuous);
    }

    #[test]
    fn neighbours_below_double_range() {
        // 2^2048 and 2^2048 + 1 are both in the union prefix
        let p = crate::generators::gen_double_exp_union(2100).unwrap();
        let r = check_stolz_prefix(&p).unwrap();
        assert_eq!(r.status, CheckStatus::Pass, "{r:?}");
        assert_eq!(r.measurement("limsup_diff_ratio"), Some(f64::INFINITY));
    }
}
