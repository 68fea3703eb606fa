//! Certified floors of real-valued terms.
//!
//! A value is bracketed by an interval computed with directed rounding; the
//! floor is accepted only when both ends agree. Otherwise the precision is
//! doubled, up to [`MAX_PRECISION`](crate::sequence::MAX_PRECISION).

use rug::float::Round;
use rug::ops::{DivAssignRound, MulAssignRound, Pow};
use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::sequence::MAX_PRECISION;

/// Floor of a value bracketed by `eval(bits) = (lo, hi)`.
pub fn certified_floor<F>(index: usize, start_bits: u32, eval: F) -> Result<Integer>
where
    F: Fn(u32) -> (Float, Float),
{
    let mut bits = start_bits.max(64);
    loop {
        let (lo, hi) = eval(bits);
        let (flo, fhi) = (floor_of(&lo), floor_of(&hi));
        if flo == fhi {
            return Ok(flo);
        }
        if bits >= MAX_PRECISION {
            return Err(Error::FloorUncertifiable {
                index,
                max_bits: MAX_PRECISION,
            });
        }
        bits = (bits * 2).min(MAX_PRECISION);
    }
}

pub(crate) fn floor_of(x: &Float) -> Integer {
    x.to_integer_round(Round::Down)
        .map(|(i, _)| i)
        .unwrap_or_default()
}

/// Interval for `t * n^d` at `bits` precision; `t > 0`, `n >= 1`.
pub fn scaled_pow_interval(t: &Float, n: u64, d: &Float, bits: u32) -> (Float, Float) {
    let base = Float::with_val(bits, n);
    let mut lo = Float::with_val_round(bits, (&base).pow(d), Round::Down).0;
    let mut hi = Float::with_val_round(bits, (&base).pow(d), Round::Up).0;
    lo.mul_assign_round(t, Round::Down);
    hi.mul_assign_round(t, Round::Up);
    (lo, hi)
}

/// Interval for `n^(1/a)`; the exponent itself is bracketed first.
pub fn root_pow_interval(n: u64, a: &Float, bits: u32) -> (Float, Float) {
    let mut e_lo = Float::with_val(bits, 1);
    let mut e_hi = Float::with_val(bits, 1);
    e_lo.div_assign_round(a, Round::Down);
    e_hi.div_assign_round(a, Round::Up);
    let base = Float::with_val(bits, n);
    // n >= 1, so n^e is non-decreasing in e
    let lo = Float::with_val_round(bits, (&base).pow(&e_lo), Round::Down).0;
    let hi = Float::with_val_round(bits, (&base).pow(&e_hi), Round::Up).0;
    (lo, hi)
}

/// `floor(n^(q/p))` exactly, as the integer `p`-th root of `n^q`.
pub fn floor_rational_power(n: u64, p: u32, q: u32) -> Integer {
    Integer::from(n).pow(q).root(p)
}

/// Simplest fraction `p/q` (`q <= max_den`) equal to `x` up to a few ulps.
pub fn simple_fraction(x: f64, max_den: u64) -> Option<(u64, u64)> {
    if !(x.is_finite() && x > 0.0) {
        return None;
    }
    let tol = 8.0 * f64::EPSILON * x;
    let (mut h0, mut h1) = (0u64, 1u64);
    let (mut k0, mut k1) = (1u64, 0u64);
    let mut r = x;
    for _ in 0..64 {
        let a = r.floor();
        if a > u32::MAX as f64 {
            return None;
        }
        let a = a as u64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            return None;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        if (h1 as f64 / k1 as f64 - x).abs() <= tol {
            return Some((h1, k1));
        }
        let frac = r - a as f64;
        if frac <= 0.0 {
            return None;
        }
        r = 1.0 / frac;
    }
    None
}

/// `round(v)` with ties away from zero, for `v >= 0`.
pub fn round_half_up(v: &Rational) -> Integer {
    let shifted = Rational::from(v + Rational::from((1, 2)));
    shifted.floor().into_numer_denom().0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fractions_are_recovered() {
        assert_eq!(simple_fraction(0.5, 64), Some((1, 2)));
        assert_eq!(simple_fraction(1.0 / 3.0, 64), Some((1, 3)));
        assert_eq!(simple_fraction(0.4, 64), Some((2, 5)));
        assert_eq!(simple_fraction(1.0, 64), Some((1, 1)));
        assert_eq!(simple_fraction(std::f64::consts::FRAC_1_SQRT_2, 64), None);
    }

    #[test]
    fn rational_power_floor_brackets() {
        for n in 1..200u64 {
            let t = floor_rational_power(n, 2, 3); // floor(n^1.5)
            let n3 = Integer::from(n).pow(3);
            assert!(Integer::from(&t * &t) <= n3);
            let t1 = Integer::from(&t + 1u32);
            assert!(Integer::from(&t1 * &t1) > n3);
        }
    }

    #[test]
    fn pow_interval_floor_matches_examples() {
        let t = Float::with_val(64, 1);
        let d = Float::with_val(64, 2.5);
        let got: Vec<Integer> = (1..=4u64)
            .map(|n| certified_floor(n as usize, 128, |b| scaled_pow_interval(&t, n, &d, b)).unwrap())
            .collect();
        assert_eq!(got, vec![1, 5, 15, 32]);
    }

    #[test]
    fn exact_integer_values_certify() {
        // 4^2.5 = 32 exactly; directed rounding is exact so both ends agree
        let t = Float::with_val(64, 1);
        let d = Float::with_val(64, 2.5);
        let (lo, hi) = scaled_pow_interval(&t, 4, &d, 128);
        assert_eq!(lo, hi);
    }

    #[test]
    fn half_up_rounding() {
        assert_eq!(round_half_up(&Rational::from((9, 2))), 5);
        assert_eq!(round_half_up(&Rational::from((27, 4))), 7);
        assert_eq!(round_half_up(&Rational::from((1, 3))), 0);
    }

    #[test]
    fn straddling_interval_is_uncertifiable() {
        let err = certified_floor(7, 64, |b| {
            (Float::with_val(b, 2.999), Float::with_val(b, 3.001))
        })
        .unwrap_err();
        assert!(matches!(err, Error::FloorUncertifiable { index: 7, .. }));
    }
}
