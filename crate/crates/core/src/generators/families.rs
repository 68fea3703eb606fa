use rug::float::Round;
use rug::ops::{AddAssignRound, MulAssignRound, Pow};
use rug::{Float, Integer, Rational};

use super::certify::{
    certified_floor, floor_rational_power, root_pow_interval, round_half_up, scaled_pow_interval,
    simple_fraction,
};
use super::{FamilySpec, FiniteSetReport, GenConfig, Generated};
use crate::error::{Error, Result};
use crate::par;
use crate::sequence::{build_log_prefix, build_prefix, PrefixMeta, SequencePrefix};

fn dedup_sorted(values: Vec<Integer>) -> (Vec<Integer>, usize) {
    let before = values.len();
    let mut out: Vec<Integer> = Vec::with_capacity(before);
    for v in values {
        if v >= 1 && out.last().is_none_or(|l| *l != v) {
            out.push(v);
        }
    }
    let collisions = before - out.len();
    (out, collisions)
}

fn exact_prefix(values: Vec<Integer>, tag: String) -> Result<SequencePrefix> {
    let (values, collisions) = dedup_sorted(values);
    let mut p = build_prefix(values, false)?.with_tag(tag);
    p.meta_mut().collisions = collisions;
    Ok(p)
}

/// Generates exact terms `f(1), f(2), ...` in chunks until `n` distinct
/// values are collected. `f` must be non-decreasing.
fn collect_distinct<F>(n: usize, f: F) -> Result<(Vec<Integer>, usize)>
where
    F: Fn(u64) -> Result<Integer> + Sync + Send,
{
    let mut out: Vec<Integer> = Vec::with_capacity(n);
    let mut collisions = 0;
    let mut next = 1u64;
    while out.len() < n {
        let chunk = (n - out.len()).max(16);
        let vals = par::map_range(chunk, |i| f(next + i as u64));
        next += chunk as u64;
        for v in vals {
            let v = v?;
            if v < 1 {
                continue;
            }
            if out.last().is_some_and(|l| *l == v) {
                collisions += 1;
                continue;
            }
            if out.len() < n {
                out.push(v);
            }
        }
    }
    Ok((out, collisions))
}

fn tagged(values: Vec<Integer>, collisions: usize, tag: String) -> Result<SequencePrefix> {
    let mut p = build_prefix(values, false)?.with_tag(tag);
    p.meta_mut().collisions = collisions;
    Ok(p)
}

/// `floor(n^(1/a))` for `a` in (0, 1], exact.
///
/// When `a` is a small fraction `p/q` the floor is the integer `p`-th root
/// of `n^q`; otherwise it is certified from a directed-rounding interval.
pub fn gen_power(a: f64, n: usize) -> Result<SequencePrefix> {
    if !(a.is_finite() && a > 0.0 && a <= 1.0) {
        return Err(Error::param("a must lie in (0,1]"));
    }
    let tag = format!("power(a={a})");
    let (values, collisions) = match simple_fraction(a, 64) {
        Some((p, q)) => collect_distinct(n, |m| Ok(floor_rational_power(m, p as u32, q as u32)))?,
        None => {
            let af = Float::with_val(64, a);
            collect_distinct(n, |m| {
                certified_floor(m as usize, 128, |bits| root_pow_interval(m, &af, bits))
            })?
        }
    };
    tagged(values, collisions, tag)
}

pub fn gen_arithmetic(k: u64, l: u64, n: usize) -> Result<SequencePrefix> {
    if l == 0 {
        return Err(Error::param("l must be at least 1"));
    }
    let values = (1..=n as u64)
        .map(|i| Integer::from(k) + Integer::from(l) * i)
        .collect();
    exact_prefix(values, format!("arithmetic(k={k},l={l})"))
}

/// `sum_i coeffs[i] * n^i`.
pub fn gen_polynomial(coeffs: &[u64], n: usize) -> Result<SequencePrefix> {
    if coeffs.iter().skip(1).all(|&c| c == 0) {
        return Err(Error::param(
            "polynomial needs a positive non-constant coefficient",
        ));
    }
    let values = par::map_range(n, |i| {
        let x = Integer::from(i as u64 + 1);
        // Horner
        coeffs.iter().rev().fold(Integer::new(), |acc, &c| acc * &x + c)
    });
    let tag = if coeffs.len() == 3 {
        format!("quadratic(k={},l={},t={})", coeffs[0], coeffs[1], coeffs[2])
    } else {
        let c: Vec<String> = coeffs.iter().map(u64::to_string).collect();
        format!("polynomial({})", c.join(","))
    };
    exact_prefix(values, tag)
}

/// `floor(t n^d)` with certified floors.
pub fn gen_real_power(t: f64, d: f64, n: usize) -> Result<SequencePrefix> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::param("t must be positive"));
    }
    if !(d.is_finite() && d >= 1.0) {
        return Err(Error::param("d must be at least 1"));
    }
    let tf = Float::with_val(64, t);
    let df = Float::with_val(64, d);
    let (values, collisions) = collect_distinct(n, |m| {
        certified_floor(m as usize, 128, |bits| scaled_pow_interval(&tf, m, &df, bits))
    })?;
    tagged(values, collisions, format!("real-power(t={t},d={d})"))
}

/// Sorted merge of `{2^n : n >= 1}` and `{2^(2^m) + 1 : m >= 1}`.
pub fn gen_double_exp_union(n: usize) -> Result<SequencePrefix> {
    let mut values = Vec::with_capacity(n);
    let mut e = 1u32;
    while values.len() < n {
        let p = Integer::from(Integer::u_pow_u(2, e));
        let marks_union_term = e >= 2 && e.is_power_of_two();
        values.push(p.clone());
        if marks_union_term && values.len() < n {
            values.push(p + 1u32);
        }
        e += 1;
    }
    exact_prefix(values, "double-exp-union".to_string())
}

/// `m^2` over non-square `m`.
pub fn gen_nonsquare_squares(n: usize) -> Result<SequencePrefix> {
    let values = (2u64..)
        .filter(|&m| {
            let r = m.isqrt();
            r * r != m
        })
        .take(n)
        .map(|m| Integer::from(m) * m)
        .collect();
    exact_prefix(values, "nonsquare-squares".to_string())
}

/// Inputs for building a log-domain prefix from a real increasing `u_n`
/// whose integer terms are `floor(u_n)` or `round(u_n)`.
struct LogFamily<'a> {
    /// `ln u_n` for `n = 1..=m`.
    ln_range: &'a dyn Fn(usize) -> Vec<Float>,
    /// Integer term for small `n`, used only to count the distinct values
    /// that precede the log-domain stretch.
    small_value: &'a dyn Fn(usize) -> Result<Integer>,
    precision_bits: u32,
    tag: String,
}

impl LogFamily<'_> {
    /// Starts at the first index after which consecutive `u_n` differ by
    /// more than one, so the stored terms are pairwise distinct integers.
    fn build(self, len: usize) -> Result<SequencePrefix> {
        let mut m = len + 64;
        let (lns, start) = loop {
            let lns = (self.ln_range)(m);
            let bad = |k: usize| {
                let lo = lns[k].to_f64();
                let delta = Float::with_val(64, &lns[k + 1] - &lns[k]).to_f64();
                lo < 0.0 || delta <= 0.0 || lo + delta.exp_m1().ln() <= 0.0
            };
            let start = (0..m - 1).rev().find(|&k| bad(k)).map_or(0, |k| k + 1);
            if start + len <= m {
                break (lns, start);
            }
            m = start + len + 64;
        };
        let n0 = start + 1;
        let mut first_index = 1;
        if start > 0 {
            let head = (self.small_value)(n0)?;
            let mut seen: Vec<Integer> = Vec::new();
            for j in 1..n0 {
                let v = (self.small_value)(j)?;
                if v >= 1 && v < head && seen.last() != Some(&v) {
                    seen.push(v);
                }
            }
            first_index += seen.len();
        }
        let x = (-lns[start].to_f64()).exp();
        let terms: Vec<Float> = lns.into_iter().skip(start).take(len).collect();
        let prefix = build_log_prefix(terms, self.precision_bits)?.with_tag(self.tag);
        Ok(prefix.with_meta(PrefixMeta {
            first_index,
            source_start: n0,
            collisions: 0,
            // |ln floor(u) - ln u| <= -ln(1 - 1/u) <= 1/u + 1/u^2
            ln_error_bound: Some(x + x * x),
            experimental: false,
            notes: vec![format!("log-domain terms start at n = {n0}")],
        }))
    }
}

/// Floor of a small positive value computed with a few correctly rounded
/// operations: the relative error is far below `2^-(bits-16)`.
fn floor_small(index: usize, value: impl Fn(u32) -> Float) -> Result<Integer> {
    certified_floor(index, 256, |bits| {
        let v = value(bits);
        let slack = Float::with_val(bits, &v * Float::with_val(bits, Float::u_exp(1, -(bits as i32 - 16))));
        (Float::with_val(bits, &v - &slack), Float::with_val(bits, &v + &slack))
    })
}

fn sqrt_exp_ln(n: usize, bits: u32) -> Float {
    let x = Float::with_val(bits, n);
    let inv = x.clone().sqrt().recip();
    Float::with_val(bits, inv.ln_1p() * &x)
}

/// Log-domain `floor((1 + n^(-1/2))^n)`.
pub fn gen_sqrt_exp(n: usize, precision_bits: u32) -> Result<SequencePrefix> {
    let bits = crate::sequence::check_precision(precision_bits)?;
    let ln_range = move |m: usize| par::map_range(m, |k| sqrt_exp_ln(k + 1, bits));
    let small = |j: usize| {
        let k = (j as u64).isqrt();
        if k * k == j as u64 {
            // (1 + 1/k)^(k^2) is rational and may be an integer (k = 1)
            let base = Rational::from((k + 1, k));
            return Ok(base.pow(j as u32).floor().into_numer_denom().0);
        }
        floor_small(j, |b| sqrt_exp_ln(j, b).exp())
    };
    LogFamily {
        ln_range: &ln_range,
        small_value: &small,
        precision_bits: bits,
        tag: "sqrt-exp".to_string(),
    }
    .build(n)
}

/// `round(alpha b^n)`, exact while terms fit the bit budget, else log domain.
pub fn gen_geometric(alpha: f64, b: f64, n: usize, cfg: &GenConfig) -> Result<SequencePrefix> {
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::param("alpha must be positive"));
    }
    if !(b.is_finite() && b > 1.0) {
        return Err(Error::param("b must be greater than 1"));
    }
    let tag = format!("geometric(alpha={alpha},b={b})");
    let ra = Rational::from_f64(alpha).expect("finite");
    let rb = Rational::from_f64(b).expect("finite");
    let exact_value = |j: usize| -> Integer {
        let v = Rational::from(&ra * Rational::from((&rb).pow(j as i32)));
        round_half_up(&v)
    };

    let mut values: Vec<Integer> = Vec::with_capacity(n);
    let mut collisions = 0;
    let mut cur = ra.clone();
    let mut fits = true;
    while values.len() < n {
        cur *= &rb;
        let v = round_half_up(&cur);
        if v.significant_bits() > cfg.exact_bit_budget {
            fits = false;
            break;
        }
        if v < 1 {
            continue;
        }
        if values.last() == Some(&v) {
            collisions += 1;
            continue;
        }
        values.push(v);
    }
    if fits {
        return tagged(values, collisions, tag);
    }

    let bits = crate::sequence::check_precision(cfg.precision_bits)?;
    let ln_alpha = Float::with_val(bits, alpha).ln();
    let ln_b = Float::with_val(bits, b).ln();
    let ln_range = move |m: usize| {
        par::map_range(m, |k| {
            Float::with_val(bits, &ln_b * (k as u64 + 1)) + &ln_alpha
        })
    };
    let small = |j: usize| Ok(exact_value(j));
    LogFamily {
        ln_range: &ln_range,
        small_value: &small,
        precision_bits: bits,
        tag,
    }
    .build(n)
}

/// Interval for `c * prod_{i<=m} (1 + i^-alpha)` for every `m <= count`.
fn product_intervals(c: f64, alpha: f64, count: usize, bits: u32) -> Vec<(Float, Float)> {
    let mut lo = Float::with_val(bits, c);
    let mut hi = Float::with_val(bits, c);
    let neg_alpha = Float::with_val(64, -alpha);
    let mut out = Vec::with_capacity(count);
    for i in 1..=count {
        let base = Float::with_val(bits, i);
        let mut f_lo = Float::with_val_round(bits, (&base).pow(&neg_alpha), Round::Down).0;
        let mut f_hi = Float::with_val_round(bits, (&base).pow(&neg_alpha), Round::Up).0;
        f_lo.add_assign_round(1u32, Round::Down);
        f_hi.add_assign_round(1u32, Round::Up);
        lo.mul_assign_round(&f_lo, Round::Down);
        hi.mul_assign_round(&f_hi, Round::Up);
        out.push((lo.clone(), hi.clone()));
    }
    out
}

fn product_floors(c: f64, alpha: f64, count: usize, start_bits: u32) -> Result<Vec<Integer>> {
    let mut bits = start_bits;
    'escalate: loop {
        let iv = product_intervals(c, alpha, count, bits);
        let mut out = Vec::with_capacity(count);
        for (i, (lo, hi)) in iv.iter().enumerate() {
            let (a, b) = (super::certify::floor_of(lo), super::certify::floor_of(hi));
            if a != b {
                if bits >= crate::sequence::MAX_PRECISION {
                    return Err(Error::FloorUncertifiable {
                        index: i + 1,
                        max_bits: bits,
                    });
                }
                bits = (bits * 2).min(crate::sequence::MAX_PRECISION);
                continue 'escalate;
            }
            out.push(a);
        }
        return Ok(out);
    }
}

fn estimated_log2_product(c: f64, alpha: f64, n: usize) -> f64 {
    let s: f64 = (1..=n).map(|i| (i as f64).powf(-alpha).ln_1p()).sum();
    (c.ln() + s) / std::f64::consts::LN_2
}

/// `floor(c * prod_{i<=n} (1 + i^-alpha))`, deduped.
///
/// For `alpha > 1` the product converges and the set of floors is finite;
/// once `stall_window` consecutive terms add nothing new the distinct values
/// come back as a [`FiniteSetReport`].
pub fn gen_product(c: f64, alpha: f64, n: usize, cfg: &GenConfig) -> Result<Generated> {
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::param("c must be positive"));
    }
    if !(alpha.is_finite() && alpha > 0.0) {
        return Err(Error::param("alpha must be positive"));
    }
    let tag = format!("product(c={c},alpha={alpha})");
    let bits = crate::sequence::check_precision(cfg.precision_bits)?;

    if alpha == 1.0 {
        // the product telescopes to n + 1
        let rc = Rational::from_f64(c).expect("finite");
        let (values, collisions) = collect_distinct(n, |m| {
            Ok(Rational::from(&rc * (m + 1)).floor().into_numer_denom().0)
        })?;
        return Ok(Generated::Prefix(tagged(values, collisions, tag)?));
    }

    if alpha > 1.0 || estimated_log2_product(c, alpha, n) <= cfg.exact_bit_budget as f64 {
        let mut values: Vec<Integer> = Vec::new();
        let mut evaluated = 0usize;
        let mut collisions = 0usize;
        let mut stall = 0usize;
        let mut batch = n.max(1024);
        loop {
            let floors = product_floors(c, alpha, evaluated + batch, bits)?;
            for v in floors.into_iter().skip(evaluated) {
                evaluated += 1;
                if v >= 1 && values.last() != Some(&v) {
                    values.push(v);
                    stall = 0;
                } else {
                    collisions += 1;
                    stall += 1;
                }
                if values.len() == n {
                    return Ok(Generated::Prefix(tagged(values, collisions, tag)?));
                }
                if alpha > 1.0 && stall >= cfg.stall_window {
                    return Ok(Generated::Finite(FiniteSetReport {
                        family_tag: tag,
                        values,
                        terms_evaluated: evaluated,
                        stall_window: cfg.stall_window,
                    }));
                }
            }
            batch *= 2;
        }
    }

    let ln_range = move |m: usize| {
        let neg_alpha = Float::with_val(64, -alpha);
        let factors = par::map_range(m, |k| {
            Float::with_val(bits, (&Float::with_val(bits, k + 1)).pow(&neg_alpha)).ln_1p()
        });
        let mut acc = Float::with_val(bits, c).ln();
        factors
            .into_iter()
            .map(|f| {
                acc += f;
                acc.clone()
            })
            .collect()
    };
    let small = |j: usize| -> Result<Integer> {
        Ok(product_floors(c, alpha, j, bits)?.pop().unwrap_or_default())
    };
    let prefix = LogFamily {
        ln_range: &ln_range,
        small_value: &small,
        precision_bits: bits,
        tag,
    }
    .build(n)?;
    Ok(Generated::Prefix(prefix))
}

/// Alternating blocks from two exact families, each block shifted up just
/// enough to stay above the previous term. The schedule repeats when it runs
/// out. No density claim is attached to the result.
pub fn gen_interleave(
    first: &FamilySpec,
    second: &FamilySpec,
    schedule: &[usize],
    n: usize,
) -> Result<SequencePrefix> {
    if schedule.is_empty() || schedule.contains(&0) {
        return Err(Error::param("schedule needs positive block lengths"));
    }
    let mut demand = [0usize; 2];
    let mut remaining = n;
    for (i, &len) in schedule.iter().cycle().enumerate() {
        if remaining == 0 {
            break;
        }
        let take = len.min(remaining);
        demand[i % 2] += take;
        remaining -= take;
    }
    let source = |spec: &FamilySpec, count: usize| -> Result<Vec<Integer>> {
        if count == 0 {
            return Ok(Vec::new());
        }
        let p = spec.clone().with_length(count).generate_prefix()?;
        let terms = p
            .exact_terms()
            .ok_or_else(|| Error::param("interleave needs exact sub-families"))?;
        if terms.len() < count {
            return Err(Error::param(format!(
                "{} produced only {} terms",
                spec.label(),
                terms.len()
            )));
        }
        Ok(terms.to_vec())
    };
    let (a, b) = par::join(|| source(first, demand[0]), || source(second, demand[1]));
    let streams = [a?, b?];
    let mut cursor = [0usize; 2];
    let mut out: Vec<Integer> = Vec::with_capacity(n);
    for (i, &len) in schedule.iter().cycle().enumerate() {
        if out.len() >= n {
            break;
        }
        let which = i % 2;
        let take = len.min(n - out.len());
        let block = &streams[which][cursor[which]..cursor[which] + take];
        cursor[which] += take;
        let shift = match out.last() {
            Some(last) if block[0] <= *last => Integer::from(last - &block[0]) + 1u32,
            _ => Integer::new(),
        };
        out.extend(block.iter().map(|v| Integer::from(v + &shift)));
    }
    let mut p = build_prefix(out, false)?.with_tag(format!(
        "interleave({},{})",
        first.kind, second.kind
    ));
    let meta = p.meta_mut();
    meta.experimental = true;
    meta.notes.push("experimental block interleaving".to_string());
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::super::FamilyKind;
    use super::*;

    fn u64s(p: &SequencePrefix) -> Vec<u64> {
        p.exact_terms()
            .unwrap()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect()
    }

    #[test]
    fn power_examples() {
        assert_eq!(u64s(&gen_power(0.5, 5).unwrap()), vec![1, 4, 9, 16, 25]);
        assert_eq!(u64s(&gen_power(1.0, 4).unwrap()), vec![1, 2, 3, 4]);
        assert_eq!(u64s(&gen_power(1.0 / 3.0, 4).unwrap()), vec![1, 8, 27, 64]);
        assert!(gen_power(0.0, 4).is_err());
    }

    #[test]
    fn power_irrational_exponent_brackets() {
        // a = 1/sqrt(2) has no small fraction; check t^a <= n < (t+1)^a
        // through t <= n^(1/a) < t + 1 in f64 with margin.
        let a = std::f64::consts::FRAC_1_SQRT_2;
        let p = gen_power(a, 200).unwrap();
        let v = u64s(&p);
        for (k, &t) in v.iter().enumerate() {
            let x = ((k + 1) as f64).powf(1.0 / a);
            assert!((t as f64) <= x + 1e-9 && x < (t + 1) as f64, "n={} t={t} x={x}", k + 1);
        }
    }

    #[test]
    fn geometric_examples() {
        let cfg = GenConfig::default();
        assert_eq!(u64s(&gen_geometric(1.0, 2.0, 5, &cfg).unwrap()), vec![2, 4, 8, 16, 32]);
        assert_eq!(
            u64s(&gen_geometric(3.0, 1.5, 6, &cfg).unwrap()),
            vec![5, 7, 10, 15, 23, 34]
        );
        let big = gen_geometric(1.0, 2.0, 200, &cfg).unwrap();
        assert!(!big.is_exact());
        assert_eq!(big.meta().first_index, 1);
        let l2 = Float::with_val(128, 2).ln();
        for (i, v) in big.log_terms().unwrap().iter().enumerate() {
            let want = Float::with_val(128, &l2 * (i as u64 + 1));
            let err = Float::with_val(128, v - &want).abs().to_f64();
            assert!(err < 1e-35, "n={} err={err}", i + 1);
        }
    }

    #[test]
    fn geometric_log_offset_counts_early_values() {
        // alpha b^n = 0.3 * 1.1^n: early rounded values repeat, and the log
        // stretch must start after them with a matching sequence index.
        let cfg = GenConfig {
            exact_bit_budget: 8,
            ..GenConfig::default()
        };
        let p = gen_geometric(0.3, 1.1, 50, &cfg).unwrap();
        assert!(!p.is_exact());
        let n0 = p.meta().source_start;
        let ra = Rational::from_f64(0.3).unwrap();
        let rb = Rational::from_f64(1.1).unwrap();
        let mut distinct: Vec<Integer> = Vec::new();
        for j in 1..n0 {
            let v = round_half_up(&Rational::from(&ra * Rational::from((&rb).pow(j as i32))));
            if v >= 1 && distinct.last() != Some(&v) {
                distinct.push(v);
            }
        }
        let head = round_half_up(&Rational::from(&ra * Rational::from((&rb).pow(n0 as i32))));
        distinct.retain(|v| *v < head);
        assert_eq!(p.meta().first_index, distinct.len() + 1);
    }

    #[test]
    fn arithmetic_and_quadratic() {
        assert_eq!(u64s(&gen_arithmetic(3, 5, 4).unwrap()), vec![8, 13, 18, 23]);
        assert_eq!(u64s(&gen_polynomial(&[1, 2, 3], 4).unwrap()), vec![6, 17, 34, 57]);
    }

    #[test]
    fn real_power_example() {
        assert_eq!(u64s(&gen_real_power(1.0, 2.5, 4).unwrap()), vec![1, 5, 15, 32]);
    }

    #[test]
    fn real_power_dedups_small_slopes() {
        let p = gen_real_power(0.3, 1.0, 10).unwrap();
        assert_eq!(p.len(), 10);
        assert!(p.meta().collisions > 0);
    }

    #[test]
    fn double_exp_union_examples() {
        assert_eq!(u64s(&gen_double_exp_union(6).unwrap()), vec![2, 4, 5, 8, 16, 17]);
        let p = gen_double_exp_union(11).unwrap();
        assert_eq!(*u64s(&p).last().unwrap(), 257);
    }

    #[test]
    fn nonsquare_squares_examples() {
        assert_eq!(u64s(&gen_nonsquare_squares(3).unwrap()), vec![4, 9, 25]);
        assert_eq!(
            u64s(&gen_nonsquare_squares(7).unwrap()),
            vec![4, 9, 25, 36, 49, 64, 100]
        );
    }

    #[test]
    fn sqrt_exp_values_and_start() {
        let p = gen_sqrt_exp(200, 256).unwrap();
        assert_eq!(p.meta().source_start, 2);
        // floors 2, 2, 3, 5, ...: the n = 2 term has sequence index 1
        assert_eq!(p.meta().first_index, 1);
        let n100 = 100 - p.meta().source_start;
        let v = p.log_terms().unwrap()[n100].to_f64();
        assert!((v - 9.531017980432486).abs() < 1e-12);
    }

    #[test]
    fn sqrt_exp_increments_exceed_one() {
        let p = gen_sqrt_exp(2000, 128).unwrap();
        let lns = p.log_terms().unwrap();
        for w in lns.windows(2) {
            let d = Float::with_val(128, &w[1] - &w[0]);
            assert!(d > 0);
            let inc = d.exp_m1().ln() + &w[0];
            assert!(inc > 0);
        }
    }

    #[test]
    fn product_convergent_is_finite() {
        let cfg = GenConfig {
            stall_window: 2000,
            ..GenConfig::default()
        };
        match gen_product(10.0, 2.0, 100_000, &cfg).unwrap() {
            Generated::Finite(r) => {
                // 10 * sinh(pi)/pi = 36.76..., so the floors end at 36
                assert_eq!(r.values.first().unwrap(), &20);
                assert_eq!(r.values.last().unwrap(), &36);
                assert!(r.values.windows(2).all(|w| w[0] < w[1]));
            }
            Generated::Prefix(_) => panic!("expected a finite set"),
        }
    }

    #[test]
    fn product_boundary_alpha_one_is_linear() {
        let p = gen_product(1.0, 1.0, 5, &GenConfig::default())
            .unwrap()
            .into_prefix()
            .unwrap();
        assert_eq!(u64s(&p), vec![2, 3, 4, 5, 6]);
    }

    #[test]
    fn product_divergent_goes_log_domain() {
        let p = gen_product(1.0, 0.5, 10_000, &GenConfig::default())
            .unwrap()
            .into_prefix()
            .unwrap();
        assert!(!p.is_exact());
        assert_eq!(p.meta().source_start, 1);
    }

    #[test]
    fn interleave_single_block_is_first_family() {
        let a = FamilySpec::new(FamilyKind::Arithmetic { k: 0, l: 3 }, 1);
        let b = FamilySpec::new(FamilyKind::GeometricLike { alpha: 1.0, b: 2.0 }, 1);
        let p = gen_interleave(&a, &b, &[20], 20).unwrap();
        assert_eq!(u64s(&p), u64s(&gen_arithmetic(0, 3, 20).unwrap()));
        assert!(p.meta().experimental);
    }

    #[test]
    fn interleave_is_strictly_increasing() {
        let a = FamilySpec::new(FamilyKind::Arithmetic { k: 0, l: 1 }, 1);
        let b = FamilySpec::new(FamilyKind::GeometricLike { alpha: 1.0, b: 2.0 }, 1);
        let p = gen_interleave(&a, &b, &[10, 10], 95).unwrap();
        assert_eq!(p.len(), 95);
        let v = p.exact_terms().unwrap();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }
}
