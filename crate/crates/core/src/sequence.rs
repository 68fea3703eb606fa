//! Strictly increasing integer sequences in two representations.
//!
//! An exact prefix stores the integers themselves. A log-domain prefix stores
//! only `ln a_n` at a fixed binary precision, which is what every density
//! statistic actually consumes and is the only workable form for terms such
//! as `2^(2^N)`.

use std::cmp::Ordering;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};
use crate::par;

pub const DEFAULT_PRECISION: u32 = 128;
pub const MIN_PRECISION: u32 = 64;
pub const MAX_PRECISION: u32 = 1024;

pub fn check_precision(bits: u32) -> Result<u32> {
    if (MIN_PRECISION..=MAX_PRECISION).contains(&bits) {
        Ok(bits)
    } else {
        Err(Error::InvalidPrecision {
            got: bits,
            min: MIN_PRECISION,
            max: MAX_PRECISION,
        })
    }
}

/// Smallest ln-difference two log-domain terms may have at `bits` precision.
pub fn separation_floor(bits: u32) -> Float {
    Float::with_val(bits, Float::u_exp(1, -(bits as i32 - 8)))
}

/// One sequence element.
#[derive(Clone, Debug)]
pub enum TermValue {
    Exact(Integer),
    LogDomain { ln_value: Float, precision_bits: u32 },
}

impl TermValue {
    /// Natural log of the term at `prec` bits.
    pub fn ln(&self, prec: u32) -> Float {
        match self {
            TermValue::Exact(v) => ln_integer(v, prec),
            TermValue::LogDomain { ln_value, .. } => Float::with_val(prec, ln_value),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, TermValue::Exact(_))
    }

    fn precision(&self) -> Option<u32> {
        match self {
            TermValue::Exact(_) => None,
            TermValue::LogDomain { precision_bits, .. } => Some(*precision_bits),
        }
    }
}

impl PartialEq for TermValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for TermValue {}

impl PartialOrd for TermValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TermValue {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (TermValue::Exact(a), TermValue::Exact(b)) = (self, other) {
            return a.cmp(b);
        }
        let prec = match (self.precision(), other.precision()) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let (a, b) = (self.ln(prec), other.ln(prec));
        // ln values are never NaN: exact terms are >= 1 and log terms are validated.
        a.partial_cmp(&b).unwrap_or(Ordering::Equal)
    }
}

pub(crate) fn ln_integer(v: &Integer, prec: u32) -> Float {
    Float::with_val(prec, v).ln()
}

#[derive(Clone, Debug)]
pub(crate) enum Terms {
    Exact(Vec<Integer>),
    Log(Vec<Float>),
}

/// Provenance carried alongside a prefix.
#[derive(Clone, Debug, PartialEq)]
pub struct PrefixMeta {
    /// Sequence index of the first stored term. Larger than 1 when a
    /// generator skips an initial stretch it cannot separate in log domain.
    pub first_index: usize,
    /// Generator parameter index of the first stored term (e.g. the `n` of
    /// `u_n`), which can differ from `first_index` after dedup.
    pub source_start: usize,
    /// Equal values dropped while generating.
    pub collisions: usize,
    /// Bound on `|ln a_n - stored ln|` when log terms ignore a floor.
    pub ln_error_bound: Option<f64>,
    pub experimental: bool,
    pub notes: Vec<String>,
}

impl Default for PrefixMeta {
    fn default() -> Self {
        PrefixMeta {
            first_index: 1,
            source_start: 1,
            collisions: 0,
            ln_error_bound: None,
            experimental: false,
            notes: Vec::new(),
        }
    }
}

/// Finite prefix `a_1 < a_2 < ... < a_N` of an integer sequence.
#[derive(Clone, Debug)]
pub struct SequencePrefix {
    pub(crate) terms: Terms,
    precision_bits: u32,
    family_tag: String,
    meta: PrefixMeta,
}

impl SequencePrefix {
    pub(crate) fn from_exact_unchecked(terms: Vec<Integer>, precision_bits: u32) -> Self {
        SequencePrefix {
            terms: Terms::Exact(terms),
            precision_bits,
            family_tag: "custom".to_string(),
            meta: PrefixMeta::default(),
        }
    }

    /// Builds a prefix from a list of term values; all must share a representation.
    pub fn from_terms(terms: Vec<TermValue>) -> Result<Self> {
        let first = terms.first().ok_or(Error::EmptyInput)?;
        if first.is_exact() {
            let mut ints = Vec::with_capacity(terms.len());
            for t in terms {
                match t {
                    TermValue::Exact(v) => ints.push(v),
                    TermValue::LogDomain { .. } => return Err(Error::MixedRepresentation),
                }
            }
            build_prefix(ints, false)
        } else {
            let prec = first.precision().unwrap_or(DEFAULT_PRECISION);
            let mut lns = Vec::with_capacity(terms.len());
            for t in terms {
                match t {
                    TermValue::LogDomain { ln_value, .. } => lns.push(ln_value),
                    TermValue::Exact(_) => return Err(Error::MixedRepresentation),
                }
            }
            build_log_prefix(lns, prec)
        }
    }

    pub fn len(&self) -> usize {
        match &self.terms {
            Terms::Exact(v) => v.len(),
            Terms::Log(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.terms, Terms::Exact(_))
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn family_tag(&self) -> &str {
        &self.family_tag
    }

    pub fn meta(&self) -> &PrefixMeta {
        &self.meta
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> Self {
        self.family_tag = tag.into();
        self
    }

    pub fn with_meta(mut self, meta: PrefixMeta) -> Self {
        self.meta = meta;
        self
    }

    pub(crate) fn meta_mut(&mut self) -> &mut PrefixMeta {
        &mut self.meta
    }

    /// Changes the working precision used for derived quantities.
    ///
    /// Log-domain terms keep the precision they were stored with; asking for
    /// more than that does not add information, so it is capped there.
    pub fn with_precision(mut self, bits: u32) -> Result<Self> {
        let bits = check_precision(bits)?;
        self.precision_bits = match self.terms {
            Terms::Exact(_) => bits,
            Terms::Log(_) => bits.min(self.precision_bits),
        };
        Ok(self)
    }

    /// Sequence index `n` of the `i`-th stored term (0-based `i`).
    pub fn index_of(&self, i: usize) -> usize {
        self.meta.first_index + i
    }

    pub fn term(&self, i: usize) -> TermValue {
        match &self.terms {
            Terms::Exact(v) => TermValue::Exact(v[i].clone()),
            Terms::Log(v) => TermValue::LogDomain {
                ln_value: v[i].clone(),
                precision_bits: self.precision_bits,
            },
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = TermValue> + '_ {
        (0..self.len()).map(|i| self.term(i))
    }

    pub fn exact_terms(&self) -> Option<&[Integer]> {
        match &self.terms {
            Terms::Exact(v) => Some(v),
            Terms::Log(_) => None,
        }
    }

    pub fn log_terms(&self) -> Option<&[Float]> {
        match &self.terms {
            Terms::Exact(_) => None,
            Terms::Log(v) => Some(v),
        }
    }

    /// `ln a` of the `i`-th stored term at the working precision.
    pub fn ln_term(&self, i: usize) -> Float {
        match &self.terms {
            Terms::Exact(v) => ln_integer(&v[i], self.precision_bits),
            Terms::Log(v) => v[i].clone(),
        }
    }

    /// All `ln a_n` at working precision.
    pub fn ln_values(&self) -> Vec<Float> {
        match &self.terms {
            Terms::Exact(v) => {
                let prec = self.precision_bits;
                par::map_slice(v, |x| ln_integer(x, prec))
            }
            Terms::Log(v) => v.clone(),
        }
    }

    /// All `ln a_n` rounded to `f64`.
    pub fn ln_values_f64(&self) -> Vec<f64> {
        match &self.terms {
            Terms::Exact(v) => par::map_slice(v, |x| ln_integer(x, 64).to_f64()),
            Terms::Log(v) => v.iter().map(Float::to_f64).collect(),
        }
    }

    /// Converts an exact prefix into its log-domain image at `bits` precision.
    pub fn to_log_domain(&self, bits: u32) -> Result<SequencePrefix> {
        let bits = check_precision(bits)?;
        let lns = match &self.terms {
            Terms::Exact(v) => par::map_slice(v, |x| ln_integer(x, bits)),
            Terms::Log(v) => v.iter().map(|x| Float::with_val(bits, x)).collect(),
        };
        Ok(build_log_prefix(lns, bits)?
            .with_tag(self.family_tag.clone())
            .with_meta(self.meta.clone()))
    }
}

/// Validates an exact prefix. Errors report the index of the offending later
/// term. With `dedup`, equal neighbours collapse instead
/// of failing; terms must still be non-decreasing.
pub fn build_prefix(raw_terms: Vec<Integer>, dedup: bool) -> Result<SequencePrefix> {
    if raw_terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut out: Vec<Integer> = Vec::with_capacity(raw_terms.len());
    let mut collisions = 0;
    for (i, t) in raw_terms.into_iter().enumerate() {
        if t < 1 {
            return Err(Error::NonPositiveTerm { index: i });
        }
        if let Some(last) = out.last() {
            match t.cmp(last) {
                Ordering::Greater => {}
                Ordering::Equal if dedup => {
                    collisions += 1;
                    continue;
                }
                _ => return Err(Error::NotStrictlyIncreasing { index: i }),
            }
        }
        out.push(t);
    }
    let mut p = SequencePrefix::from_exact_unchecked(out, DEFAULT_PRECISION);
    p.meta.collisions = collisions;
    Ok(p)
}

pub fn build_prefix_u64(raw_terms: &[u64], dedup: bool) -> Result<SequencePrefix> {
    build_prefix(raw_terms.iter().map(|&t| Integer::from(t)).collect(), dedup)
}

/// Validates a log-domain prefix of natural logs at `precision_bits`.
pub fn build_log_prefix(ln_terms: Vec<Float>, precision_bits: u32) -> Result<SequencePrefix> {
    let bits = check_precision(precision_bits)?;
    if ln_terms.is_empty() {
        return Err(Error::EmptyInput);
    }
    let floor = separation_floor(bits);
    for (i, t) in ln_terms.iter().enumerate() {
        if t.is_nan() || t.is_infinite() || *t < 0 {
            return Err(Error::NegativeLog { index: i });
        }
        if i > 0 {
            let prev = &ln_terms[i - 1];
            if t < prev {
                return Err(Error::NotStrictlyIncreasing { index: i });
            }
            // Differences are taken at the caller's precision so that inputs
            // finer than `bits` are judged on what they actually carry.
            let diff = Float::with_val(t.prec().max(prev.prec()).max(bits), t - prev);
            if diff <= floor {
                return Err(Error::PrecisionUnderflow { index: i });
            }
        }
    }
    let lns = ln_terms
        .into_iter()
        .map(|t| Float::with_val(bits, t))
        .collect();
    Ok(SequencePrefix {
        terms: Terms::Log(lns),
        precision_bits: bits,
        family_tag: "custom".to_string(),
        meta: PrefixMeta::default(),
    })
}

/// Ratios of one consecutive pair `(a_n, a_{n+1})`.
#[derive(Clone, Debug)]
pub struct GapRatioSample {
    pub index: usize,
    /// `a_n / a_{n+1}`
    pub ratio_prev: Float,
    /// `g_n / a_{n+1}`
    pub gap_over_next: Float,
    /// `g_n / a_n`
    pub gap_over_curr: Float,
}

pub fn gap_ratio_samples(prefix: &SequencePrefix) -> Result<Vec<GapRatioSample>> {
    let n = prefix.len();
    if n < 2 {
        return Err(Error::TooShort { needed: 2, got: n });
    }
    let prec = prefix.precision_bits();
    let first = prefix.meta().first_index;
    let samples = match &prefix.terms {
        Terms::Exact(v) => par::map_range(n - 1, |i| {
            let (a, b) = (&v[i], &v[i + 1]);
            let gap = Integer::from(b - a);
            GapRatioSample {
                index: first + i,
                ratio_prev: Float::with_val(prec, &Rational::from((a, b))),
                gap_over_next: Float::with_val(prec, &Rational::from((&gap, b))),
                gap_over_curr: Float::with_val(prec, &Rational::from((&gap, a))),
            }
        }),
        Terms::Log(v) => par::map_range(n - 1, |i| {
            let delta = Float::with_val(prec, &v[i + 1] - &v[i]);
            let neg = Float::with_val(prec, -&delta);
            GapRatioSample {
                index: first + i,
                ratio_prev: neg.clone().exp(),
                gap_over_next: -neg.exp_m1(),
                gap_over_curr: delta.exp_m1(),
            }
        }),
    };
    Ok(samples)
}
