use std::fmt;

use rug::float::Constant;
use rug::{Float, Integer};

use crate::error::{Error, Result};
use crate::par;
use crate::sequence::{gap_ratio_samples, GapRatioSample, SequencePrefix};

/// Harmonic sums up to this argument are summed term by term.
pub const HARMONIC_EXACT_LIMIT: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FunctionalKind {
    /// `ln n / ln a_n`
    Eps,
    /// `a_n / a_{n+1}`
    Rho,
    /// `n g_n / a_{n+1}`
    AlphaStat,
    /// `n g_n / a_n`
    BetaStat,
    /// `H(n) / H(a_n)` with `H` the harmonic partial sum
    Harmonic,
    /// `g_n / a_n`
    GapOverCurr,
    /// `g_n / a_{n+1}`
    GapOverNext,
}

impl FunctionalKind {
    pub const ALL: [FunctionalKind; 7] = [
        FunctionalKind::Eps,
        FunctionalKind::Rho,
        FunctionalKind::AlphaStat,
        FunctionalKind::BetaStat,
        FunctionalKind::Harmonic,
        FunctionalKind::GapOverCurr,
        FunctionalKind::GapOverNext,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FunctionalKind::Eps => "EPS",
            FunctionalKind::Rho => "RHO",
            FunctionalKind::AlphaStat => "ALPHA_STAT",
            FunctionalKind::BetaStat => "BETA_STAT",
            FunctionalKind::Harmonic => "HARMONIC",
            FunctionalKind::GapOverCurr => "GAP_OVER_CURR",
            FunctionalKind::GapOverNext => "GAP_OVER_NEXT",
        }
    }

    fn min_len(self) -> usize {
        match self {
            FunctionalKind::Eps | FunctionalKind::Harmonic => 3,
            _ => 2,
        }
    }

    fn uses_gaps(self) -> bool {
        !matches!(self, FunctionalKind::Eps | FunctionalKind::Harmonic)
    }
}

impl fmt::Display for FunctionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct FunctionalStream {
    pub kind: FunctionalKind,
    /// `(n, value)` in increasing `n`.
    pub samples: Vec<(usize, Float)>,
}

impl FunctionalStream {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn values_f64(&self) -> Vec<f64> {
        self.samples.iter().map(|(_, v)| v.to_f64()).collect()
    }

    pub fn from_f64(kind: FunctionalKind, samples: impl IntoIterator<Item = (usize, f64)>) -> Self {
        FunctionalStream {
            kind,
            samples: samples
                .into_iter()
                .map(|(n, v)| (n, Float::with_val(64, v)))
                .collect(),
        }
    }
}

/// Shared per-prefix quantities, computed once and reused by every kind.
pub(crate) struct StreamInputs<'a> {
    prefix: &'a SequencePrefix,
    ln_terms: Option<Vec<Float>>,
    gaps: Option<Vec<GapRatioSample>>,
}

impl<'a> StreamInputs<'a> {
    pub(crate) fn new(prefix: &'a SequencePrefix) -> Self {
        StreamInputs {
            prefix,
            ln_terms: None,
            gaps: None,
        }
    }

    fn ln_terms(&mut self) -> &[Float] {
        let prefix = self.prefix;
        self.ln_terms.get_or_insert_with(|| prefix.ln_values())
    }

    fn gaps(&mut self) -> Result<&[GapRatioSample]> {
        if self.gaps.is_none() {
            self.gaps = Some(gap_ratio_samples(self.prefix)?);
        }
        Ok(self.gaps.as_deref().unwrap_or_default())
    }

    pub(crate) fn stream(&mut self, kind: FunctionalKind) -> Result<FunctionalStream> {
        let len = self.prefix.len();
        if len < kind.min_len() {
            return Err(Error::TooShort {
                needed: kind.min_len(),
                got: len,
            });
        }
        let prec = self.prefix.precision_bits();
        let samples = if kind.uses_gaps() {
            let gaps = self.gaps()?;
            par::map_slice(gaps, |g| {
                let n = g.index as u64;
                let v = match kind {
                    FunctionalKind::Rho => g.ratio_prev.clone(),
                    FunctionalKind::AlphaStat => Float::with_val(prec, &g.gap_over_next * n),
                    FunctionalKind::BetaStat => Float::with_val(prec, &g.gap_over_curr * n),
                    FunctionalKind::GapOverCurr => g.gap_over_curr.clone(),
                    FunctionalKind::GapOverNext => g.gap_over_next.clone(),
                    FunctionalKind::Eps | FunctionalKind::Harmonic => unreachable!(),
                };
                (g.index, v)
            })
        } else if kind == FunctionalKind::Eps {
            let first = self.prefix.meta().first_index;
            let lns = self.ln_terms();
            let start = usize::from(first == 1);
            par::map_range(len - start, |j| {
                let i = j + start;
                let n = first + i;
                let ln_n = Float::with_val(prec, n).ln();
                (n, ln_n / &lns[i])
            })
        } else {
            harmonic_samples(self.prefix)
        };
        Ok(FunctionalStream { kind, samples })
    }
}

/// One sample per eligible index of the chosen functional.
pub fn functional_stream(prefix: &SequencePrefix, kind: FunctionalKind) -> Result<FunctionalStream> {
    StreamInputs::new(prefix).stream(kind)
}

/// `ln x + gamma + 1/(2x)` given `ln x`.
pub fn harmonic_asymptotic(ln_x: &Float, prec: u32) -> Float {
    let gamma = Float::with_val(prec, Constant::Euler);
    let inv_half = Float::with_val(prec, -ln_x).exp() / 2u32;
    Float::with_val(prec, ln_x + &gamma) + inv_half
}

/// Harmonic sums at ascending integer arguments.
fn harmonic_at_sorted(args: &[Integer], prec: u32) -> Vec<Float> {
    let mut out = Vec::with_capacity(args.len());
    let mut acc = Float::with_val(prec, 0);
    let mut k = 0u64;
    for x in args {
        match x.to_u64().filter(|&v| v <= HARMONIC_EXACT_LIMIT) {
            Some(x) => {
                while k < x {
                    k += 1;
                    acc += Float::with_val(prec, k).recip();
                }
                out.push(acc.clone());
            }
            None => {
                let ln_x = Float::with_val(prec, x).ln();
                out.push(harmonic_asymptotic(&ln_x, prec));
            }
        }
    }
    out
}

fn harmonic_samples(prefix: &SequencePrefix) -> Vec<(usize, Float)> {
    let prec = prefix.precision_bits();
    let first = prefix.meta().first_index;
    let len = prefix.len();
    let idx: Vec<Integer> = (0..len).map(|i| Integer::from(first + i)).collect();
    let (h_n, h_a) = par::join(
        || harmonic_at_sorted(&idx, prec),
        || match prefix.exact_terms() {
            Some(terms) => harmonic_at_sorted(terms, prec),
            // log-domain terms carry no exact value, so the asymptotic form
            // is used throughout
            None => par::map_slice(prefix.log_terms().unwrap_or_default(), |l| {
                harmonic_asymptotic(l, prec)
            }),
        },
    );
    h_n.into_iter()
        .zip(h_a)
        .enumerate()
        .map(|(i, (num, den))| (first + i, num / den))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_arithmetic, gen_double_exp_union, gen_power};
    use crate::sequence::build_prefix_u64;

    #[test]
    fn eps_on_squares_is_half() {
        let p = gen_power(0.5, 200).unwrap();
        let s = functional_stream(&p, FunctionalKind::Eps).unwrap();
        assert_eq!(s.samples[0].0, 2);
        assert_eq!(s.len(), 199);
        for (_, v) in &s.samples {
            assert!((v.to_f64() - 0.5).abs() < 1e-30);
        }
    }

    #[test]
    fn rho_on_powers_of_two_is_half() {
        let p = build_prefix_u64(&(1..=40).map(|k| 1u64 << k).collect::<Vec<_>>(), false).unwrap();
        let s = functional_stream(&p, FunctionalKind::Rho).unwrap();
        assert!(s.samples.iter().all(|(_, v)| *v == 0.5));
    }

    #[test]
    fn alpha_on_powers_of_two_is_half_index() {
        let p = build_prefix_u64(&(1..=60).map(|k| 1u64 << k).collect::<Vec<_>>(), false).unwrap();
        let s = functional_stream(&p, FunctionalKind::AlphaStat).unwrap();
        for (n, v) in &s.samples {
            assert_eq!(*v, Float::with_val(128, *n) / 2u32);
        }
    }

    #[test]
    fn beta_on_arithmetic_at_1000() {
        let p = gen_arithmetic(3, 5, 1001).unwrap();
        let s = functional_stream(&p, FunctionalKind::BetaStat).unwrap();
        let (n, v) = &s.samples[999];
        assert_eq!(*n, 1000);
        // 1000 * 5 / 5003
        assert!((v.to_f64() - 5000.0 / 5003.0).abs() < 1e-15);
    }

    #[test]
    fn alpha_at_union_entry() {
        let p = gen_double_exp_union(12).unwrap();
        let s = functional_stream(&p, FunctionalKind::AlphaStat).unwrap();
        let (n, v) = &s.samples[9];
        assert_eq!(*n, 10);
        assert!((v.to_f64() - 10.0 / 257.0).abs() < 1e-15);
        assert!((v.to_f64() - 0.03891).abs() < 1e-5);
    }

    #[test]
    fn harmonic_exact_sums_match_rational_oracle() {
        let mut h = rug::Rational::new();
        let mut want = Vec::new();
        for k in 1..=50u32 {
            h += rug::Rational::from((1, k));
            want.push(h.clone());
        }
        let args: Vec<Integer> = [1u32, 7, 7, 50].iter().map(|&x| Integer::from(x)).collect();
        let got = harmonic_at_sorted(&args, 128);
        for (x, g) in [1usize, 7, 7, 50].iter().zip(&got) {
            let w = Float::with_val(128, &want[x - 1]);
            assert!(Float::with_val(128, g - &w).abs() < 1e-35);
        }
    }

    #[test]
    fn harmonic_asymptotic_is_accurate_past_switchover() {
        // the next correction is -1/(12 x^2)
        let x = HARMONIC_EXACT_LIMIT;
        let args = [Integer::from(x)];
        let exact = &harmonic_at_sorted(&args, 128)[0];
        let asym = harmonic_asymptotic(&Float::with_val(128, x).ln(), 128);
        let err = Float::with_val(128, exact - &asym).abs().to_f64();
        assert!(err < 1e-13, "err {err}");
    }

    #[test]
    fn short_prefixes_rejected() {
        let p = build_prefix_u64(&[1, 2], false).unwrap();
        assert!(functional_stream(&p, FunctionalKind::Eps).is_err());
        assert!(functional_stream(&p, FunctionalKind::Rho).is_ok());
    }
}
