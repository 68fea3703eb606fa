//! Finite-prefix surrogates for limsup and liminf.
//!
//! The estimate is the extremum over the last `tail_fraction` of the
//! samples. Extrema over complete dyadic index blocks `[2^k, 2^(k+1))` feed a
//! heuristic diagnostic.

use std::fmt;

use rug::Float;

use super::functional::FunctionalStream;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailMode {
    LimSup,
    LimInf,
}

impl TailMode {
    pub fn name(self) -> &'static str {
        match self {
            TailMode::LimSup => "limsup",
            TailMode::LimInf => "liminf",
        }
    }

    fn better(self, candidate: &Float, current: &Float) -> bool {
        match self {
            TailMode::LimSup => candidate > current,
            TailMode::LimInf => candidate < current,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagnostic {
    Converging,
    Oscillating,
    Diverging,
    Inconclusive,
}

impl Diagnostic {
    pub fn name(self) -> &'static str {
        match self {
            Diagnostic::Converging => "converging",
            Diagnostic::Oscillating => "oscillating",
            Diagnostic::Diverging => "diverging",
            Diagnostic::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindowPolicy {
    pub tail_fraction: f64,
    /// Absolute spread allowed among the last three block extrema.
    pub spread_tol: f64,
}

impl Default for WindowPolicy {
    fn default() -> Self {
        WindowPolicy {
            tail_fraction: 0.5,
            spread_tol: 0.05,
        }
    }
}

impl WindowPolicy {
    pub fn validate(&self) -> Result<()> {
        if !(self.tail_fraction > 0.0 && self.tail_fraction < 1.0) {
            return Err(Error::param("tail fraction must lie in (0,1)"));
        }
        if !(self.spread_tol.is_finite() && self.spread_tol >= 0.0) {
            return Err(Error::param("spread tolerance must be non-negative"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct EstimateTrace {
    pub mode: TailMode,
    /// `(block_end_n, extremum)` per complete dyadic block; `block_end_n` is
    /// the last index of the block.
    pub block_extrema: Vec<(usize, Float)>,
    pub tail_estimate: Float,
    /// Index at which the tail extremum is attained.
    pub tail_argument: usize,
    /// Extremum over every sample.
    pub global_extremum: Float,
    pub diagnostic: Diagnostic,
    pub tail_fraction: f64,
    pub samples: usize,
}

impl EstimateTrace {
    pub fn value(&self) -> f64 {
        self.tail_estimate.to_f64()
    }

    pub fn is_diverging(&self) -> bool {
        self.diagnostic == Diagnostic::Diverging
    }

    /// The estimate with a diverging diagnostic read as `+inf`.
    pub fn effective(&self) -> f64 {
        if self.is_diverging() {
            f64::INFINITY
        } else {
            self.value()
        }
    }
}

fn extremum<'a>(mode: TailMode, it: impl Iterator<Item = &'a (usize, Float)>) -> Option<&'a (usize, Float)> {
    let mut best: Option<&(usize, Float)> = None;
    for s in it {
        if best.is_none_or(|b| mode.better(&s.1, &b.1)) {
            best = Some(s);
        }
    }
    best
}

/// Extrema over the dyadic blocks fully covered by the sample indices.
pub fn dyadic_block_extrema(mode: TailMode, samples: &[(usize, Float)]) -> Vec<(usize, Float)> {
    let (Some(first), Some(last)) = (samples.first(), samples.last()) else {
        return Vec::new();
    };
    let (lo, hi) = (first.0, last.0);
    let mut out = Vec::new();
    let mut pos = 0;
    for k in 0..usize::BITS - 1 {
        let start = 1usize << k;
        let end = (start << 1) - 1;
        if end > hi {
            break;
        }
        while pos < samples.len() && samples[pos].0 < start {
            pos += 1;
        }
        let block_len = samples[pos..].iter().take_while(|s| s.0 <= end).count();
        if start < lo || block_len == 0 {
            pos += block_len;
            continue;
        }
        if let Some(best) = extremum(mode, samples[pos..pos + block_len].iter()) {
            out.push((end, best.1.clone()));
        }
        pos += block_len;
    }
    out
}

fn classify(blocks: &[(usize, Float)], tol: f64) -> Diagnostic {
    if blocks.len() < 3 {
        return Diagnostic::Inconclusive;
    }
    let last: Vec<f64> = blocks[blocks.len() - 3..].iter().map(|b| b.1.to_f64()).collect();
    let (d1, d2) = (last[1] - last[0], last[2] - last[1]);
    let spread = last.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - last.iter().cloned().fold(f64::INFINITY, f64::min);
    if d1 > tol && d2 > tol {
        Diagnostic::Diverging
    } else if spread <= tol {
        Diagnostic::Converging
    } else if d1 * d2 < 0.0 && d1.abs() > tol && d2.abs() > tol {
        Diagnostic::Oscillating
    } else {
        Diagnostic::Inconclusive
    }
}

pub fn tail_estimate(stream: &FunctionalStream, mode: TailMode, policy: &WindowPolicy) -> Result<EstimateTrace> {
    policy.validate()?;
    let s = &stream.samples;
    if s.is_empty() {
        return Err(Error::EmptyStream);
    }
    let tail_len = ((policy.tail_fraction * s.len() as f64).ceil() as usize).clamp(1, s.len());
    let (arg, est) = extremum(mode, s[s.len() - tail_len..].iter()).cloned().expect("non-empty");
    let global = extremum(mode, s.iter()).expect("non-empty").1.clone();
    let blocks = dyadic_block_extrema(mode, s);
    let diagnostic = classify(&blocks, policy.spread_tol);
    Ok(EstimateTrace {
        mode,
        block_extrema: blocks,
        tail_estimate: est,
        tail_argument: arg,
        global_extremum: global,
        diagnostic,
        tail_fraction: policy.tail_fraction,
        samples: s.len(),
    })
}

pub fn tail_limsup(stream: &FunctionalStream, policy: &WindowPolicy) -> Result<EstimateTrace> {
    tail_estimate(stream, TailMode::LimSup, policy)
}

pub fn tail_liminf(stream: &FunctionalStream, policy: &WindowPolicy) -> Result<EstimateTrace> {
    tail_estimate(stream, TailMode::LimInf, policy)
}

#[cfg(test)]
mod tests {
    use super::super::functional::{functional_stream, FunctionalKind};
    use super::*;
    use crate::generators::gen_power;
    use crate::sequence::build_prefix_u64;

    fn stream(values: impl IntoIterator<Item = (usize, f64)>) -> FunctionalStream {
        FunctionalStream::from_f64(FunctionalKind::Eps, values)
    }

    #[test]
    fn constant_stream_converges() {
        let s = stream((1..=1000).map(|n| (n, 0.3)));
        let t = tail_limsup(&s, &WindowPolicy::default()).unwrap();
        assert_eq!(t.value(), 0.3);
        assert_eq!(t.diagnostic, Diagnostic::Converging);
        // blocks [1,1], [2,3], ..., [256,511]
        assert_eq!(t.block_extrema.len(), 9);
    }

    #[test]
    fn beta_on_powers_of_two_diverges() {
        let p = build_prefix_u64(&(1..=60).map(|k| 1u64 << k).collect::<Vec<_>>(), false).unwrap();
        let s = functional_stream(&p, FunctionalKind::BetaStat).unwrap();
        let t = tail_limsup(&s, &WindowPolicy::default()).unwrap();
        assert_eq!(t.diagnostic, Diagnostic::Diverging);
        // the last sample pairs a_59 with a_60, so its index is N - 1
        assert_eq!(t.value(), 59.0);
        assert_eq!(t.tail_argument, 59);
    }

    #[test]
    fn eps_on_squares_converges_to_half() {
        let p = gen_power(0.5, 10_000).unwrap();
        let s = functional_stream(&p, FunctionalKind::Eps).unwrap();
        let t = tail_limsup(&s, &WindowPolicy::default()).unwrap();
        assert!((t.value() - 0.5).abs() < 1e-12);
        assert_eq!(t.diagnostic, Diagnostic::Converging);
    }

    #[test]
    fn tail_window_is_last_fraction() {
        // a spike early on stays out of the tail but not the global extremum
        let s = stream((1..=100).map(|n| (n, if n == 10 { 5.0 } else { 1.0 / n as f64 })));
        let t = tail_limsup(&s, &WindowPolicy::default()).unwrap();
        assert_eq!(t.tail_argument, 51);
        assert_eq!(t.global_extremum.to_f64(), 5.0);
        assert!(t.tail_estimate <= t.global_extremum);
    }

    #[test]
    fn oscillation_is_flagged() {
        let s = stream((1..=64usize).map(|n| {
            let k = usize::BITS - 1 - n.leading_zeros();
            (n, if k % 2 == 0 { 1.0 } else { 2.0 })
        }));
        let t = tail_limsup(&s, &WindowPolicy::default()).unwrap();
        assert_eq!(t.diagnostic, Diagnostic::Oscillating);
    }

    #[test]
    fn too_few_blocks_is_inconclusive() {
        let s = stream((1..=5).map(|n| (n, n as f64)));
        let t = tail_liminf(&s, &WindowPolicy::default()).unwrap();
        assert_eq!(t.diagnostic, Diagnostic::Inconclusive);
        assert_eq!(t.value(), 3.0);
    }

    #[test]
    fn partial_leading_block_is_skipped() {
        let s = stream((3..=40).map(|n| (n, 1.0)));
        let b = dyadic_block_extrema(TailMode::LimSup, &s.samples);
        let ends: Vec<usize> = b.iter().map(|x| x.0).collect();
        assert_eq!(ends, vec![7, 15, 31]);
    }

    #[test]
    fn empty_stream_errors() {
        let s = stream(std::iter::empty());
        assert!(matches!(
            tail_limsup(&s, &WindowPolicy::default()),
            Err(Error::EmptyStream)
        ));
        let bad = WindowPolicy {
            tail_fraction: 1.0,
            ..WindowPolicy::default()
        };
        assert!(tail_limsup(&stream([(1, 1.0)]), &bad).is_err());
    }
}
