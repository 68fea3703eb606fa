//! Convergence probe for `sum a_n^(-sigma)` and bisection on `sigma`.
//!
//! Terms are accumulated in log space, one dyadic index block at a time: the
//! block is summed relative to its largest term with compensated summation
//! and folded into the running total with log-add-exp, so terms that would
//! underflow a double are never formed.

use std::fmt;

use crate::error::{Error, Result};
use crate::estimators::{density_profile, ProfileConfig};
use crate::generators::FamilySpec;
use crate::par;
use crate::sequence::SequencePrefix;

pub const MIN_SERIES_LEN: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Converging,
    Diverging,
    Inconclusive,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Converging => "converging",
            Verdict::Diverging => "diverging",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the last block's share of the running total is judged.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum VerdictRule {
    /// Fixed thresholds on the block share.
    Absolute { converge_below: f64, diverge_above: f64 },
    /// Thresholds relative to the share the harmonic series has over the
    /// same index block: `sum 1/n` sits exactly on the boundary.
    HarmonicReference { converge_factor: f64, diverge_factor: f64 },
}

impl Default for VerdictRule {
    fn default() -> Self {
        VerdictRule::HarmonicReference {
            converge_factor: 0.5,
            diverge_factor: 1.0 - 1e-6,
        }
    }
}

impl VerdictRule {
    pub fn absolute() -> Self {
        VerdictRule::Absolute {
            converge_below: 1e-3,
            diverge_above: 1e-1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            VerdictRule::Absolute {
                converge_below,
                diverge_above,
            } => converge_below > 0.0 && converge_below <= diverge_above && diverge_above < 1.0,
            VerdictRule::HarmonicReference {
                converge_factor,
                diverge_factor,
            } => converge_factor > 0.0 && converge_factor <= diverge_factor,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::param("verdict thresholds must satisfy 0 < converge <= diverge"))
        }
    }

    fn judge(&self, ratio: f64, reference: f64) -> Verdict {
        let (lo, hi) = match *self {
            VerdictRule::Absolute {
                converge_below,
                diverge_above,
            } => (converge_below, diverge_above),
            VerdictRule::HarmonicReference {
                converge_factor,
                diverge_factor,
            } => (converge_factor * reference, diverge_factor * reference),
        };
        if ratio < lo {
            Verdict::Converging
        } else if ratio >= hi {
            Verdict::Diverging
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Debug)]
pub struct SumTrace {
    pub sigma: f64,
    /// `(n, ln S_n)` at each dyadic block end and at the last index.
    pub partial_sums_log: Vec<(usize, f64)>,
    pub verdict: Verdict,
    /// Share of the running total contributed by the last complete block.
    pub tail_increment_ratio: f64,
    /// The harmonic series' share over the same block.
    pub reference_ratio: f64,
    pub rule: VerdictRule,
}

impl SumTrace {
    pub fn log_total(&self) -> f64 {
        self.partial_sums_log.last().map_or(f64::NEG_INFINITY, |p| p.1)
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln sum exp(x_i)` with the block maximum factored out and Neumaier
/// summation of the scaled terms.
pub fn log_sum_exp(xs: &[f64]) -> f64 {
    let m = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if m == f64::NEG_INFINITY {
        return m;
    }
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &x in xs {
        let t = (x - m).exp();
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    m + (sum + comp).ln()
}

/// Dyadic blocks `[2^k, 2^(k+1))` of the index range, as `(start, end, complete)`
/// offsets into a prefix whose first index is `first`.
fn dyadic_blocks(first: usize, len: usize) -> Vec<(usize, usize, bool)> {
    let last = first + len - 1;
    let mut out = Vec::new();
    let mut n = first;
    while n <= last {
        let k = usize::BITS - 1 - n.leading_zeros();
        let block_end = (1usize << (k + 1)) - 1;
        let end = block_end.min(last);
        out.push((n - first, end - first, end == block_end && n == 1usize << k));
        n = end + 1;
    }
    out
}

fn harmonic_share(start: usize, end: usize) -> f64 {
    let block: f64 = (start..=end).rev().map(|k| 1.0 / k as f64).sum();
    let total: f64 = (1..=end).rev().map(|k| 1.0 / k as f64).sum();
    block / total
}

/// Probe on `ln a_n` values given directly; `first` is the index of the
/// first value.
pub fn partial_sums_ln(ln_terms: &[f64], first: usize, sigma: f64, rule: VerdictRule) -> Result<SumTrace> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidSigma(sigma));
    }
    rule.validate()?;
    let len = ln_terms.len();
    if len < MIN_SERIES_LEN {
        return Err(Error::TooShort {
            needed: MIN_SERIES_LEN,
            got: len,
        });
    }
    let blocks = dyadic_blocks(first, len);
    let block_logs = par::map_slice(&blocks, |&(s, e, _)| {
        let xs: Vec<f64> = ln_terms[s..=e].iter().map(|l| -sigma * l).collect();
        log_sum_exp(&xs)
    });
    let mut total = f64::NEG_INFINITY;
    let mut trace = Vec::with_capacity(blocks.len());
    let mut last_complete: Option<(usize, usize, f64, f64)> = None;
    for (&(s, e, complete), &b) in blocks.iter().zip(&block_logs) {
        total = log_add_exp(total, b).max(total);
        trace.push((first + e, total));
        if complete {
            last_complete = Some((first + s, first + e, b, total));
        }
    }
    let (ratio, reference) = match last_complete {
        Some((s, e, b, t)) => ((b - t).exp(), harmonic_share(s, e)),
        None => (f64::NAN, f64::NAN),
    };
    let verdict = if ratio.is_nan() {
        Verdict::Inconclusive
    } else {
        rule.judge(ratio, reference)
    };
    Ok(SumTrace {
        sigma,
        partial_sums_log: trace,
        verdict,
        tail_increment_ratio: ratio,
        reference_ratio: reference,
        rule,
    })
}

pub fn partial_sums(prefix: &SequencePrefix, sigma: f64, rule: VerdictRule) -> Result<SumTrace> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidSigma(sigma));
    }
    partial_sums_ln(&prefix.ln_values_f64(), prefix.meta().first_index, sigma, rule)
}

#[derive(Clone, Debug)]
pub struct TauBracket {
    pub lo: f64,
    pub hi: f64,
    pub lo_verdict: Verdict,
    pub hi_verdict: Verdict,
    /// Every evaluated `(sigma, verdict, block share)`, sorted by `sigma`.
    pub evaluations: Vec<(f64, Verdict, f64)>,
    /// Upper density estimate of the same prefix, if computed.
    pub eps_upper: Option<f64>,
}

impl TauBracket {
    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    /// True when either end could not be pinned to a definite verdict.
    pub fn widened(&self) -> bool {
        self.lo_verdict != Verdict::Diverging || self.hi_verdict != Verdict::Converging
    }

    /// `|midpoint - eps| <= width + slack`
    pub fn consistent_with_eps(&self, slack: f64) -> Option<bool> {
        self.eps_upper
            .map(|e| (self.midpoint() - e).abs() <= self.width() + slack)
    }
}

/// Bisection on `sigma` over `ln a_n` values.
///
/// The bracket ends are the largest diverging and smallest converging
/// `sigma` seen. Inconclusive midpoints are kept and both sides around them
/// are refined further, so the bracket never ends on an inconclusive point
/// unless an endpoint itself was one.
pub fn bracket_tau_ln(
    ln_terms: &[f64],
    first: usize,
    sigma_lo: f64,
    sigma_hi: f64,
    steps: usize,
    rule: VerdictRule,
) -> Result<TauBracket> {
    if !(sigma_lo > 0.0 && sigma_lo < sigma_hi && sigma_hi.is_finite()) {
        return Err(Error::param("need 0 < sigma_lo < sigma_hi"));
    }
    if steps < 4 {
        return Err(Error::param("steps must be at least 4"));
    }
    let eval = |s: f64| -> Result<(f64, Verdict, f64)> {
        let t = partial_sums_ln(ln_terms, first, s, rule)?;
        Ok((s, t.verdict, t.tail_increment_ratio))
    };
    let (a, b) = par::join(|| eval(sigma_lo), || eval(sigma_hi));
    let mut evals = vec![a?, b?];
    if evals[0].1 == evals[1].1 {
        return Err(Error::NoBracket(match evals[0].1 {
            Verdict::Converging => "series converges at both ends",
            Verdict::Diverging => "series diverges at both ends",
            Verdict::Inconclusive => "inconclusive at both ends",
        }));
    }

    // indices into the sorted evaluation list of the bracket ends
    let ends = |ev: &[(f64, Verdict, f64)]| {
        let d = ev.iter().rposition(|e| e.1 == Verdict::Diverging);
        let c = ev.iter().position(|e| e.1 == Verdict::Converging);
        let lo = d.unwrap_or(0);
        let hi = c.unwrap_or(ev.len() - 1);
        (lo, hi.max(lo))
    };
    for _ in 0..steps {
        let (lo, hi) = ends(&evals);
        if hi <= lo {
            break;
        }
        // gaps next to each end
        let mut mids = Vec::new();
        let left_gap = (evals[lo].0, evals[lo + 1].0);
        mids.push(0.5 * (left_gap.0 + left_gap.1));
        if hi - 1 > lo {
            let right_gap = (evals[hi - 1].0, evals[hi].0);
            mids.push(0.5 * (right_gap.0 + right_gap.1));
        }
        let new = par::map_slice(&mids, |&s| eval(s));
        for r in new {
            evals.push(r?);
        }
        evals.sort_by(|x, y| x.0.total_cmp(&y.0));
        evals.dedup_by(|x, y| x.0 == y.0);
    }
    let (lo, hi) = ends(&evals);
    Ok(TauBracket {
        lo: evals[lo].0,
        hi: evals[hi].0,
        lo_verdict: evals[lo].1,
        hi_verdict: evals[hi].1,
        evaluations: evals,
        eps_upper: None,
    })
}

pub fn bracket_tau_prefix(
    prefix: &SequencePrefix,
    sigma_lo: f64,
    sigma_hi: f64,
    steps: usize,
    rule: VerdictRule,
) -> Result<TauBracket> {
    bracket_tau_ln(
        &prefix.ln_values_f64(),
        prefix.meta().first_index,
        sigma_lo,
        sigma_hi,
        steps,
        rule,
    )
}

/// Generates `family` at length `n`, brackets the exponent and attaches the
/// upper density estimate for comparison.
pub fn bracket_tau(
    family: &FamilySpec,
    sigma_lo: f64,
    sigma_hi: f64,
    steps: usize,
    n: usize,
    rule: VerdictRule,
) -> Result<TauBracket> {
    let prefix = family.clone().with_length(n).generate_prefix()?;
    let (bracket, profile) = par::join(
        || bracket_tau_prefix(&prefix, sigma_lo, sigma_hi, steps, rule),
        || density_profile(&prefix, &ProfileConfig::default()),
    );
    let mut bracket = bracket?;
    bracket.eps_upper = Some(profile?.eps_hat());
    Ok(bracket)
}
