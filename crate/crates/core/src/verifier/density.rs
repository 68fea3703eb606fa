use std::fmt;

use super::report::{CheckReport, CheckStatus, Witness};
use crate::error::Result;
use crate::estimators::{density_profile, reciprocal, DensityProfile, EstimateTrace, ProfileConfig};
use crate::sequence::SequencePrefix;

pub const DEFAULT_TOL: f64 = 0.05;

/// `1/beta - tol <= eps_lower <= eps_upper`, `eps_upper + tol <= 1/alpha + 2 tol`.
pub fn check_sandwich(profile: &DensityProfile, tol: f64) -> CheckReport {
    let mut r = CheckReport::new("sandwich", &profile.family_tag, tol);
    let alpha = &profile.alpha_stat_liminf;
    let beta = &profile.beta_stat_limsup;
    let inv_beta = reciprocal(beta.effective());
    let inv_alpha = reciprocal(alpha.effective());
    let eps_lo = profile.eps_lower.value();
    let eps_hi = profile.eps_upper.value();
    r.measure("inv_beta", inv_beta);
    r.measure("eps_lower", eps_lo);
    r.measure("eps_upper", eps_hi);
    r.measure("inv_alpha", inv_alpha);
    let mut heuristic = false;

    if beta.is_diverging() {
        heuristic = true;
        r.note("beta diverges: lower bound taken as 0");
    }
    if inv_beta - tol > eps_lo {
        r.fail(Witness::new(
            profile.eps_lower.tail_argument,
            &[("inv_beta", inv_beta), ("eps_lower", eps_lo)],
        ));
    }
    if eps_lo > eps_hi {
        r.fail(Witness::new(
            profile.eps_upper.tail_argument,
            &[("eps_lower", eps_lo), ("eps_upper", eps_hi)],
        ));
    }
    if eps_hi + tol > inv_alpha + 2.0 * tol {
        if alpha.is_diverging() && eps_trend_down(&profile.eps_upper) {
            // 1/alpha = 0 is a limit statement; accept a falling EPS envelope
            heuristic = true;
            r.note("alpha diverges and EPS block maxima decrease");
        } else {
            r.fail(Witness::new(
                profile.eps_upper.tail_argument,
                &[("eps_upper", eps_hi), ("inv_alpha", inv_alpha)],
            ));
        }
    } else if alpha.is_diverging() {
        heuristic = true;
        r.note("alpha diverges: upper bound taken as 0");
    }
    if r.status != CheckStatus::Fail && heuristic {
        r.status = CheckStatus::HeuristicPass;
    }
    r
}

fn eps_trend_down(t: &EstimateTrace) -> bool {
    let b = &t.block_extrema;
    b.len() >= 3 && b[b.len() - 3..].windows(2).all(|w| w[1].1 < w[0].1)
}

/// The bound above which `eps_upper` fails the zero-density check.
pub fn tau_zero_threshold(length: usize) -> f64 {
    if length >= 1_000_000 {
        0.05
    } else {
        0.1
    }
}

/// `rho_upper < 1` forces zero density.
pub fn check_rho_profile(profile: &DensityProfile, tol: f64) -> CheckReport {
    let mut r = CheckReport::new("rho-tau-zero", &profile.family_tag, tol);
    let rho = profile.rho_upper.value();
    let eps = profile.eps_hat();
    let threshold = tau_zero_threshold(profile.length);
    r.measure("rho_upper", rho);
    r.measure("eps_upper", eps);
    r.measure("threshold", threshold);
    if rho >= 1.0 - tol {
        r.status = CheckStatus::Vacuous;
        r.note("rho_upper is not below 1");
    } else if eps > threshold {
        r.fail(Witness::new(
            profile.eps_upper.tail_argument,
            &[("eps_upper", eps), ("threshold", threshold)],
        ));
    }
    r
}

pub fn check_rho_implies_tau_zero(prefix: &SequencePrefix, tol: f64) -> Result<CheckReport> {
    let profile = density_profile(prefix, &ProfileConfig::default())?;
    Ok(check_rho_profile(&profile, tol))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityRule {
    /// `liminf n g_n/a_{n+1} >= alpha >= 1` gives `eps_upper <= 1/alpha`.
    UpperFromAlphaFloor,
    /// `liminf n g_n/a_n >= alpha >= 1` gives `eps_upper <= 1/alpha`.
    UpperFromBetaFloor,
    /// `limsup n g_n/a_n <= beta` gives `eps_lower >= 1/beta`.
    LowerFromBetaCeiling,
    /// `limsup n g_n/a_{n+1} <= beta` gives `eps_lower >= 1/beta`.
    LowerFromAlphaCeiling,
    /// `rho_upper < 1` gives zero density.
    AlmostThin,
    /// `liminf g_n/a_n > 0` gives zero density.
    ProportionalGaps,
    /// `liminf g_n/a_{n+1} > 0` gives zero density.
    ProportionalGapsNext,
}

impl DensityRule {
    pub fn name(self) -> &'static str {
        match self {
            DensityRule::UpperFromAlphaFloor => "upper-from-alpha-floor",
            DensityRule::UpperFromBetaFloor => "upper-from-beta-floor",
            DensityRule::LowerFromBetaCeiling => "lower-from-beta-ceiling",
            DensityRule::LowerFromAlphaCeiling => "lower-from-alpha-ceiling",
            DensityRule::AlmostThin => "almost-thin",
            DensityRule::ProportionalGaps => "proportional-gaps",
            DensityRule::ProportionalGapsNext => "proportional-gaps-next",
        }
    }
}

impl fmt::Display for DensityRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AppliedRule {
    pub rule: DensityRule,
    /// Statistic the rule read.
    pub statistic: f64,
    /// Resulting bound on the density.
    pub bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImpliedInterval {
    pub lo: f64,
    pub hi: f64,
    pub trace: Vec<AppliedRule>,
}

/// Density bounds implied by the gap envelopes of `profile`.
///
/// A hypothesis on the envelope sequences is accepted when the matching tail
/// statistic meets it within `tol`.
pub fn implied_density_interval(profile: &DensityProfile, tol: f64) -> ImpliedInterval {
    let mut lo: f64 = 0.0;
    let mut hi: f64 = 1.0;
    let mut trace = Vec::new();
    let upper = |rule, stat: f64, bound: f64, hi: &mut f64, trace: &mut Vec<AppliedRule>| {
        trace.push(AppliedRule {
            rule,
            statistic: stat,
            bound,
        });
        *hi = hi.min(bound);
    };

    for (rule, t) in [
        (DensityRule::UpperFromAlphaFloor, &profile.alpha_stat_liminf),
        (DensityRule::UpperFromBetaFloor, &profile.beta_stat_liminf),
    ] {
        let a = t.effective();
        if a >= 1.0 - tol {
            upper(rule, a, reciprocal(a.max(1.0)), &mut hi, &mut trace);
        }
    }
    for (rule, t) in [
        (DensityRule::LowerFromBetaCeiling, &profile.beta_stat_limsup),
        (DensityRule::LowerFromAlphaCeiling, &profile.alpha_stat_limsup),
    ] {
        let b = t.effective();
        if b.is_finite() && b > 0.0 {
            let bound = reciprocal(b.max(1.0));
            trace.push(AppliedRule {
                rule,
                statistic: b,
                bound,
            });
            lo = lo.max(bound);
        }
    }
    let rho = profile.rho_upper.value();
    if rho < 1.0 - tol {
        upper(DensityRule::AlmostThin, rho, 0.0, &mut hi, &mut trace);
    }
    for (rule, t) in [
        (DensityRule::ProportionalGaps, &profile.gap_over_curr_liminf),
        (DensityRule::ProportionalGapsNext, &profile.gap_over_next_liminf),
    ] {
        let g = t.value();
        if g > tol {
            upper(rule, g, 0.0, &mut hi, &mut trace);
        }
    }
    ImpliedInterval { lo, hi, trace }
}

/// Wraps [`implied_density_interval`] as a check: the bounds must be
/// consistent with each other and with the EPS estimates.
pub fn check_implied_interval(profile: &DensityProfile, tol: f64) -> CheckReport {
    let iv = implied_density_interval(profile, tol);
    let mut r = CheckReport::new("implied-interval", &profile.family_tag, tol);
    r.measure("lo", iv.lo);
    r.measure("hi", iv.hi);
    for a in &iv.trace {
        r.note(format!("{} statistic={} bound={}", a.rule, a.statistic, a.bound));
    }
    if iv.lo > iv.hi + tol {
        r.fail(Witness::new(0, &[("lo", iv.lo), ("hi", iv.hi)]));
    }
    if (iv.lo > 0.0 || iv.hi < 1.0) && iv.trace.is_empty() {
        r.fail(Witness::new(0, &[("lo", iv.lo), ("hi", iv.hi)]));
    }
    r
}
