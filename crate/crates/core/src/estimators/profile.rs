use super::functional::{FunctionalKind, StreamInputs};
use super::tail::{tail_estimate, EstimateTrace, TailMode, WindowPolicy};
use crate::error::{Error, Result};
use crate::sequence::SequencePrefix;

pub const MIN_PROFILE_LEN: usize = 16;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ProfileConfig {
    pub policy: WindowPolicy,
}

/// Tail estimates of every functional for one prefix.
#[derive(Clone, Debug)]
pub struct DensityProfile {
    pub family_tag: String,
    pub length: usize,
    pub precision_bits: u32,
    pub policy: WindowPolicy,
    pub eps_lower: EstimateTrace,
    pub eps_upper: EstimateTrace,
    pub rho_lower: EstimateTrace,
    pub rho_upper: EstimateTrace,
    pub alpha_stat_liminf: EstimateTrace,
    pub beta_stat_limsup: EstimateTrace,
    pub alpha_stat_limsup: EstimateTrace,
    pub beta_stat_liminf: EstimateTrace,
    pub harmonic_lower: EstimateTrace,
    pub harmonic_upper: EstimateTrace,
    pub gap_over_curr_liminf: EstimateTrace,
    pub gap_over_next_liminf: EstimateTrace,
    /// `[1/beta, 1/alpha]` clipped to `[0, 1]`.
    pub implied_interval: (f64, f64),
    /// `|EPS limsup - HARMONIC limsup|`
    pub eps_harmonic_discrepancy: f64,
}

/// `1/x` with `1/inf = 0` and `1/0 = inf`.
pub fn reciprocal(x: f64) -> f64 {
    if x == 0.0 {
        f64::INFINITY
    } else if x.is_infinite() {
        0.0
    } else {
        1.0 / x
    }
}

impl DensityProfile {
    /// `lambda = 1 / liminf a_n/a_{n+1}`
    pub fn lambda(&self) -> f64 {
        reciprocal(self.rho_lower.value())
    }

    /// The upper exponential density estimate.
    pub fn eps_hat(&self) -> f64 {
        self.eps_upper.value()
    }

    pub fn alpha_hat(&self) -> f64 {
        self.alpha_stat_liminf.effective()
    }

    pub fn beta_hat(&self) -> f64 {
        self.beta_stat_limsup.effective()
    }

    /// Named estimate traces in report order.
    pub fn traces(&self) -> Vec<(&'static str, &EstimateTrace)> {
        vec![
            ("eps_lower", &self.eps_lower),
            ("eps_upper", &self.eps_upper),
            ("rho_lower", &self.rho_lower),
            ("rho_upper", &self.rho_upper),
            ("alpha_stat_liminf", &self.alpha_stat_liminf),
            ("beta_stat_limsup", &self.beta_stat_limsup),
            ("alpha_stat_limsup", &self.alpha_stat_limsup),
            ("beta_stat_liminf", &self.beta_stat_liminf),
            ("harmonic_lower", &self.harmonic_lower),
            ("harmonic_upper", &self.harmonic_upper),
            ("gap_over_curr_liminf", &self.gap_over_curr_liminf),
            ("gap_over_next_liminf", &self.gap_over_next_liminf),
        ]
    }
}

pub fn density_profile(prefix: &SequencePrefix, config: &ProfileConfig) -> Result<DensityProfile> {
    let policy = config.policy;
    policy.validate()?;
    if prefix.len() < MIN_PROFILE_LEN {
        return Err(Error::TooShort {
            needed: MIN_PROFILE_LEN,
            got: prefix.len(),
        });
    }
    let mut inputs = StreamInputs::new(prefix);
    // one stream alive at a time; each stream is built in parallel
    let mut both = |kind: FunctionalKind| -> Result<(EstimateTrace, EstimateTrace)> {
        let s = inputs.stream(kind)?;
        Ok((
            tail_estimate(&s, TailMode::LimInf, &policy)?,
            tail_estimate(&s, TailMode::LimSup, &policy)?,
        ))
    };
    let (eps_lower, eps_upper) = both(FunctionalKind::Eps)?;
    let (rho_lower, rho_upper) = both(FunctionalKind::Rho)?;
    let (alpha_stat_liminf, alpha_stat_limsup) = both(FunctionalKind::AlphaStat)?;
    let (beta_stat_liminf, beta_stat_limsup) = both(FunctionalKind::BetaStat)?;
    let (harmonic_lower, harmonic_upper) = both(FunctionalKind::Harmonic)?;
    let (gap_over_curr_liminf, _) = both(FunctionalKind::GapOverCurr)?;
    let (gap_over_next_liminf, _) = both(FunctionalKind::GapOverNext)?;

    let lo = reciprocal(beta_stat_limsup.effective()).clamp(0.0, 1.0);
    let hi = reciprocal(alpha_stat_liminf.effective()).clamp(0.0, 1.0);
    let eps_harmonic_discrepancy = (eps_upper.value() - harmonic_upper.value()).abs();

    Ok(DensityProfile {
        family_tag: prefix.family_tag().to_string(),
        length: prefix.len(),
        precision_bits: prefix.precision_bits(),
        policy,
        eps_lower,
        eps_upper,
        rho_lower,
        rho_upper,
        alpha_stat_liminf,
        beta_stat_limsup,
        alpha_stat_limsup,
        beta_stat_liminf,
        harmonic_lower,
        harmonic_upper,
        gap_over_curr_liminf,
        gap_over_next_liminf,
        implied_interval: (lo, hi),
        eps_harmonic_discrepancy,
    })
}
