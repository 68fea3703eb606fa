//! Index functionals of a prefix and their tail-window estimates.

mod functional;
mod profile;
mod tail;

pub use functional::{
    functional_stream, harmonic_asymptotic, FunctionalKind, FunctionalStream, HARMONIC_EXACT_LIMIT,
};
pub use profile::{density_profile, reciprocal, DensityProfile, ProfileConfig, MIN_PROFILE_LEN};
pub use tail::{
    dyadic_block_extrema, tail_estimate, tail_liminf, tail_limsup, Diagnostic, EstimateTrace,
    TailMode, WindowPolicy,
};
