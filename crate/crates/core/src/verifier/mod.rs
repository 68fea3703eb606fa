//! Checks of the inequalities linking gap statistics and densities.

mod analytic;
mod density;
mod manifest;
mod report;
mod stolz;

pub use analytic::{
    check_analytic_inequalities, growth_derivative, growth_fn, log_bound_sides, GridSpec,
};
pub use density::{
    check_implied_interval, check_rho_implies_tau_zero, check_rho_profile, check_sandwich,
    implied_density_interval, tau_zero_threshold, AppliedRule, DensityRule, ImpliedInterval,
    DEFAULT_TOL,
};
pub use manifest::{
    catalog_manifest, parse_manifest, read_manifest, run_entry, run_manifest, CheckKind,
    ManifestEntry, ManifestTarget,
};
pub use report::{CheckReport, CheckStatus, Witness};
pub use stolz::{check_stolz, check_stolz_differences, check_stolz_prefix, check_stolz_with, STOLZ_TOL};
