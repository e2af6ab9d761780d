//! Weighted-space norms, the Bessel kernel, and estimate diagnostics.

mod bessel;
mod diag;
mod norms;

pub use bessel::bessel_kernel;
pub use diag::{
    admissible_family, commutator_residual, family_eta, linear_growth_diag,
    nonlinear_ratio_diag, periodized_bracket, schwartz_family, small_time_diag, EstimateReport,
    RatioSample,
};
pub use norms::{
    weighted_inf, weighted_sup, x_norm, x_norm_unchecked, y_norm, y_norm_unchecked,
    NormBreakdown, TAIL_TOLERANCE,
};
