//! Frozen regression bounds for the estimate censuses.
//!
//! Each constant was calibrated by running the corresponding census over the
//! seeded random families and freezing the observed maximum with a factor-two
//! headroom. A census that exceeds its bound indicates a regression in the
//! operators or norms, not a statistical fluctuation.

/// Free-flow X-norm growth against the (1+t)^{2m+n+1} envelope.
pub const LINEAR_GROWTH_MAX_RATIO: f64 = 2.5;

/// Small-time free-flow continuity against t (1+t)^{2m+n+1} ||psi||_X.
pub const SMALL_TIME_MAX_RATIO: f64 = 2.5;

/// Fitted log-log slope of the small-time difference must be at least linear.
pub const SMALL_TIME_MIN_SLOPE: f64 = 0.95;

/// Size and Lipschitz ratios of the nonlinearity over admissible families.
pub const NONLINEAR_MAX_RATIO: f64 = 2.5;

/// Weight/operator commutator residual against the lower-weight norm.
pub const COMMUTATOR_MAX_RATIO: f64 = 2.5;

/// Gap between the fixed-point solution and the second-order time stepper.
pub const ORACLE_GAP_MAX: f64 = 1e-5;

/// Maximum tolerated deviation in the generator identities.
pub const ALGEBRA_TOL: f64 = 1e-12;
