use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("multiplier symbol evaluated to a non-finite value at a lattice point")]
    SymbolSingular,
    #[error("derivative order {order} exceeds the admissible order {max}")]
    OrderTooHigh { order: usize, max: usize },
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("field has {found} components, expected {expected}")]
    ComponentMismatch { expected: usize, found: usize },
    #[error("spinor size {field} does not match algebra spinor size {algebra}")]
    AlgebraMismatch { field: usize, algebra: usize },
    #[error("field is not resolved on the grid (spectral tail {tail:.3e} of peak)")]
    UnresolvedField { tail: f64 },
    #[error("adaptive quadrature failed to reach the requested tolerance")]
    QuadratureFail,
    #[error("family member {input_id} violates the weighted lower bound")]
    LowerBoundViolated { input_id: String },
    #[error("Picard iteration did not converge in {iters} iterations (last contraction factor {last_factor:.3e})")]
    NoConvergence { iters: usize, last_factor: f64 },
    #[error("iterate lost the weighted lower bound at t = {t:.3e} (weighted inf {inf:.3e}, required {required:.3e})")]
    LowerBoundLost { t: f64, inf: f64, required: f64 },
    #[error("time step {dt:.3e} violates the stability bound {bound:.3e}")]
    UnstableStep { dt: f64, bound: f64 },
    #[error("parameter override rejected: {0}")]
    InvalidOverride(String),
    #[error("initial data has vanishing weighted infimum")]
    DegenerateData,
    #[error("profile perturbation too large: ||<x>^n psi||_inf = {linf:.3e} >= 1")]
    ProfileViolation { linf: f64 },
    #[error("config parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("config validation error: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
