use num_complex::Complex64;

use crate::error::{Error, Result};

/// The integer parameters (k, m, n, J) together with the equation
/// coefficients alpha, mu1, mu2 and the Dirac coupling lambda.
///
/// Constraints: k > N/2, n > max(N/2 + 1, N/(2 alpha)), 2m >= k + n + 3,
/// J = 2m + 2 + k.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSet {
    pub alpha: f64,
    pub mu1: Complex64,
    pub mu2: Complex64,
    pub lambda: Complex64,
    pub dim: usize,
    pub k: usize,
    pub m: usize,
    pub n: usize,
    pub j: usize,
}

/// Optional integer overrides for make_params.
#[derive(Debug, Clone, Copy, Default)]
pub struct ParamOverrides {
    pub k: Option<usize>,
    pub n: Option<usize>,
    pub m: Option<usize>,
}

fn smallest_integer_above(x: f64) -> usize {
    (x.floor() as i64 + 1).max(1) as usize
}

fn check_constraints(alpha: f64, dim: usize, k: usize, n: usize, m: usize) -> Result<()> {
    let nf = dim as f64;
    if (k as f64) <= nf / 2.0 {
        return Err(Error::InvalidOverride(format!(
            "k must exceed N/2 = {}",
            nf / 2.0
        )));
    }
    let n_lower = (nf / 2.0 + 1.0).max(nf / (2.0 * alpha));
    if (n as f64) <= n_lower {
        return Err(Error::InvalidOverride(format!(
            "n must exceed max(N/2 + 1, N/(2*alpha)) = {n_lower}"
        )));
    }
    if 2 * m < k + n + 3 {
        return Err(Error::InvalidOverride(format!(
            "2m must be at least k + n + 3 = {}",
            k + n + 3
        )));
    }
    Ok(())
}

/// Smallest integers satisfying the parameter constraints, unless overridden.
pub fn make_params(alpha: f64, dim: usize, overrides: ParamOverrides) -> Result<ParamSet> {
    if !(alpha > 0.0) {
        return Err(Error::Validation(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let nf = dim as f64;
    let k = overrides.k.unwrap_or_else(|| smallest_integer_above(nf / 2.0));
    let n = overrides
        .n
        .unwrap_or_else(|| smallest_integer_above((nf / 2.0 + 1.0).max(nf / (2.0 * alpha))));
    let m = overrides.m.unwrap_or_else(|| (k + n + 3).div_ceil(2));
    check_constraints(alpha, dim, k, n, m)?;
    let j = 2 * m + 2 + k;
    Ok(ParamSet {
        alpha,
        mu1: Complex64::new(1.0, 0.0),
        mu2: Complex64::new(1.0, 0.0),
        lambda: Complex64::new(1.0, 0.0),
        dim,
        k,
        m,
        n,
        j,
    })
}

impl ParamSet {
    pub fn with_mu(mut self, mu1: Complex64, mu2: Complex64) -> Self {
        self.mu1 = mu1;
        self.mu2 = mu2;
        self
    }

    pub fn with_lambda(mut self, lambda: Complex64) -> Self {
        self.lambda = lambda;
        self
    }
}

/// The constant vectors a = (1,1), b = (1,-1) and the Pauli matrix
/// gamma = diag(1,-1) of the half-wave system.
pub struct SystemPair;

impl SystemPair {
    pub const A: [f64; 2] = [1.0, 1.0];
    pub const B: [f64; 2] = [1.0, -1.0];
    pub const GAMMA: [f64; 2] = [1.0, -1.0]; // diagonal entries
}
