//! Horizon and smallness parameters of the contraction argument, evaluated
//! in the log domain because the exponents (1+eta K)^{2J+1} overflow f64 for
//! realistic data.

use crate::error::{Error, Result};
use crate::operators::params::ParamSet;
use crate::spectral::Field;
use crate::weighted::{weighted_inf, x_norm};

/// eta = 2 / inf <x>^n |u0|, K = 2 C~ K_t0 ||u0||_X,
/// K_t0 = (1+t0)^{2m+n+1}, and the largest horizon T_star <= t0 on which
/// both smallness conditions of the fixed-point argument hold.
#[derive(Debug, Clone, Copy)]
pub struct ContractionParams {
    pub eta: f64,
    pub k_big: f64,
    pub k_t0: f64,
    pub t0: f64,
    pub t_star: f64,
    /// log of t_star; meaningful even when t_star underflows to 0
    pub ln_t_star: f64,
    pub c_tilde: f64,
}

/// ln(1 + e^a) without overflow.
fn ln_1p_exp(a: f64) -> f64 {
    if a > 40.0 {
        a
    } else {
        a.exp().ln_1p()
    }
}

/// ln(e^a + e^b) without overflow.
fn ln_add_exp(a: f64, b: f64) -> f64 {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi - lo > 40.0 {
        hi
    } else {
        hi + (lo - hi).exp().ln_1p()
    }
}

pub fn contraction_params(u0: &Field, p: &ParamSet, c_tilde: f64) -> Result<ContractionParams> {
    if !(c_tilde > 0.0) {
        return Err(Error::Validation(format!(
            "fitted constant must be positive, got {c_tilde}"
        )));
    }
    let inf = weighted_inf(u0, p.n);
    if inf <= 0.0 {
        return Err(Error::DegenerateData);
    }
    let eta = 2.0 / inf;
    let norm0 = x_norm(u0, p)?.total;
    let two_m = 2 * p.m;

    // largest t0 with c~ t0 (1+t0)^{2m} <= 1/2: monotone, so bisect
    let f = |t: f64| c_tilde * t * (1.0 + t).powi(two_m as i32) - 0.5;
    let mut hi = 1.0;
    while f(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = 0.0;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) <= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t0 = lo;

    let k_t0 = (1.0 + t0).powi((two_m + p.n + 1) as i32);
    let k_big = 2.0 * c_tilde * k_t0 * norm0;

    // Both horizon conditions are linear in T, so the largest admissible T
    // is a quotient; the bracketed factors are assembled in the log domain:
    //   c~ T K_t0 [1 + (1+eta K)^{2J+1} K^alpha]              <= 1/2
    //   c~ T K_t0 (||u0|| + K + (1+eta K)^{2J} K^{alpha+1})   <= 1/eta
    let ln_base = (c_tilde * k_t0).ln();
    let ln_1p_eta_k = (1.0 + eta * k_big).ln();
    let ln_k = k_big.ln();
    let two_j = (2 * p.j) as f64;

    let ln_bracket_a = ln_1p_exp((two_j + 1.0) * ln_1p_eta_k + p.alpha * ln_k);
    let ln_t_a = -std::f64::consts::LN_2 - ln_base - ln_bracket_a;

    let ln_sum_b = ln_add_exp(
        ln_add_exp(norm0.ln(), ln_k),
        two_j * ln_1p_eta_k + (p.alpha + 1.0) * ln_k,
    );
    let ln_t_b = -eta.ln() - ln_base - ln_sum_b;

    let ln_t_star = ln_t_a.min(ln_t_b).min(t0.ln());
    Ok(ContractionParams {
        eta,
        k_big,
        k_t0,
        t0,
        t_star: ln_t_star.exp(),
        ln_t_star,
        c_tilde,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::params::{make_params, ParamOverrides};
    use crate::spectral::GridSpec;
    use crate::weighted::{admissible_family, periodized_bracket};
    use num_complex::Complex64;

    fn data() -> (Field, ParamSet) {
        let g = GridSpec::new(1, 8.0, 128).unwrap();
        let p = make_params(1.0, 1, ParamOverrides::default()).unwrap();
        let u = admissible_family(&g, p.n, 1, 3).remove(0);
        (u, p)
    }

    #[test]
    fn k_is_linear_in_the_norm_and_eta_inverse_in_the_inf() {
        let (u, p) = data();
        let a = contraction_params(&u, &p, 1.0).unwrap();
        let b = contraction_params(&u.scale(Complex64::new(2.0, 0.0)), &p, 1.0).unwrap();
        assert!((b.k_big - 2.0 * a.k_big).abs() < 1e-10 * a.k_big);
        assert!((b.eta - 0.5 * a.eta).abs() < 1e-12 * a.eta);
        // t0 solves c~ t0 (1+t0)^{2m} = 1/2
        let lhs = a.c_tilde * a.t0 * (1.0 + a.t0).powi(2 * p.m as i32);
        assert!((lhs - 0.5).abs() < 1e-10);
    }

    #[test]
    fn smaller_alpha_shrinks_the_horizon() {
        let g = GridSpec::new(1, 8.0, 128).unwrap();
        let p1 = make_params(1.0, 1, ParamOverrides::default()).unwrap();
        let p2 = make_params(0.25, 1, ParamOverrides::default()).unwrap();
        assert!(p2.j > p1.j);
        let base = periodized_bracket(&g, p2.n as f64);
        let vals: Vec<Complex64> = base
            .iter()
            .chain(base.iter())
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        let u = Field::from_values(g, 2, vals).unwrap();
        let a = contraction_params(&u, &p1, 1.0).unwrap();
        let b = contraction_params(&u, &p2, 1.0).unwrap();
        assert!(b.ln_t_star < a.ln_t_star);
    }

    #[test]
    fn degenerate_data_rejected() {
        let g = GridSpec::new(1, 8.0, 128).unwrap();
        let p = make_params(1.0, 1, ParamOverrides::default()).unwrap();
        let r = contraction_params(&Field::zero(g, 2), &p, 1.0);
        assert!(matches!(r, Err(Error::DegenerateData)));
    }
}
