//! The three nonlinearities and the second-order KG forcing.

use num_complex::Complex64;

use super::groups::bessel_power;
use super::params::{ParamSet, SystemPair};
use crate::error::{Error, Result};
use crate::spectral::{apply_multiplier, Field};

/// |z|^alpha z with |0|^alpha * 0 = 0; the log/exp route keeps fractional
/// powers exact and the guard avoids NaN on exactly-zero samples.
pub fn frac_pow(z: Complex64, alpha: f64) -> Complex64 {
    let r = z.norm();
    if r < 1e-300 {
        Complex64::default()
    } else {
        z * (alpha * r.ln()).exp()
    }
}

fn check_two_components(u: &Field) -> Result<()> {
    if u.components() != 2 {
        return Err(Error::ComponentMismatch {
            expected: 2,
            found: u.components(),
        });
    }
    Ok(())
}

fn tensor_with_b(grid: crate::spectral::GridSpec, scalar: &Field, coeff: Complex64) -> Field {
    let s = scalar.physical_data();
    let n = grid.len();
    let mut vals = Vec::with_capacity(2 * n);
    for comp in 0..2 {
        let b = Complex64::new(SystemPair::B[comp], 0.0) * coeff;
        for flat in 0..n {
            vals.push(b * s[flat]);
        }
    }
    Field::from_values(grid, 2, vals).expect("same shape")
}

/// L(u) = ((mu1 - 1)/2) [<i nabla>^{-1} (a . u)] b.
pub fn nonlinearity_l(u: &Field, p: &ParamSet) -> Result<Field> {
    check_two_components(u)?;
    let w = super::groups::system_to_kg(u)?;
    let smoothed = bessel_power(&w, -1.0);
    let coeff = (p.mu1 - Complex64::new(1.0, 0.0)) * 0.5;
    Ok(tensor_with_b(*u.grid(), &smoothed, coeff))
}

/// N(u) = -(mu2/2) [<i nabla>^{-1} (|a.u|^alpha a.u)] b, the nonlinearity
/// evaluated pseudo-spectrally (pointwise in physical space).
pub fn nonlinearity_n(u: &Field, p: &ParamSet) -> Result<Field> {
    check_two_components(u)?;
    let w = super::groups::system_to_kg(u)?;
    let vals: Vec<Complex64> = w
        .physical_data()
        .iter()
        .map(|&z| frac_pow(z, p.alpha))
        .collect();
    let g = Field::from_values(*u.grid(), 1, vals)?;
    let smoothed = bessel_power(&g, -1.0);
    Ok(tensor_with_b(*u.grid(), &smoothed, -0.5 * p.mu2))
}

/// N1(Psi) = lambda |Psi|^alpha Psi, pointwise with the C^d norm.
pub fn dirac_nonlinearity(psi: &Field, p: &ParamSet) -> Result<Field> {
    let mag = psi.pointwise_norm();
    let n = psi.grid().len();
    let v = psi.physical_data();
    let mut vals = Vec::with_capacity(v.len());
    for c in 0..psi.components() {
        for flat in 0..n {
            let r = mag[flat];
            let amp = if r < 1e-300 { 0.0 } else { (p.alpha * r.ln()).exp() };
            vals.push(p.lambda * amp * v[c * n + flat]);
        }
    }
    Field::from_values(*psi.grid(), psi.components(), vals)
}

/// Second-order forcing for the oracle stepper:
/// w_tt = Laplacian w - mu1 w + mu2 |w|^alpha w.
pub fn kg_rhs(w: &Field, p: &ParamSet) -> Result<Field> {
    if w.components() != 1 {
        return Err(Error::ComponentMismatch {
            expected: 1,
            found: w.components(),
        });
    }
    let lap = apply_multiplier(w, |xi| {
        Complex64::new(-xi.iter().map(|v| v * v).sum::<f64>(), 0.0)
    })?;
    let v = w.physical_data();
    let l = lap.physical_data();
    let vals: Vec<Complex64> = v
        .iter()
        .zip(l.iter())
        .map(|(&z, &dz)| dz - p.mu1 * z + p.mu2 * frac_pow(z, p.alpha))
        .collect();
    Field::from_values(*w.grid(), 1, vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::params::{make_params, ParamOverrides};
    use crate::spectral::GridSpec;

    fn grid() -> GridSpec {
        GridSpec::new(1, 8.0, 64).unwrap()
    }

    fn params(alpha: f64) -> ParamSet {
        make_params(alpha, 1, ParamOverrides::default()).unwrap()
    }

    fn const_a(grid: GridSpec, c: Complex64) -> Field {
        Field::from_fn(grid, 2, |_, _| c)
    }

    #[test]
    fn l_vanishes_for_mu1_one() {
        let p = params(1.0);
        let u = const_a(grid(), Complex64::new(1.5, 0.0));
        assert!(nonlinearity_l(&u, &p).unwrap().linf_norm() < 1e-15);
    }

    #[test]
    fn l_on_constant_a_profile() {
        let p = params(1.0).with_mu(Complex64::new(3.0, 0.0), Complex64::new(1.0, 0.0));
        let c = Complex64::new(0.7, 0.0);
        let u = const_a(grid(), c);
        let l = nonlinearity_l(&u, &p).unwrap();
        let v = l.physical_data();
        let n = grid().len();
        // ((mu1-1)/2) * 2c * b
        assert!((v[0] - Complex64::new(1.4, 0.0)).norm() < 1e-12);
        assert!((v[n] - Complex64::new(-1.4, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn outputs_lie_in_span_b() {
        let p = params(0.5);
        let u = Field::from_fn(grid(), 2, |x, c| {
            Complex64::new((-x[0] * x[0] / 8.0).exp() + 0.3, 0.1 * c as f64)
        });
        for f in [
            nonlinearity_l(&u, &p).unwrap(),
            nonlinearity_n(&u, &p).unwrap(),
        ] {
            let a_dot = crate::operators::groups::system_to_kg(&f).unwrap();
            assert!(a_dot.linf_norm() < 1e-13 * (1.0 + f.linf_norm()));
        }
    }

    #[test]
    fn n_vanishes_for_mu2_zero() {
        let p = params(0.5).with_mu(Complex64::new(1.0, 0.0), Complex64::default());
        let u = const_a(grid(), Complex64::new(1.0, 0.0));
        assert!(nonlinearity_n(&u, &p).unwrap().linf_norm() < 1e-15);
    }

    #[test]
    fn n_on_constant_a_profile() {
        let alpha = 0.5;
        let p = params(alpha);
        let c = 0.8f64;
        let u = const_a(grid(), Complex64::new(c, 0.0));
        let nl = nonlinearity_n(&u, &p).unwrap();
        let expect = 0.5 * (2.0 * c).powf(alpha + 1.0);
        let v = nl.physical_data();
        let n = grid().len();
        assert!((v[0] + Complex64::new(expect, 0.0)).norm() < 1e-12);
        assert!((v[n] - Complex64::new(expect, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn dirac_nonlinearity_basics() {
        let p = params(0.5);
        let psi = Field::from_fn(grid(), 2, |_, c| {
            if c == 0 {
                Complex64::new(0.6, 0.0)
            } else {
                Complex64::new(0.0, 0.8)
            }
        });
        // |psi| = 1 pointwise, so N1(psi) = lambda psi
        let nl = dirac_nonlinearity(&psi, &p).unwrap();
        assert!(nl.sub(&psi.scale(p.lambda)).unwrap().linf_norm() < 1e-13);
        // lambda = 0 -> zero
        let p0 = params(0.5).with_lambda(Complex64::default());
        assert!(dirac_nonlinearity(&psi, &p0).unwrap().linf_norm() < 1e-15);
    }

    #[test]
    fn dirac_nonlinearity_homogeneity() {
        let p = params(0.7);
        let psi = Field::from_fn(grid(), 2, |x, c| {
            Complex64::new((0.2 * x[0]).cos() + 0.1 * c as f64, 0.3)
        });
        let c = 1.7f64;
        let lhs = dirac_nonlinearity(&psi.scale(Complex64::new(c, 0.0)), &p).unwrap();
        let rhs = dirac_nonlinearity(&psi, &p)
            .unwrap()
            .scale(Complex64::new(c.abs().powf(p.alpha) * c, 0.0));
        assert!(lhs.sub(&rhs).unwrap().linf_norm() < 1e-12 * rhs.linf_norm());
    }

    #[test]
    fn kg_rhs_cases() {
        let p = params(1.0).with_mu(Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0));
        let g = grid();
        assert!(kg_rhs(&Field::zero(g, 1), &p).unwrap().linf_norm() < 1e-15);
        // constant c: rhs = -mu1 c + mu2 |c|^alpha c
        let c = 0.5f64;
        let w = Field::from_fn(g, 1, |_, _| Complex64::new(c, 0.0));
        let r = kg_rhs(&w, &p).unwrap();
        let expect = -2.0 * c + 3.0 * c * c; // alpha = 1, c > 0
        assert!((r.physical_data()[0] - Complex64::new(expect, 0.0)).norm() < 1e-12);
        // plane wave, mu2 = 0: rhs = -(|xi0|^2 + mu1) w
        let p_lin = params(1.0).with_mu(Complex64::new(2.0, 0.0), Complex64::default());
        let xi0 = 3.0 * std::f64::consts::PI / 8.0;
        let w = Field::from_fn(g, 1, |x, _| Complex64::new(0.0, xi0 * x[0]).exp());
        let r = kg_rhs(&w, &p_lin).unwrap();
        let expect = w.scale(Complex64::new(-(xi0 * xi0 + 2.0), 0.0));
        assert!(r.sub(&expect).unwrap().linf_norm() < 1e-11);
    }
}
