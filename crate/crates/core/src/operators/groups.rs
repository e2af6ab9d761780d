//! Linear groups and the KG <-> half-wave system transforms.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::clifford::{dirac_symbol, DiracAlgebra};
use crate::error::{Error, Result};
use crate::spectral::{apply_matrix_multiplier, apply_multiplier, Field};

fn bracket(xi: &[f64]) -> f64 {
    (1.0 + xi.iter().map(|v| v * v).sum::<f64>()).sqrt()
}

/// Bessel multiplier <xi>^s; s = -1 is the smoothing operator <i nabla>^{-1}.
pub fn bessel_power(f: &Field, s: f64) -> Field {
    apply_multiplier(f, |xi| Complex64::new(bracket(xi).powf(s), 0.0))
        .expect("bracket symbol is finite")
}

/// e^{-it gamma <i nabla>} on a 2-component field: component 0 evolves with
/// e^{-it<xi>}, component 1 with e^{+it<xi>}.
pub fn halfwave_group(u: &Field, t: f64) -> Result<Field> {
    if u.components() != 2 {
        return Err(Error::ComponentMismatch {
            expected: 2,
            found: u.components(),
        });
    }
    let grid = *u.grid();
    let n = grid.len();
    let spec = u.spectral_data();
    let lat = crate::spectral::FrequencyLattice::new(grid);
    let mut out = Vec::with_capacity(spec.len());
    for c in 0..2 {
        let sign = if c == 0 { -1.0 } else { 1.0 };
        for flat in 0..n {
            let phase = Complex64::new(0.0, sign * t * lat.bracket(flat)).exp();
            out.push(spec[c * n + flat] * phase);
        }
    }
    Ok(Field::from_spectrum(grid, 2, out)?.with_both())
}

/// e^{-it H} via the closed-form symbol exponential
/// cos(t<xi>) I - i sin(t<xi>) <xi>^{-1} H_hat(xi), valid because
/// H_hat(xi)^2 = <xi>^2 I.
pub fn dirac_group(psi: &Field, t: f64, algebra: &DiracAlgebra) -> Result<Field> {
    let l = algebra.spinor_size();
    if psi.components() != l {
        return Err(Error::AlgebraMismatch {
            field: psi.components(),
            algebra: l,
        });
    }
    apply_matrix_multiplier(psi, |xi| {
        let br = bracket(xi);
        let h = dirac_symbol(algebra, xi);
        let m = DMatrix::from_diagonal_element(l, l, Complex64::new((t * br).cos(), 0.0));
        let coeff = Complex64::new(0.0, -(t * br).sin() / br);
        m + h.map(|z| z * coeff)
    })
}

/// u0 = (w0 a + i [<i nabla>^{-1} w1] b) / 2.
pub fn kg_to_system(w0: &Field, w1: &Field) -> Result<Field> {
    if w0.grid() != w1.grid() {
        return Err(Error::GridMismatch);
    }
    if w0.components() != 1 || w1.components() != 1 {
        return Err(Error::ComponentMismatch {
            expected: 1,
            found: w0.components().max(w1.components()),
        });
    }
    let smoothed = bessel_power(w1, -1.0);
    let i_half = Complex64::new(0.0, 0.5);
    let w = w0.physical_data();
    let s = smoothed.physical_data();
    let n = w0.grid().len();
    let mut vals = Vec::with_capacity(2 * n);
    for flat in 0..n {
        vals.push(0.5 * w[flat] + i_half * s[flat]);
    }
    for flat in 0..n {
        vals.push(0.5 * w[flat] - i_half * s[flat]);
    }
    Field::from_values(*w0.grid(), 2, vals)
}

/// w = a . u = u_1 + u_2.
pub fn system_to_kg(u: &Field) -> Result<Field> {
    if u.components() != 2 {
        return Err(Error::ComponentMismatch {
            expected: 2,
            found: u.components(),
        });
    }
    let v = u.physical_data();
    let n = u.grid().len();
    let vals: Vec<Complex64> = (0..n).map(|flat| v[flat] + v[n + flat]).collect();
    Field::from_values(*u.grid(), 1, vals)
}

/// dt w = -i <i nabla> (b . u) = -i <i nabla> (u_1 - u_2).
pub fn recover_time_derivative(u: &Field) -> Result<Field> {
    if u.components() != 2 {
        return Err(Error::ComponentMismatch {
            expected: 2,
            found: u.components(),
        });
    }
    let v = u.physical_data();
    let n = u.grid().len();
    let vals: Vec<Complex64> = (0..n).map(|flat| v[flat] - v[n + flat]).collect();
    let diff = Field::from_values(*u.grid(), 1, vals)?;
    let lifted = bessel_power(&diff, 1.0);
    Ok(lifted.scale(Complex64::new(0.0, -1.0)))
}
