//! Fourier multipliers, spectral derivatives and weight multiplication.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::field::Field;
use super::grid::{FrequencyLattice, MAX_DIM};
use crate::error::{Error, Result};

/// Forward transform; the result carries both representations.
pub fn forward_transform(f: &Field) -> Field {
    f.with_both()
}

/// Inverse transform; the result carries both representations.
pub fn inverse_transform(f: &Field) -> Field {
    f.with_both()
}

/// Apply a scalar Fourier multiplier xi -> symbol(xi) to every component.
pub fn apply_multiplier(f: &Field, symbol: impl Fn(&[f64]) -> Complex64) -> Result<Field> {
    let grid = *f.grid();
    let lat = FrequencyLattice::new(grid);
    let n = grid.len();
    let mut sym = Vec::with_capacity(n);
    let mut xi = [0.0f64; MAX_DIM];
    for flat in 0..n {
        lat.freq(flat, &mut xi);
        let s = symbol(&xi[..grid.dim()]);
        if !s.re.is_finite() || !s.im.is_finite() {
            return Err(Error::SymbolSingular);
        }
        sym.push(s);
    }
    let spec = f.spectral_data();
    let mut out = Vec::with_capacity(spec.len());
    for c in 0..f.components() {
        for flat in 0..n {
            out.push(spec[c * n + flat] * sym[flat]);
        }
    }
    Ok(Field::from_spectrum(grid, f.components(), out)?.with_both())
}

/// Apply a matrix-valued Fourier multiplier xi -> d x d matrix, mixing the
/// components of `f` at each lattice point.
pub fn apply_matrix_multiplier(
    f: &Field,
    symbol: impl Fn(&[f64]) -> DMatrix<Complex64>,
) -> Result<Field> {
    let grid = *f.grid();
    let d = f.components();
    let lat = FrequencyLattice::new(grid);
    let n = grid.len();
    let spec = f.spectral_data();
    let mut out = vec![Complex64::default(); spec.len()];
    let mut xi = [0.0f64; MAX_DIM];
    for flat in 0..n {
        lat.freq(flat, &mut xi);
        let m = symbol(&xi[..grid.dim()]);
        assert_eq!(m.nrows(), d, "symbol matrix size must match components");
        assert_eq!(m.ncols(), d);
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::SymbolSingular);
        }
        for row in 0..d {
            let mut acc = Complex64::default();
            for col in 0..d {
                acc += m[(row, col)] * spec[col * n + flat];
            }
            out[row * n + flat] = acc;
        }
    }
    Ok(Field::from_spectrum(grid, d, out)?.with_both())
}

/// D^beta via the multiplier (i xi)^beta. `max_order` is the J of the active
/// parameter set.
pub fn spectral_derivative(f: &Field, beta: &[usize; MAX_DIM], max_order: usize) -> Result<Field> {
    let total: usize = beta.iter().sum();
    if total > max_order {
        return Err(Error::OrderTooHigh {
            order: total,
            max: max_order,
        });
    }
    let dim = f.grid().dim();
    apply_multiplier(f, |xi| {
        let mut acc = Complex64::new(1.0, 0.0);
        for (a, &xi_a) in xi.iter().enumerate().take(dim) {
            for _ in 0..beta[a] {
                acc *= Complex64::new(0.0, xi_a);
            }
        }
        acc
    })
}

/// Multiply pointwise by the weight <x>^p at the grid nodes. The spectrum of
/// the result is invalidated (recomputed lazily if needed).
pub fn weight_multiply(f: &Field, power: f64) -> Field {
    let grid = *f.grid();
    let n = grid.len();
    let mut w = Vec::with_capacity(n);
    let mut x = [0.0f64; MAX_DIM];
    for flat in 0..n {
        grid.point_coords(flat, &mut x);
        let sq: f64 = x[..grid.dim()].iter().map(|v| v * v).sum();
        w.push((1.0 + sq).powf(power / 2.0));
    }
    let vals = f.physical_data();
    let mut out = Vec::with_capacity(vals.len());
    for c in 0..f.components() {
        for flat in 0..n {
            out.push(vals[c * n + flat] * w[flat]);
        }
    }
    Field::from_values(grid, f.components(), out).expect("same shape")
}
