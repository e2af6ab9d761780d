//! Gamma matrices of the Dirac operator: construction in any dimension,
//! verification of the anticommutation identities, and the Fourier symbol of
//! the free Dirac operator.

use nalgebra::DMatrix;
use num_complex::Complex64;

type CMat = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli(k: usize) -> CMat {
    match k {
        1 => CMat::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        2 => CMat::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        3 => CMat::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
        _ => panic!("pauli index must be 1..=3"),
    }
}

/// Spinor size 2^{[(N+1)/2]}.
pub fn spinor_size(dim: usize) -> usize {
    1 << ((dim + 1) / 2)
}

/// Hermitian matrices gamma_1..gamma_N and eta with
/// gamma_j gamma_k + gamma_k gamma_j = 2 delta_jk I, gamma_j eta + eta gamma_j = 0,
/// eta^2 = I.
#[derive(Debug, Clone)]
pub struct DiracAlgebra {
    dim: usize,
    gammas: Vec<CMat>,
    eta: CMat,
}

/// Maximal deviations from the defining identities of a candidate algebra.
#[derive(Debug, Clone, Copy)]
pub struct AlgebraReport {
    pub anticommutation: f64,
    pub eta_anticommutation: f64,
    pub eta_square: f64,
    pub hermiticity: f64,
}

impl AlgebraReport {
    pub fn max_deviation(&self) -> f64 {
        self.anticommutation
            .max(self.eta_anticommutation)
            .max(self.eta_square)
            .max(self.hermiticity)
    }
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

impl DiracAlgebra {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spinor_size(&self) -> usize {
        self.eta.nrows()
    }

    pub fn gamma(&self, k: usize) -> &CMat {
        &self.gammas[k - 1]
    }

    pub fn gammas(&self) -> &[CMat] {
        &self.gammas
    }

    pub fn eta(&self) -> &CMat {
        &self.eta
    }

    /// Replace eta; used by tests to build deliberately broken algebras.
    pub fn with_eta(mut self, eta: CMat) -> Self {
        self.eta = eta;
        self
    }
}

/// Build the algebra for dimension N. N = 1, 2, 3 use the standard explicit
/// matrices; N >= 4 doubles the algebra for N - 2 by tensoring with Pauli
/// matrices, which preserves Hermiticity and the anticommutation identities.
pub fn construct_algebra(dim: usize) -> DiracAlgebra {
    assert!(dim >= 1, "dimension must be at least 1");
    match dim {
        1 => DiracAlgebra {
            dim,
            gammas: vec![pauli(1)],
            eta: pauli(3),
        },
        2 => DiracAlgebra {
            dim,
            gammas: vec![pauli(1), pauli(2)],
            eta: pauli(3),
        },
        3 => {
            let zero = CMat::zeros(2, 2);
            let id = CMat::identity(2, 2);
            let block = |a: &CMat, b: &CMat, cm: &CMat, d: &CMat| {
                let mut m = CMat::zeros(4, 4);
                m.view_mut((0, 0), (2, 2)).copy_from(a);
                m.view_mut((0, 2), (2, 2)).copy_from(b);
                m.view_mut((2, 0), (2, 2)).copy_from(cm);
                m.view_mut((2, 2), (2, 2)).copy_from(d);
                m
            };
            let gammas = (1..=3)
                .map(|j| block(&zero, &pauli(j), &pauli(j), &zero))
                .collect();
            let eta = block(&id, &zero, &zero, &id.scale(-1.0));
            DiracAlgebra { dim, gammas, eta }
        }
        _ => {
            let prev = construct_algebra(dim - 2);
            let id = CMat::identity(prev.spinor_size(), prev.spinor_size());
            let mut gammas: Vec<CMat> = prev
                .gammas
                .iter()
                .map(|g| pauli(1).kronecker(g))
                .collect();
            gammas.push(pauli(1).kronecker(&prev.eta));
            gammas.push(pauli(2).kronecker(&id));
            let eta = pauli(3).kronecker(&id);
            DiracAlgebra { dim, gammas, eta }
        }
    }
}

/// Max deviation per defining identity.
pub fn verify_algebra(a: &DiracAlgebra) -> AlgebraReport {
    let l = a.spinor_size();
    let id = CMat::identity(l, l);
    let mut anticom = 0.0f64;
    for j in 0..a.dim {
        for k in 0..a.dim {
            let delta = if j == k { 2.0 } else { 0.0 };
            let dev = &a.gammas[j] * &a.gammas[k] + &a.gammas[k] * &a.gammas[j] - id.scale(delta);
            anticom = anticom.max(max_abs(&dev));
        }
    }
    let mut eta_anticom = 0.0f64;
    for g in &a.gammas {
        eta_anticom = eta_anticom.max(max_abs(&(g * &a.eta + &a.eta * g)));
    }
    let eta_square = max_abs(&(&a.eta * &a.eta - &id));
    let mut herm = max_abs(&(a.eta.adjoint() - &a.eta));
    for g in &a.gammas {
        herm = herm.max(max_abs(&(g.adjoint() - g)));
    }
    AlgebraReport {
        anticommutation: anticom,
        eta_anticommutation: eta_anticom,
        eta_square,
        hermiticity: herm,
    }
}

/// Fourier symbol of the free Dirac operator: H_hat(xi) = sum_k gamma_k xi_k + eta.
/// Satisfies H_hat(xi)^2 = (1 + |xi|^2) I.
pub fn dirac_symbol(a: &DiracAlgebra, xi: &[f64]) -> CMat {
    assert!(xi.len() >= a.dim);
    let mut m = a.eta.clone();
    for (k, g) in a.gammas.iter().enumerate() {
        m += g.scale(xi[k]);
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn explicit_low_dimensions() {
        let a1 = construct_algebra(1);
        assert_eq!(a1.spinor_size(), 2);
        assert_eq!(a1.gamma(1), &pauli(1));
        assert_eq!(a1.eta(), &pauli(3));
        let a2 = construct_algebra(2);
        assert_eq!(a2.gamma(2), &pauli(2));
        assert!(verify_algebra(&a2).max_deviation() < 1e-15);
        let a3 = construct_algebra(3);
        assert_eq!(a3.spinor_size(), 4);
    }

    #[test]
    fn doubling_produces_valid_algebras() {
        for dim in 1..=8 {
            let a = construct_algebra(dim);
            assert_eq!(a.spinor_size(), spinor_size(dim));
            let rep = verify_algebra(&a);
            assert!(
                rep.max_deviation() < 1e-13,
                "dim {dim}: deviation {}",
                rep.max_deviation()
            );
        }
    }

    #[test]
    fn n5_spinor_size_and_all_pairings() {
        let a = construct_algebra(5);
        assert_eq!(a.spinor_size(), 8);
        // direct product verification of all (N+1)^2 pairings
        let rep = verify_algebra(&a);
        assert!(rep.anticommutation < 1e-14);
        assert!(rep.eta_anticommutation < 1e-14);
        assert!(rep.eta_square < 1e-14);
    }

    #[test]
    fn broken_eta_detected() {
        let a = construct_algebra(1).with_eta(pauli(1));
        let rep = verify_algebra(&a);
        // gamma_1 eta + eta gamma_1 = 2 sigma_1^2 = 2I
        assert!((rep.eta_anticommutation - 2.0).abs() < 1e-14);
    }

    #[test]
    fn symbol_squares_to_bracket() {
        let a = construct_algebra(3);
        let xi = [0.7, -1.3, 2.1];
        let h = dirac_symbol(&a, &xi);
        let sq = &h * &h;
        let bracket2 = 1.0 + xi.iter().map(|v| v * v).sum::<f64>();
        let id = CMat::identity(4, 4).scale(bracket2);
        assert!(max_abs(&(sq - id)) < 1e-13);
    }

    #[test]
    fn symbol_eigenvalues_1d() {
        // N = 1, xi = 3: H = 3 sigma_1 + sigma_3, eigenvalues +-sqrt(10)
        let a = construct_algebra(1);
        let h = dirac_symbol(&a, &[3.0]);
        let eig = h.clone().symmetric_eigenvalues();
        let mut vals: Vec<f64> = eig.iter().copied().collect();
        vals.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((vals[0] + 10.0f64.sqrt()).abs() < 1e-12);
        assert!((vals[1] - 10.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn symbol_at_origin_is_eta() {
        let a = construct_algebra(2);
        let h = dirac_symbol(&a, &[0.0, 0.0]);
        assert_eq!(&h, a.eta());
    }
}
