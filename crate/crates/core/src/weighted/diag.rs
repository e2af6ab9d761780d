//! Numerical diagnostics for the inequalities behind the contraction
//! argument: each one is checked as a uniform-boundedness claim over a
//! seeded family, never against a hard-coded constant.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::norms::{weighted_sup, x_norm, x_norm_unchecked, weighted_inf};
use crate::error::{Error, Result};
use crate::operators::groups::{bessel_power, halfwave_group};
use crate::operators::nonlinear::nonlinearity_n;
use crate::operators::params::ParamSet;
use crate::spectral::{
    multi_indices, spectral_derivative, weight_multiply, Field, GridSpec, MAX_DIM,
};

/// One measured inequality instance.
#[derive(Debug, Clone)]
pub struct RatioSample {
    pub input_id: String,
    pub t_or_pair: String,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Uniform container for all estimate censuses.
#[derive(Debug, Clone)]
pub struct EstimateReport {
    pub family_size: usize,
    pub ratios: Vec<RatioSample>,
    pub max_ratio: f64,
    pub fitted_exponent: Option<f64>,
}

impl EstimateReport {
    pub fn from_samples(
        family_size: usize,
        ratios: Vec<RatioSample>,
        fitted_exponent: Option<f64>,
    ) -> Self {
        let max_ratio = ratios.iter().map(|s| s.ratio).fold(0.0, f64::max);
        Self {
            family_size,
            ratios,
            max_ratio,
            fitted_exponent,
        }
    }

    /// CSV with one row per sample and a trailing summary comment.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("input_id,t_or_pair,lhs,rhs,ratio\n");
        for s in &self.ratios {
            out.push_str(&format!(
                "{},{},{:.16e},{:.16e},{:.16e}\n",
                s.input_id, s.t_or_pair, s.lhs, s.rhs, s.ratio
            ));
        }
        out.push_str(&format!(
            "# family_size={} max_ratio={:.16e} fitted_exponent={}\n",
            self.family_size,
            self.max_ratio,
            match self.fitted_exponent {
                Some(e) => format!("{e:.16e}"),
                None => "none".to_string(),
            }
        ));
        out
    }
}

/// R(f) = <x>^{2l} <i nabla> f - <i nabla>(<x>^{2l} f): what is left of the
/// weight/operator commutator after removing the leading term.
pub fn commutator_residual(f: &Field, ell: usize) -> Result<Field> {
    if f.components() != 1 {
        return Err(Error::ComponentMismatch {
            expected: 1,
            found: f.components(),
        });
    }
    if ell == 0 {
        return Err(Error::Validation(
            "commutator weight exponent must be at least 1".into(),
        ));
    }
    let p = 2.0 * ell as f64;
    let lhs = weight_multiply(&bessel_power(f, 1.0), p);
    let rhs = bessel_power(&weight_multiply(f, p), 1.0);
    lhs.sub(&rhs)
}

/// Growth of the X-norm under the free flow against the (1+t)^{2m+n+1}
/// envelope.
pub fn linear_growth_diag(psi: &Field, p: &ParamSet, times: &[f64]) -> Result<EstimateReport> {
    let base = x_norm(psi, p)?.total;
    let pow = (2 * p.m + p.n + 1) as f64;
    let mut ratios = Vec::with_capacity(times.len());
    for &t in times {
        let lhs = x_norm(&halfwave_group(psi, t)?, p)?.total;
        let rhs = (1.0 + t.abs()).powf(pow) * base;
        ratios.push(RatioSample {
            input_id: "0".into(),
            t_or_pair: format!("{t:.6e}"),
            lhs,
            rhs,
            ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
        });
    }
    Ok(EstimateReport::from_samples(1, ratios, None))
}

/// Small-time continuity of the free flow:
/// sup_{|b| <= 2m} ||<x>^n D^b (e^{-it gamma<i nabla>}psi - psi)||_Linf
/// against t (1+t)^{2m+n+1} ||psi||_X, with a log-log slope fit in t.
pub fn small_time_diag(psi: &Field, p: &ParamSet, times: &[f64]) -> Result<EstimateReport> {
    let base = x_norm(psi, p)?.total;
    let pow = (2 * p.m + p.n + 1) as f64;
    let betas: Vec<[usize; MAX_DIM]> = multi_indices(psi.grid().dim(), 2 * p.m);
    let mut ratios = Vec::with_capacity(times.len());
    let mut logs: Vec<(f64, f64)> = Vec::new();
    for &t in times {
        let diff = halfwave_group(psi, t)?.sub(psi)?;
        let mut lhs = 0.0f64;
        for beta in &betas {
            let d = spectral_derivative(&diff, beta, p.j)?;
            lhs = lhs.max(weighted_sup(&d, p.n as f64));
        }
        let rhs = t.abs() * (1.0 + t.abs()).powf(pow) * base;
        if lhs > 0.0 && t > 0.0 {
            logs.push((t.ln(), lhs.ln()));
        }
        ratios.push(RatioSample {
            input_id: "0".into(),
            t_or_pair: format!("{t:.6e}"),
            lhs,
            rhs,
            ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
        });
    }
    let slope = fit_slope(&logs);
    Ok(EstimateReport::from_samples(1, ratios, slope))
}

fn fit_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-300 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

/// Size and Lipschitz ratios of the nonlinearity over a family obeying the
/// weighted lower bound eta * inf <x>^n |u| >= 1.
pub fn nonlinear_ratio_diag(
    family: &[Field],
    p: &ParamSet,
    eta: f64,
) -> Result<EstimateReport> {
    let mut norms = Vec::with_capacity(family.len());
    let mut images = Vec::with_capacity(family.len());
    for (i, u) in family.iter().enumerate() {
        if eta * weighted_inf(u, p.n) < 1.0 - 1e-12 {
            return Err(Error::LowerBoundViolated {
                input_id: i.to_string(),
            });
        }
        norms.push(x_norm(u, p)?.total);
        images.push(nonlinearity_n(u, p)?);
    }
    let two_j = (2 * p.j) as f64;
    let mut ratios = Vec::new();
    for (i, u) in family.iter().enumerate() {
        let _ = u;
        let lhs = x_norm_unchecked(&images[i], p)?.total;
        let rhs = (1.0 + eta * norms[i]).powf(two_j) * norms[i].powf(p.alpha + 1.0);
        ratios.push(RatioSample {
            input_id: i.to_string(),
            t_or_pair: "size".into(),
            lhs,
            rhs,
            ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
        });
    }
    for i in 0..family.len() {
        for jdx in (i + 1)..family.len() {
            let diff_norm = x_norm_unchecked(&family[i].sub(&family[jdx])?, p)?.total;
            // identical members give a 0/0 Lipschitz ratio; skip them
            if diff_norm < 1e-12 * (norms[i] + norms[jdx]) {
                continue;
            }
            let lhs = x_norm_unchecked(&images[i].sub(&images[jdx])?, p)?.total;
            let sum = norms[i] + norms[jdx];
            let rhs = (1.0 + eta * sum).powf(two_j + 1.0) * sum.powf(p.alpha) * diff_norm;
            ratios.push(RatioSample {
                input_id: format!("{i}-{jdx}"),
                t_or_pair: "pair".into(),
                lhs,
                rhs,
                ratio: if rhs > 0.0 { lhs / rhs } else { 0.0 },
            });
        }
    }
    Ok(EstimateReport::from_samples(family.len(), ratios, None))
}

/// Periodized bracket profile: sum over box images of <x + 2Lj>^{-n_power}.
/// Smooth as a periodic function, so its spectrum decays fast enough for the
/// high-order derivative norms; pointwise it stays within the image-tail of
/// the free-space profile.
pub fn periodized_bracket(grid: &GridSpec, n_power: f64) -> Vec<f64> {
    let images = 8i64;
    let dim = grid.dim();
    let l = grid.half_length();
    let len = grid.len();
    let mut out = vec![0.0f64; len];
    let mut x = [0.0f64; MAX_DIM];
    let mut shift = [0i64; MAX_DIM];
    for (flat, o) in out.iter_mut().enumerate() {
        grid.point_coords(flat, &mut x);
        // iterate the shift lattice {-images..images}^dim
        shift[..dim].fill(-images);
        loop {
            let mut sq = 0.0;
            for ax in 0..dim {
                let xs = x[ax] + 2.0 * l * shift[ax] as f64;
                sq += xs * xs;
            }
            *o += (1.0 + sq).powf(-n_power / 2.0);
            let mut ax = 0;
            loop {
                if ax == dim {
                    break;
                }
                shift[ax] += 1;
                if shift[ax] <= images {
                    break;
                }
                shift[ax] = -images;
                ax += 1;
            }
            if ax == dim {
                break;
            }
        }
    }
    out
}

/// Seeded family of smooth, rapidly decaying random fields: superpositions
/// of modulated Gaussian bumps.
pub fn schwartz_family(grid: &GridSpec, components: usize, count: usize, seed: u64) -> Vec<Field> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let l = grid.half_length();
    let dim = grid.dim();
    let mut family = Vec::with_capacity(count);
    for _ in 0..count {
        let mut bumps = Vec::new();
        for _ in 0..3 {
            let amp = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let center: Vec<f64> = (0..dim).map(|_| rng.gen_range(-l / 4.0..l / 4.0)).collect();
            let width: f64 = rng.gen_range(0.8..2.0);
            // modulation snapped to a lattice frequency so the field stays
            // exactly box-periodic
            let wavenum = std::f64::consts::PI / l * rng.gen_range(-4i32..=4) as f64;
            bumps.push((amp, center, width, wavenum));
        }
        let f = Field::from_fn(*grid, components, |x, c| {
            let mut acc = Complex64::default();
            for (amp, center, width, wavenum) in &bumps {
                let bump = periodized_gaussian(x, center, *width, l, dim);
                let osc = Complex64::new(0.0, wavenum * x[0]).exp();
                let comp_twist = Complex64::new(1.0, 0.3 * c as f64);
                acc += amp * comp_twist * osc * bump;
            }
            acc
        });
        family.push(f);
    }
    family
}

/// Gaussian bump summed over the nearest box images, so the wrap at the
/// boundary is smooth.
fn periodized_gaussian(x: &[f64], center: &[f64], width: f64, l: f64, dim: usize) -> f64 {
    let mut total = 0.0;
    let mut shift = [0i32; MAX_DIM];
    shift[..dim].fill(-1);
    loop {
        let mut r2 = 0.0;
        for ax in 0..dim {
            let d = x[ax] + 2.0 * l * shift[ax] as f64 - center[ax];
            r2 += d * d;
        }
        total += (-r2 / (2.0 * width * width)).exp();
        let mut ax = 0;
        loop {
            if ax == dim {
                break;
            }
            shift[ax] += 1;
            if shift[ax] <= 1 {
                break;
            }
            shift[ax] = -1;
            ax += 1;
        }
        if ax == dim {
            break;
        }
    }
    total
}

/// Family satisfying the weighted lower bound by construction: scaled
/// periodized bracket profiles times mild smooth modulations, tensored with
/// the vector a = (1, 1).
pub fn admissible_family(
    grid: &GridSpec,
    n_power: usize,
    count: usize,
    seed: u64,
) -> Vec<Field> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = periodized_bracket(grid, n_power as f64);
    let mut family = Vec::with_capacity(count);
    for _ in 0..count {
        let scale: f64 = rng.gen_range(0.5..2.0);
        let eps: f64 = rng.gen_range(0.0..0.4);
        let phase: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let kx = std::f64::consts::PI / grid.half_length()
            * rng.gen_range(1..4) as f64;
        let n = grid.len();
        let mut vals = Vec::with_capacity(2 * n);
        let mut x = [0.0f64; MAX_DIM];
        for _comp in 0..2 {
            for (flat, b) in base.iter().enumerate() {
                grid.point_coords(flat, &mut x);
                let modulation = 1.0 + eps * (kx * x[0] + phase).sin();
                vals.push(Complex64::new(scale * b * modulation, 0.0));
            }
        }
        family.push(Field::from_values(*grid, 2, vals).unwrap());
    }
    family
}

/// Smallest admissible eta for a family: max over members of
/// 1 / weighted_inf, so that eta * inf >= 1 holds family-wide.
pub fn family_eta(family: &[Field], n: usize) -> f64 {
    family
        .iter()
        .map(|u| weighted_inf(u, n).recip())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::params::{make_params, ParamOverrides};

    fn grid() -> GridSpec {
        GridSpec::new(1, 8.0, 128).unwrap()
    }

    fn params() -> ParamSet {
        make_params(1.0, 1, ParamOverrides::default()).unwrap()
    }

    #[test]
    fn commutator_residual_zero_field() {
        let r = commutator_residual(&Field::zero(grid(), 1), 1).unwrap();
        assert_eq!(r.linf_norm(), 0.0);
    }

    #[test]
    fn commutator_residual_constant_structure() {
        // for constant f, <i nabla> f = f, so R = <x>^{2l} f - <i nabla>(<x>^{2l} f)
        let f = Field::from_fn(grid(), 1, |_, _| Complex64::new(1.0, 0.0));
        let r = commutator_residual(&f, 1).unwrap();
        let direct = weight_multiply(&f, 2.0)
            .sub(&bessel_power(&weight_multiply(&f, 2.0), 1.0))
            .unwrap();
        assert!(r.sub(&direct).unwrap().linf_norm() < 1e-10);
        assert!(r.linf_norm() > 1e-3); // nonzero in general
    }

    #[test]
    fn linear_growth_ratio_is_one_at_t_zero() {
        let psi = schwartz_family(&grid(), 2, 1, 7).remove(0);
        let rep = linear_growth_diag(&psi, &params(), &[0.0, 0.05, 0.1]).unwrap();
        assert!((rep.ratios[0].ratio - 1.0).abs() < 1e-10);
        assert!(rep.max_ratio.is_finite());
    }

    #[test]
    fn small_time_slope_near_one() {
        let psi = schwartz_family(&grid(), 2, 1, 11).remove(0);
        let times: Vec<f64> = (2..8).map(|k| 0.5f64.powi(k)).collect();
        let rep = small_time_diag(&psi, &params(), &times).unwrap();
        let slope = rep.fitted_exponent.unwrap();
        assert!(slope > 0.95, "slope {slope}");
        // LHS/t bounded: ratios share one envelope constant
        assert!(rep.max_ratio.is_finite());
    }

    #[test]
    fn nonlinear_diag_zero_coupling_and_guards() {
        let g = grid();
        let p = params().with_mu(Complex64::new(1.0, 0.0), Complex64::default());
        let family = admissible_family(&g, p.n, 3, 13);
        let eta = family_eta(&family, p.n);
        let rep = nonlinear_ratio_diag(&family, &p, eta).unwrap();
        assert!(rep.max_ratio < 1e-14);
        // a family member violating the lower bound is rejected
        let mut bad = family.clone();
        bad.push(Field::zero(g, 2));
        assert!(matches!(
            nonlinear_ratio_diag(&bad, &p, eta),
            Err(Error::LowerBoundViolated { .. })
        ));
    }

    #[test]
    fn nonlinear_diag_bounded_on_admissible_family() {
        let g = grid();
        let p = params();
        let family = admissible_family(&g, p.n, 4, 17);
        let eta = family_eta(&family, p.n);
        let rep = nonlinear_ratio_diag(&family, &p, eta).unwrap();
        assert!(rep.max_ratio.is_finite() && rep.max_ratio > 0.0);
        // identical members are skipped, not divided by zero
        let dup = vec![family[0].clone(), family[0].clone()];
        let rep2 = nonlinear_ratio_diag(&dup, &p, eta).unwrap();
        assert!(rep2.ratios.iter().all(|s| s.ratio.is_finite()));
    }

    #[test]
    fn csv_round_trip_shape() {
        let rep = EstimateReport::from_samples(
            2,
            vec![RatioSample {
                input_id: "0".into(),
                t_or_pair: "size".into(),
                lhs: 1.0,
                rhs: 2.0,
                ratio: 0.5,
            }],
            Some(1.0),
        );
        let csv = rep.to_csv();
        assert!(csv.starts_with("input_id,"));
        assert!(csv.contains("# family_size=2"));
    }

    #[test]
    fn periodized_bracket_is_resolved() {
        let g = grid();
        let base = periodized_bracket(&g, 2.0);
        let vals: Vec<Complex64> = base.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let f = Field::from_values(g, 1, vals).unwrap();
        assert!(f.spectral_tail_fraction() < 1e-8, "tail {}", f.spectral_tail_fraction());
        // stays within the image-tail of the free-space profile at the center
        let center = g.len() / 2;
        assert!((f.physical_data()[center].re - 1.0).abs() < 0.02);
    }
}
