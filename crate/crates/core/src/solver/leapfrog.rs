//! Independent second-order oracle for the scalar wave problem
//! w_tt = Laplacian w - mu1 w + mu2 |w|^alpha w.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operators::nonlinear::kg_rhs;
use crate::operators::params::ParamSet;
use crate::spectral::{Field, FrequencyLattice};

/// Uniformly sampled second-order trajectory.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub dt: f64,
    pub times: Vec<f64>,
    pub states: Vec<Field>,
}

impl Trajectory {
    /// The stored state at time t, if t is (numerically) a step multiple.
    pub fn at_time(&self, t: f64) -> Option<&Field> {
        let idx = (t / self.dt).round() as usize;
        if idx < self.times.len() && (self.times[idx] - t).abs() < 1e-9 * self.dt.max(t.abs()) {
            Some(&self.states[idx])
        } else {
            None
        }
    }

    /// Discrete time derivative by centered differences (one-sided at the
    /// ends), for energy diagnostics.
    pub fn velocity(&self, idx: usize) -> Result<Field> {
        let n = self.states.len();
        let (a, b, scale) = if idx == 0 {
            (0, 1, self.dt)
        } else if idx == n - 1 {
            (n - 2, n - 1, self.dt)
        } else {
            (idx - 1, idx + 1, 2.0 * self.dt)
        };
        Ok(self.states[b]
            .sub(&self.states[a])?
            .scale(Complex64::new(1.0 / scale, 0.0)))
    }
}

/// Explicit second-difference stepper with spectral spatial operators.
/// First step seeded by the Taylor expansion
/// w(dt) = w0 + dt w1 + dt^2/2 (Laplacian w0 - mu1 w0 + mu2 |w0|^alpha w0).
pub fn leapfrog_kg(w0: &Field, w1: &Field, p: &ParamSet, dt: f64, t_end: f64) -> Result<Trajectory> {
    if w0.grid() != w1.grid() {
        return Err(Error::GridMismatch);
    }
    let lat = FrequencyLattice::new(*w0.grid());
    let bound = 2.0 / lat.max_bracket();
    if !(dt > 0.0) || dt >= bound {
        return Err(Error::UnstableStep { dt, bound });
    }
    let steps = (t_end / dt).round() as usize;
    let mut states = Vec::with_capacity(steps + 1);
    let mut times = Vec::with_capacity(steps + 1);
    states.push(w0.with_both());
    times.push(0.0);
    if steps == 0 {
        return Ok(Trajectory { dt, times, states });
    }
    let acc0 = kg_rhs(w0, p)?;
    let first = Field::linear_combination(
        &[
            Complex64::new(1.0, 0.0),
            Complex64::new(dt, 0.0),
            Complex64::new(0.5 * dt * dt, 0.0),
        ],
        &[w0, w1, &acc0],
    )?;
    states.push(first.with_both());
    times.push(dt);
    for k in 2..=steps {
        let acc = kg_rhs(&states[k - 1], p)?;
        let next = Field::linear_combination(
            &[
                Complex64::new(2.0, 0.0),
                Complex64::new(-1.0, 0.0),
                Complex64::new(dt * dt, 0.0),
            ],
            &[&states[k - 1], &states[k - 2], &acc],
        )?;
        states.push(next.with_both());
        times.push(k as f64 * dt);
    }
    Ok(Trajectory { dt, times, states })
}

/// E(t) = Int (|w_t|^2 + |grad w|^2 + Re mu1 |w|^2)/2
///        - Re mu2/(alpha+2) Int |w|^{alpha+2}.
pub fn kg_energy(w: &Field, w_t: &Field, p: &ParamSet) -> Result<f64> {
    let grad_sq: f64 = (0..w.grid().dim())
        .map(|ax| {
            let mut beta = [0usize; 3];
            beta[ax] = 1;
            crate::spectral::spectral_derivative(w, &beta, 1)
                .map(|d| d.l2_norm().powi(2))
        })
        .sum::<Result<f64>>()?;
    let kinetic = w_t.l2_norm().powi(2);
    let mass = w.l2_norm().powi(2);
    let pot: f64 = w
        .pointwise_norm()
        .iter()
        .map(|&r| r.powf(p.alpha + 2.0))
        .sum::<f64>()
        * w.grid().cell_volume();
    Ok(0.5 * (kinetic + grad_sq + p.mu1.re * mass) - p.mu2.re / (p.alpha + 2.0) * pot)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::params::{make_params, ParamOverrides};
    use crate::spectral::GridSpec;

    fn grid() -> GridSpec {
        GridSpec::new(1, 8.0, 64).unwrap()
    }

    #[test]
    fn unstable_step_rejected() {
        let g = grid();
        let p = make_params(1.0, 1, ParamOverrides::default()).unwrap();
        let w0 = Field::zero(g, 1);
        let r = leapfrog_kg(&w0, &w0, &p, 1.0, 2.0);
        assert!(matches!(r, Err(Error::UnstableStep { .. })));
    }

    #[test]
    fn linear_plane_wave_matches_exact_solution() {
        // mu2 = 0, w0 = e^{i xi0 x}, w1 = 0: w(t) = cos(t <xi0>) e^{i xi0 x}
        let g = grid();
        let p = make_params(1.0, 1, ParamOverrides::default())
            .unwrap()
            .with_mu(Complex64::new(1.0, 0.0), Complex64::default());
        let xi0 = 3.0 * std::f64::consts::PI / 8.0;
        let w0 = Field::from_fn(g, 1, |x, _| Complex64::new(0.0, xi0 * x[0]).exp());
        let w1 = Field::zero(g, 1);
        let dt = 5e-4;
        let t_end = 0.5;
        let traj = leapfrog_kg(&w0, &w1, &p, dt, t_end).unwrap();
        let bracket = (1.0 + xi0 * xi0).sqrt();
        let exact = w0.scale(Complex64::new((t_end * bracket).cos(), 0.0));
        let gap = traj.at_time(t_end).unwrap().sub(&exact).unwrap().linf_norm();
        // O(dt^2) accuracy with an O(1) constant at these frequencies
        assert!(gap < 100.0 * dt * dt, "gap {gap}");
    }

    #[test]
    fn self_convergence_is_second_order() {
        let g = grid();
        let p = make_params(2.0, 1, ParamOverrides::default()).unwrap();
        let w0 = Field::from_fn(g, 1, |x, _| Complex64::new(0.8 * (-x[0] * x[0]).exp(), 0.0));
        let w1 = Field::from_fn(g, 1, |x, _| {
            Complex64::new(0.0, 0.2 * (-x[0] * x[0] / 2.0).exp())
        });
        let t_end = 0.2;
        let run = |dt: f64| {
            leapfrog_kg(&w0, &w1, &p, dt, t_end)
                .unwrap()
                .at_time(t_end)
                .unwrap()
                .clone()
        };
        let coarse = run(4e-3);
        let mid = run(2e-3);
        let fine = run(1e-3);
        let e1 = coarse.sub(&mid).unwrap().l2_norm();
        let e2 = mid.sub(&fine).unwrap().l2_norm();
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.2, "ratio {ratio}");
    }

    #[test]
    fn energy_drift_is_small() {
        let g = grid();
        let p = make_params(2.0, 1, ParamOverrides::default())
            .unwrap()
            .with_mu(Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0));
        let w0 = Field::from_fn(g, 1, |x, _| Complex64::new(0.5 * (-x[0] * x[0]).exp(), 0.0));
        let w1 = Field::zero(g, 1);
        let dt = 2e-4;
        let traj = leapfrog_kg(&w0, &w1, &p, dt, 1.0).unwrap();
        let n = traj.states.len();
        let e_start = kg_energy(&traj.states[1], &traj.velocity(1).unwrap(), &p).unwrap();
        let mut max_drift = 0.0f64;
        for idx in (1..n - 1).step_by(250) {
            let e = kg_energy(&traj.states[idx], &traj.velocity(idx).unwrap(), &p).unwrap();
            max_drift = max_drift.max((e - e_start).abs());
        }
        assert!(max_drift < 1e-6 * e_start.abs(), "drift {max_drift} vs {e_start}");
    }
}
