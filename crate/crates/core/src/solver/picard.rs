//! Fixed-point solver for the Duhamel integral equation
//! u(t) = e^{-itA} u0 - i Int_0^t e^{-i(t-s)A} F(u(s)) ds,
//! shared by the half-wave system and the Dirac equation.

use num_complex::Complex64;

use super::quadrature::gauss_legendre;
use crate::clifford::DiracAlgebra;
use crate::error::{Error, Result};
use crate::operators::groups::{dirac_group, halfwave_group, system_to_kg};
use crate::operators::nonlinear::{dirac_nonlinearity, nonlinearity_l, nonlinearity_n};
use crate::operators::params::ParamSet;
use crate::spectral::Field;
use crate::weighted::{weighted_inf, x_norm_unchecked};

/// Number of collocation times carried per iterate.
pub const COLLOCATION_POINTS: usize = 17;

/// Discretization of the fixed-point map.
#[derive(Debug, Clone)]
pub struct PicardConfig {
    pub horizon: f64,
    pub quad_nodes: usize,
    pub tol: f64,
    pub max_iters: usize,
    /// empty: report the internal collocation times
    pub snapshot_times: Vec<f64>,
    /// Some(eta): require eta * weighted_inf >= 1 of every iterate, the
    /// admissible-set condition of the contraction argument
    pub lower_bound_eta: Option<f64>,
}

impl PicardConfig {
    pub fn new(horizon: f64) -> Self {
        Self {
            horizon,
            quad_nodes: 16,
            tol: 1e-8,
            max_iters: 60,
            snapshot_times: Vec::new(),
            lower_bound_eta: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.horizon > 0.0) {
            return Err(Error::Validation(format!(
                "horizon must be positive, got {}",
                self.horizon
            )));
        }
        if self.quad_nodes < 8 {
            return Err(Error::Validation(format!(
                "at least 8 quadrature nodes required, got {}",
                self.quad_nodes
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Validation(format!(
                "tolerance must be positive, got {}",
                self.tol
            )));
        }
        for &t in &self.snapshot_times {
            if !(0.0..=self.horizon * (1.0 + 1e-12)).contains(&t) {
                return Err(Error::Validation(format!(
                    "snapshot time {t} outside [0, {}]",
                    self.horizon
                )));
            }
        }
        Ok(())
    }
}

/// The computed witness that the solution stays bounded away from zero.
#[derive(Debug, Clone, Copy)]
pub struct Certificate {
    pub t1: f64,
    pub eta: f64,
    pub verdict: bool,
}

/// Everything a solve produces.
#[derive(Debug, Clone)]
pub struct SolveReport {
    pub snapshots: Vec<(f64, Field)>,
    pub picard_history: Vec<f64>,
    pub contraction_factors: Vec<f64>,
    pub iterations: usize,
    pub inf_curve: Vec<(f64, f64)>,
    pub norm_curve: Vec<(f64, f64)>,
    pub certificate: Option<Certificate>,
    pub oracle_gap: Option<f64>,
}

/// One first-order evolution problem: a linear group and a forcing.
pub trait System {
    fn group(&self, u: &Field, t: f64) -> Result<Field>;
    fn forcing(&self, u: &Field) -> Result<Field>;
    /// The physically observed field whose weighted infimum is certified.
    fn observable(&self, u: &Field) -> Result<Field>;
}

/// The 2-component half-wave reformulation of the scalar wave problem.
pub struct HalfwaveSystem<'a> {
    pub p: &'a ParamSet,
}

impl System for HalfwaveSystem<'_> {
    fn group(&self, u: &Field, t: f64) -> Result<Field> {
        halfwave_group(u, t)
    }

    fn forcing(&self, u: &Field) -> Result<Field> {
        let l = nonlinearity_l(u, self.p)?;
        let n = nonlinearity_n(u, self.p)?;
        l.add(&n)
    }

    fn observable(&self, u: &Field) -> Result<Field> {
        system_to_kg(u)
    }
}

/// The Dirac equation with its power nonlinearity.
pub struct DiracSystem<'a> {
    pub p: &'a ParamSet,
    pub algebra: &'a DiracAlgebra,
}

impl System for DiracSystem<'_> {
    fn group(&self, u: &Field, t: f64) -> Result<Field> {
        dirac_group(u, t, self.algebra)
    }

    fn forcing(&self, u: &Field) -> Result<Field> {
        dirac_nonlinearity(u, self.p)
    }

    fn observable(&self, u: &Field) -> Result<Field> {
        Ok(u.clone())
    }
}

/// Chebyshev-Lobatto collocation times on [0, T].
pub fn collocation_times(horizon: f64, count: usize) -> Vec<f64> {
    (0..count)
        .map(|i| {
            0.5 * horizon
                * (1.0 - (std::f64::consts::PI * i as f64 / (count - 1) as f64).cos())
        })
        .collect()
}

/// Barycentric interpolation weights for arbitrary nodes.
fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    let scale = 4.0 / (nodes.last().unwrap() - nodes[0]).abs();
    nodes
        .iter()
        .enumerate()
        .map(|(i, &ti)| {
            let mut w = 1.0;
            for (j, &tj) in nodes.iter().enumerate() {
                if i != j {
                    w *= (ti - tj) * scale;
                }
            }
            w.recip()
        })
        .collect()
}

/// Interpolate a time-sampled family of fields at time s.
fn interpolate(
    nodes: &[f64],
    weights: &[f64],
    fields: &[Field],
    s: f64,
) -> Result<Field> {
    for (i, &t) in nodes.iter().enumerate() {
        if (s - t).abs() < 1e-14 * nodes.last().unwrap().max(1e-300) {
            return Ok(fields[i].clone());
        }
    }
    let raw: Vec<f64> = nodes
        .iter()
        .zip(weights)
        .map(|(&t, &w)| w / (s - t))
        .collect();
    let denom: f64 = raw.iter().sum();
    let coeffs: Vec<Complex64> = raw
        .iter()
        .map(|&c| Complex64::new(c / denom, 0.0))
        .collect();
    let refs: Vec<&Field> = fields.iter().collect();
    Field::linear_combination(&coeffs, &refs)
}

struct Engine<'a, S: System> {
    system: &'a S,
    p: &'a ParamSet,
    cfg: &'a PicardConfig,
    times: Vec<f64>,
    weights: Vec<f64>,
    gl_nodes: Vec<f64>,
    gl_weights: Vec<f64>,
}

impl<'a, S: System> Engine<'a, S> {
    fn new(system: &'a S, p: &'a ParamSet, cfg: &'a PicardConfig) -> Self {
        let times = collocation_times(cfg.horizon, COLLOCATION_POINTS);
        let weights = barycentric_weights(&times);
        let (gl_nodes, gl_weights) = gauss_legendre(cfg.quad_nodes);
        Self {
            system,
            p,
            cfg,
            times,
            weights,
            gl_nodes,
            gl_weights,
        }
    }

    /// e^{-itA} u0 - i Int_0^t e^{-i(t-s)A} g(s) ds with g interpolated from
    /// its collocation samples.
    fn duhamel(&self, u0: &Field, g: &[Field], t: f64) -> Result<Field> {
        let free = self.system.group(u0, t)?;
        if t == 0.0 {
            return Ok(free);
        }
        let mut coeffs = vec![Complex64::new(1.0, 0.0)];
        let mut fields = vec![free];
        let half = 0.5 * t;
        for (&x, &w) in self.gl_nodes.iter().zip(&self.gl_weights) {
            let s = half + half * x;
            let gs = interpolate(&self.times, &self.weights, g, s)?;
            fields.push(self.system.group(&gs, t - s)?);
            coeffs.push(Complex64::new(0.0, -half * w));
        }
        let refs: Vec<&Field> = fields.iter().collect();
        Field::linear_combination(&coeffs, &refs)
    }

    fn solve(&self, u0: &Field) -> Result<SolveReport> {
        self.cfg.validate()?;
        let mut iterate: Vec<Field> = self
            .times
            .iter()
            .map(|&t| self.system.group(u0, t))
            .collect::<Result<_>>()?;
        let mut history = Vec::new();
        let mut factors = Vec::new();
        let mut converged = false;
        let mut iterations = 0;
        for _iter in 0..self.cfg.max_iters {
            iterations += 1;
            let g: Vec<Field> = iterate
                .iter()
                .map(|u| Ok(self.system.forcing(u)?.with_both()))
                .collect::<Result<_>>()?;
            let next: Vec<Field> = self
                .times
                .iter()
                .map(|&t| self.duhamel(u0, &g, t))
                .collect::<Result<_>>()?;
            let mut dist = 0.0f64;
            for (a, b) in next.iter().zip(&iterate) {
                dist = dist.max(x_norm_unchecked(&a.sub(b)?, self.p)?.total);
            }
            if let Some(&prev) = history.last() {
                if prev > 0.0 {
                    factors.push(dist / prev);
                }
            }
            history.push(dist);
            if let Some(eta) = self.cfg.lower_bound_eta {
                for (&t, u) in self.times.iter().zip(&next) {
                    let inf = weighted_inf(u, self.p.n);
                    if eta * inf < 1.0 - 1e-9 {
                        return Err(Error::LowerBoundLost {
                            t,
                            inf,
                            required: 1.0 / eta,
                        });
                    }
                }
            }
            iterate = next;
            if dist < self.cfg.tol {
                converged = true;
                break;
            }
        }
        if !converged {
            let last_factor = factors.last().copied().unwrap_or(f64::INFINITY);
            return Err(Error::NoConvergence {
                iters: iterations,
                last_factor,
            });
        }

        // final forcing samples drive the snapshot evaluations
        let g: Vec<Field> = iterate
            .iter()
            .map(|u| Ok(self.system.forcing(u)?.with_both()))
            .collect::<Result<_>>()?;
        let snapshot_times: Vec<f64> = if self.cfg.snapshot_times.is_empty() {
            self.times.clone()
        } else {
            self.cfg.snapshot_times.clone()
        };
        let mut snapshots = Vec::with_capacity(snapshot_times.len());
        for &t in &snapshot_times {
            snapshots.push((t, self.duhamel(u0, &g, t)?));
        }
        let mut inf_curve = Vec::with_capacity(self.times.len());
        let mut norm_curve = Vec::with_capacity(self.times.len());
        for (&t, u) in self.times.iter().zip(&iterate) {
            let obs = self.system.observable(u)?;
            inf_curve.push((t, weighted_inf(&obs, self.p.n)));
            norm_curve.push((t, x_norm_unchecked(u, self.p)?.total));
        }
        Ok(SolveReport {
            snapshots,
            picard_history: history,
            contraction_factors: factors,
            iterations,
            inf_curve,
            norm_curve,
            certificate: None,
            oracle_gap: None,
        })
    }
}

/// Fixed-point solve of the half-wave system.
pub fn picard_solve(u0: &Field, p: &ParamSet, cfg: &PicardConfig) -> Result<SolveReport> {
    if u0.components() != 2 {
        return Err(Error::ComponentMismatch {
            expected: 2,
            found: u0.components(),
        });
    }
    if weighted_inf(u0, p.n) <= 0.0 {
        return Err(Error::DegenerateData);
    }
    let system = HalfwaveSystem { p };
    Engine::new(&system, p, cfg).solve(u0)
}

/// Fixed-point solve of the Dirac equation.
pub fn dirac_picard_solve(
    psi0: &Field,
    p: &ParamSet,
    algebra: &DiracAlgebra,
    cfg: &PicardConfig,
) -> Result<SolveReport> {
    if psi0.components() != algebra.spinor_size() {
        return Err(Error::AlgebraMismatch {
            field: psi0.components(),
            algebra: algebra.spinor_size(),
        });
    }
    if weighted_inf(psi0, p.n) <= 0.0 {
        return Err(Error::DegenerateData);
    }
    let system = DiracSystem { p, algebra };
    Engine::new(&system, p, cfg).solve(psi0)
}

/// Time-reflected system: if u solves i u_t = A u + F(u) for t <= 0, then
/// v(s) = u(-s) solves i v_s = -A v - F(v) for s >= 0, so solving the
/// reflected system forward covers the backward half of a two-sided run.
pub struct Reflected<S: System>(pub S);

impl<S: System> System for Reflected<S> {
    fn group(&self, u: &Field, t: f64) -> Result<Field> {
        self.0.group(u, -t)
    }

    fn forcing(&self, u: &Field) -> Result<Field> {
        Ok(self.0.forcing(u)?.scale(Complex64::new(-1.0, 0.0)))
    }

    fn observable(&self, u: &Field) -> Result<Field> {
        self.0.observable(u)
    }
}

/// Backward-in-time half-wave solve; reported times are the positive
/// reflected times s = -t.
pub fn picard_solve_backward(u0: &Field, p: &ParamSet, cfg: &PicardConfig) -> Result<SolveReport> {
    if u0.components() != 2 {
        return Err(Error::ComponentMismatch {
            expected: 2,
            found: u0.components(),
        });
    }
    if weighted_inf(u0, p.n) <= 0.0 {
        return Err(Error::DegenerateData);
    }
    let system = Reflected(HalfwaveSystem { p });
    Engine::new(&system, p, cfg).solve(u0)
}

/// Backward-in-time Dirac solve; reported times are the positive reflected
/// times s = -t.
pub fn dirac_picard_solve_backward(
    psi0: &Field,
    p: &ParamSet,
    algebra: &DiracAlgebra,
    cfg: &PicardConfig,
) -> Result<SolveReport> {
    if psi0.components() != algebra.spinor_size() {
        return Err(Error::AlgebraMismatch {
            field: psi0.components(),
            algebra: algebra.spinor_size(),
        });
    }
    if weighted_inf(psi0, p.n) <= 0.0 {
        return Err(Error::DegenerateData);
    }
    let system = Reflected(DiracSystem { p, algebra });
    Engine::new(&system, p, cfg).solve(psi0)
}

/// Seed choices for the uniqueness probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PicardSeed {
    /// u^{(0)}(t) = e^{-itA} u0, the default
    FreeFlow,
    /// u^{(0)}(t) = u0 frozen in time
    Frozen,
}

/// Run the half-wave fixed point from several admissible seeds and report
/// the maximal pairwise sup-in-time X-norm gap of the converged trajectories.
pub fn uniqueness_probe(
    u0: &Field,
    p: &ParamSet,
    cfg: &PicardConfig,
    seeds: &[PicardSeed],
) -> Result<f64> {
    let system = HalfwaveSystem { p };
    let engine = Engine::new(&system, p, cfg);
    let mut trajectories: Vec<Vec<Field>> = Vec::new();
    for &seed in seeds {
        let mut iterate: Vec<Field> = match seed {
            PicardSeed::FreeFlow => engine
                .times
                .iter()
                .map(|&t| system.group(u0, t))
                .collect::<Result<_>>()?,
            PicardSeed::Frozen => engine.times.iter().map(|_| u0.with_both()).collect(),
        };
        let mut converged = false;
        let mut prev_dist = f64::INFINITY;
        for _ in 0..cfg.max_iters {
            let g: Vec<Field> = iterate
                .iter()
                .map(|u| Ok(system.forcing(u)?.with_both()))
                .collect::<Result<_>>()?;
            let next: Vec<Field> = engine
                .times
                .iter()
                .map(|&t| engine.duhamel(u0, &g, t))
                .collect::<Result<_>>()?;
            let mut dist = 0.0f64;
            for (a, b) in next.iter().zip(&iterate) {
                dist = dist.max(x_norm_unchecked(&a.sub(b)?, p)?.total);
            }
            iterate = next;
            if dist < cfg.tol {
                converged = true;
                break;
            }
            prev_dist = dist;
        }
        if !converged {
            return Err(Error::NoConvergence {
                iters: cfg.max_iters,
                last_factor: prev_dist,
            });
        }
        trajectories.push(iterate);
    }
    let mut gap = 0.0f64;
    for i in 0..trajectories.len() {
        for j in (i + 1)..trajectories.len() {
            for (a, b) in trajectories[i].iter().zip(&trajectories[j]) {
                gap = gap.max(x_norm_unchecked(&a.sub(b)?, p)?.total);
            }
        }
    }
    Ok(gap)
}
