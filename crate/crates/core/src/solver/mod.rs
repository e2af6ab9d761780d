//! Fixed-point solver, contraction parameters, independent oracle, and the
//! non-vanishing certificate.

mod certify;
mod contraction;
mod leapfrog;
mod picard;
mod quadrature;

pub use certify::{certify_nonvanishing, with_certificate};
pub use contraction::{contraction_params, ContractionParams};
pub use leapfrog::{kg_energy, leapfrog_kg, Trajectory};
pub use picard::{
    collocation_times, dirac_picard_solve, dirac_picard_solve_backward, picard_solve,
    picard_solve_backward, uniqueness_probe, Certificate, DiracSystem, HalfwaveSystem,
    PicardConfig, PicardSeed, Reflected, SolveReport, System, COLLOCATION_POINTS,
};
pub use quadrature::{gauss_legendre, gauss_legendre_on};
