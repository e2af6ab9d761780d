//! Pseudo-spectral simulation of non-vanishing solutions to the nonlinear
//! Klein-Gordon and Dirac equations: the half-wave first-order reformulation,
//! Picard iteration in weighted spaces, and a runtime certificate that the
//! solution stays bounded away from zero.

pub mod clifford;
pub mod error;
pub mod io;
pub mod limits;
pub mod operators;
pub mod solver;
pub mod spectral;
pub mod weighted;

pub use error::{Error, Result};
