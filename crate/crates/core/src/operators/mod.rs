//! Equation-level building blocks: parameter selection, linear groups,
//! KG <-> first-order-system transforms, and the nonlinearities.

pub mod groups;
pub mod nonlinear;
pub mod params;

pub use groups::{
    bessel_power, dirac_group, halfwave_group, kg_to_system, recover_time_derivative,
    system_to_kg,
};
pub use nonlinear::{dirac_nonlinearity, frac_pow, kg_rhs, nonlinearity_l, nonlinearity_n};
pub use params::{make_params, ParamOverrides, ParamSet, SystemPair};
