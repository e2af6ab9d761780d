//! Grids, transforms, Fourier multipliers, spectral derivatives and weights —
//! the numerical substrate for everything else.

mod fft;
mod field;
mod grid;
mod ops;

pub use field::{Field, SpaceTag};
pub use grid::{multi_indices, order, FrequencyLattice, GridSpec, MAX_DIM};
pub use ops::{
    apply_matrix_multiplier, apply_multiplier, forward_transform, inverse_transform,
    spectral_derivative, weight_multiply,
};
