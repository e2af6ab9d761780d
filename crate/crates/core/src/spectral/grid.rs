use crate::error::{Error, Result};

/// Maximum spatial dimension supported by the grid machinery.
pub const MAX_DIM: usize = 3;

/// Periodic truncation of R^N to the box [-L, L)^N with M points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    dim: usize,
    half_length: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(dim: usize, half_length: f64, points: usize) -> Result<Self> {
        if dim < 1 || dim > MAX_DIM {
            return Err(Error::Validation(format!(
                "grid dimension must be in 1..={MAX_DIM}, got {dim}"
            )));
        }
        if !(half_length > 0.0) {
            return Err(Error::Validation(format!(
                "half_length must be positive, got {half_length}"
            )));
        }
        if points < 8 || !points.is_power_of_two() {
            return Err(Error::Validation(format!(
                "points per axis must be a power of two >= 8, got {points}"
            )));
        }
        Ok(Self {
            dim,
            half_length,
            points,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn points(&self) -> usize {
        self.points
    }

    /// Total number of lattice points M^N.
    pub fn len(&self) -> usize {
        self.points.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing per axis.
    pub fn dx(&self) -> f64 {
        2.0 * self.half_length / self.points as f64
    }

    /// dx^N, the quadrature weight of one lattice cell.
    pub fn cell_volume(&self) -> f64 {
        self.dx().powi(self.dim as i32)
    }

    /// Physical coordinates along one axis: x_j = -L + j dx.
    pub fn axis_coords(&self) -> Vec<f64> {
        let dx = self.dx();
        (0..self.points)
            .map(|j| -self.half_length + j as f64 * dx)
            .collect()
    }

    /// Frequencies along one axis in FFT storage order:
    /// index j maps to xi = (pi/L) * j for j < M/2, (pi/L) * (j - M) otherwise.
    /// The Nyquist mode j = M/2 is retained with its negative frequency.
    pub fn axis_freqs(&self) -> Vec<f64> {
        let scale = std::f64::consts::PI / self.half_length;
        (0..self.points)
            .map(|j| {
                let signed = if j < self.points / 2 {
                    j as isize
                } else {
                    j as isize - self.points as isize
                };
                scale * signed as f64
            })
            .collect()
    }

    /// Decompose a flat index into per-axis indices (row-major, last axis fastest).
    pub fn unravel(&self, mut flat: usize, out: &mut [usize; MAX_DIM]) {
        for axis in (0..self.dim).rev() {
            out[axis] = flat % self.points;
            flat /= self.points;
        }
    }

    /// Physical coordinates of a flat lattice index.
    pub fn point_coords(&self, flat: usize, out: &mut [f64; MAX_DIM]) {
        let mut idx = [0usize; MAX_DIM];
        self.unravel(flat, &mut idx);
        let dx = self.dx();
        for axis in 0..self.dim {
            out[axis] = -self.half_length + idx[axis] as f64 * dx;
        }
    }
}

/// Frequency lattice with precomputed Japanese brackets <xi> = (1+|xi|^2)^{1/2}.
#[derive(Debug, Clone)]
pub struct FrequencyLattice {
    grid: GridSpec,
    axis: Vec<f64>,
    bracket: Vec<f64>,
}

impl FrequencyLattice {
    pub fn new(grid: GridSpec) -> Self {
        let axis = grid.axis_freqs();
        let n = grid.len();
        let mut bracket = Vec::with_capacity(n);
        let mut idx = [0usize; MAX_DIM];
        for flat in 0..n {
            grid.unravel(flat, &mut idx);
            let mut sq = 0.0;
            for a in 0..grid.dim() {
                let xi = axis[idx[a]];
                sq += xi * xi;
            }
            bracket.push((1.0 + sq).sqrt());
        }
        Self {
            grid,
            axis,
            bracket,
        }
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    /// Per-axis frequencies in FFT storage order.
    pub fn axis_freqs(&self) -> &[f64] {
        &self.axis
    }

    /// <xi> at a flat lattice index.
    pub fn bracket(&self, flat: usize) -> f64 {
        self.bracket[flat]
    }

    /// Frequency vector of a flat lattice index.
    pub fn freq(&self, flat: usize, out: &mut [f64; MAX_DIM]) {
        let mut idx = [0usize; MAX_DIM];
        self.grid.unravel(flat, &mut idx);
        for a in 0..self.grid.dim() {
            out[a] = self.axis[idx[a]];
        }
    }

    /// Largest <xi> on the lattice.
    pub fn max_bracket(&self) -> f64 {
        self.bracket.iter().cloned().fold(1.0, f64::max)
    }
}

/// Enumerate all multi-indices beta in N variables with |beta| <= max_order.
/// Unused trailing axes are zero.
pub fn multi_indices(dim: usize, max_order: usize) -> Vec<[usize; MAX_DIM]> {
    let mut out = Vec::new();
    match dim {
        1 => {
            for a in 0..=max_order {
                out.push([a, 0, 0]);
            }
        }
        2 => {
            for total in 0..=max_order {
                for a in 0..=total {
                    out.push([a, total - a, 0]);
                }
            }
        }
        3 => {
            for total in 0..=max_order {
                for a in 0..=total {
                    for b in 0..=(total - a) {
                        out.push([a, b, total - a - b]);
                    }
                }
            }
        }
        _ => unreachable!("dim validated by GridSpec"),
    }
    out
}

/// |beta| of a multi-index.
pub fn order(beta: &[usize; MAX_DIM]) -> usize {
    beta.iter().sum()
}
