//! Internal n-dimensional FFT on flat row-major buffers, unitary normalization.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::grid::GridSpec;

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, bool), Arc<dyn Fft<f64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry((len, inverse))
        .or_insert_with(|| {
            let mut planner = FftPlanner::new();
            if inverse {
                planner.plan_fft_inverse(len)
            } else {
                planner.plan_fft_forward(len)
            }
        })
        .clone()
}

/// Transform a flat (row-major, last axis fastest) buffer of shape M^N in place.
/// Forward and inverse are both scaled by M^{-N/2} so the pair is unitary.
pub fn transform_nd(grid: &GridSpec, data: &mut [Complex64], inverse: bool) {
    let m = grid.points();
    let dim = grid.dim();
    debug_assert_eq!(data.len(), grid.len());
    let fft = plan(m, inverse);
    let mut line = vec![Complex64::default(); m];

    // Axis `axis` has stride m^(dim-1-axis).
    for axis in 0..dim {
        let stride = m.pow((dim - 1 - axis) as u32);
        let block = stride * m;
        let nblocks = data.len() / block;
        for b in 0..nblocks {
            for off in 0..stride {
                let base = b * block + off;
                for j in 0..m {
                    line[j] = data[base + j * stride];
                }
                fft.process(&mut line);
                for j in 0..m {
                    data[base + j * stride] = line[j];
                }
            }
        }
    }

    let scale = (m as f64).powi(dim as i32).sqrt().recip();
    for v in data.iter_mut() {
        *v *= scale;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_2d() {
        let grid = GridSpec::new(2, 4.0, 8).unwrap();
        let orig: Vec<Complex64> = (0..grid.len())
            .map(|i| Complex64::new((i as f64).sin(), (i as f64 * 0.3).cos()))
            .collect();
        let mut data = orig.clone();
        transform_nd(&grid, &mut data, false);
        transform_nd(&grid, &mut data, true);
        for (a, b) in orig.iter().zip(&data) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn parseval_unitary() {
        let grid = GridSpec::new(1, 4.0, 16).unwrap();
        let orig: Vec<Complex64> = (0..16)
            .map(|i| Complex64::new(i as f64, -(i as f64) * 0.5))
            .collect();
        let mut data = orig.clone();
        transform_nd(&grid, &mut data, false);
        let phys: f64 = orig.iter().map(|v| v.norm_sqr()).sum();
        let spec: f64 = data.iter().map(|v| v.norm_sqr()).sum();
        assert!((phys - spec).abs() < 1e-9 * phys);
    }
}
