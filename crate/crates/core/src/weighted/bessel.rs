//! Convolution kernel of the smoothing operator <i nabla>^{-1}, from its
//! heat-kernel integral representation.

use crate::error::{Error, Result};

/// G(x) = (1/2pi) Int_0^inf exp(-pi |x|^2/th - th/(4 pi)) th^{-1-(N-1)/2} dth,
/// evaluated by adaptive Simpson quadrature on the log axis to relative
/// tolerance 1e-8. Requires x_abs > 0: the kernel is singular at the origin
/// for N >= 2 (logarithmically for N = 1).
pub fn bessel_kernel(x_abs: f64, dim: usize) -> Result<f64> {
    if !(x_abs > 0.0) {
        return Err(Error::Validation(format!(
            "kernel argument must be positive, got {x_abs}"
        )));
    }
    let nu = (dim as f64 - 1.0) / 2.0;
    // substitute th = e^s; both exponential factors die double-exponentially
    // outside [s_lo, s_hi]
    let h = |s: f64| {
        (-std::f64::consts::PI * x_abs * x_abs * (-s).exp()
            - s.exp() / (4.0 * std::f64::consts::PI)
            - nu * s)
            .exp()
    };
    let s_lo = (std::f64::consts::PI * x_abs * x_abs / 750.0).ln();
    let s_hi = (3000.0 * std::f64::consts::PI).ln();
    if s_lo >= s_hi {
        return Ok(0.0); // |x| astronomically large; the integral underflows
    }
    let integral = adaptive_simpson(&h, s_lo, s_hi, 1e-8)?;
    Ok(integral / (2.0 * std::f64::consts::PI))
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

/// Adaptive Simpson with a global relative tolerance; the scale is set by a
/// coarse composite pass so the per-interval targets are absolute.
fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, rel_tol: f64) -> Result<f64> {
    let panels = 64;
    let hstep = (b - a) / panels as f64;
    let mut rough = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * hstep;
        let x1 = x0 + hstep;
        rough += (hstep / 6.0) * (f(x0) + 4.0 * f(0.5 * (x0 + x1)) + f(x1));
    }
    let scale = rough.abs().max(f64::MIN_POSITIVE);
    let eps = rel_tol * scale;
    let mut total = 0.0;
    for i in 0..panels {
        let x0 = a + i as f64 * hstep;
        let x1 = x0 + hstep;
        let xm = 0.5 * (x0 + x1);
        total += recurse(f, x0, x1, f(x0), f(xm), f(x1), eps / panels as f64, 48)?;
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    eps: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let whole = simpson(a, b, fa, fm, fb);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::QuadratureFail);
    }
    Ok(recurse(f, a, m, fa, flm, fm, eps / 2.0, depth - 1)?
        + recurse(f, m, b, fm, frm, fb, eps / 2.0, depth - 1)?)
}
