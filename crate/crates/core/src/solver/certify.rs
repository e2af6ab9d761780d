//! The non-vanishing certificate: the witness pair (T1, eta) with
//! inf_x <x>^n |w(t, x)| >= eta for all 0 <= t <= T1.

use super::picard::{Certificate, SolveReport};
use crate::operators::params::ParamSet;

/// eta is half the initial weighted infimum; T1 is the largest reported time
/// up to which the infimum curve stays at or above eta. Fails (with T1 = 0)
/// when the initial infimum vanishes.
pub fn certify_nonvanishing(report: &SolveReport, p: &ParamSet) -> Certificate {
    let _ = p; // the curve was already computed with the weight exponent n
    let inf0 = report.inf_curve.first().map(|&(_, v)| v).unwrap_or(0.0);
    let eta = 0.5 * inf0;
    if !(eta > 0.0) {
        return Certificate {
            t1: 0.0,
            eta: 0.0,
            verdict: false,
        };
    }
    let mut t1 = 0.0;
    for &(t, v) in &report.inf_curve {
        if v >= eta {
            t1 = t;
        } else {
            break;
        }
    }
    Certificate {
        t1,
        eta,
        verdict: t1 > 0.0,
    }
}

/// Attach the certificate to a report.
pub fn with_certificate(mut report: SolveReport, p: &ParamSet) -> SolveReport {
    report.certificate = Some(certify_nonvanishing(&report, p));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::groups::kg_to_system;
    use crate::operators::params::{make_params, ParamOverrides};
    use crate::solver::picard::{picard_solve, PicardConfig};
    use crate::spectral::{Field, GridSpec};
    use crate::weighted::periodized_bracket;
    use num_complex::Complex64;

    #[test]
    fn linear_run_certifies_full_horizon() {
        let g = GridSpec::new(1, 8.0, 128).unwrap();
        let p = make_params(1.0, 1, ParamOverrides::default())
            .unwrap()
            .with_mu(Complex64::new(1.0, 0.0), Complex64::default());
        let base = periodized_bracket(&g, p.n as f64);
        let vals: Vec<Complex64> = base.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        let w0 = Field::from_values(g, 1, vals).unwrap();
        let w1 = Field::zero(g, 1);
        let u0 = kg_to_system(&w0, &w1).unwrap();
        let horizon = 0.01;
        let cfg = PicardConfig::new(horizon);
        let rep = picard_solve(&u0, &p, &cfg).unwrap();
        let cert = certify_nonvanishing(&rep, &p);
        assert!(cert.verdict);
        assert!((cert.t1 - horizon).abs() < 1e-14);
        // eta = half the initial infimum, about 1/2 for this profile
        assert!((cert.eta - 0.5 * rep.inf_curve[0].1).abs() < 1e-15);
        // halving the amplitude halves eta exactly
        let rep_half = picard_solve(&u0.scale(Complex64::new(0.5, 0.0)), &p, &cfg).unwrap();
        let cert_half = certify_nonvanishing(&rep_half, &p);
        assert!((cert_half.eta - 0.5 * cert.eta).abs() < 1e-12);
    }

    #[test]
    fn zero_infimum_fails_at_time_zero() {
        let rep = SolveReport {
            snapshots: vec![],
            picard_history: vec![],
            contraction_factors: vec![],
            iterations: 1,
            inf_curve: vec![(0.0, 0.0), (0.1, 0.3)],
            norm_curve: vec![],
            certificate: None,
            oracle_gap: None,
        };
        let p = make_params(1.0, 1, ParamOverrides::default()).unwrap();
        let cert = certify_nonvanishing(&rep, &p);
        assert!(!cert.verdict);
        assert_eq!(cert.eta, 0.0);
        assert_eq!(cert.t1, 0.0);
    }
}
