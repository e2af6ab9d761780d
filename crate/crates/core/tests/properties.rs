//! Randomized invariants of the spectral core and the nonlinearity.

use num_complex::Complex64;
use proptest::prelude::*;

use nonvanish::operators::{frac_pow, make_params, ParamOverrides};
use nonvanish::operators::groups::{kg_to_system, recover_time_derivative, system_to_kg};
use nonvanish::spectral::{Field, GridSpec};
use nonvanish::weighted::x_norm_unchecked;

fn grid() -> GridSpec {
    GridSpec::new(1, 4.0, 32).unwrap()
}

fn field_values(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    proptest::collection::vec(
        (-1.0f64..1.0, -1.0f64..1.0).prop_map(|(re, im)| Complex64::new(re, im)),
        len,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn transform_is_unitary(vals in field_values(32)) {
        let f = Field::from_values(grid(), 1, vals).unwrap();
        // Parseval: the physical and spectral l2 norms agree
        let phys: f64 = f
            .physical_data()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        let spec: f64 = f
            .spectral_data()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt();
        prop_assert!((phys - spec).abs() <= 1e-12 * phys.max(1.0));
    }

    #[test]
    fn scalar_system_round_trip(w0v in field_values(32), w1v in field_values(32)) {
        let g = grid();
        let w0 = Field::from_values(g, 1, w0v).unwrap();
        let w1 = Field::from_values(g, 1, w1v).unwrap();
        let u = kg_to_system(&w0, &w1).unwrap();
        let w0b = system_to_kg(&u).unwrap();
        let w1b = recover_time_derivative(&u).unwrap();
        prop_assert!(w0b.sub(&w0).unwrap().linf_norm() <= 1e-12);
        prop_assert!(w1b.sub(&w1).unwrap().linf_norm() <= 1e-12);
    }

    #[test]
    fn frac_pow_magnitude_and_phase(re in -5.0f64..5.0, im in -5.0f64..5.0, alpha in 0.1f64..2.0) {
        let z = Complex64::new(re, im);
        prop_assume!(z.norm() > 1e-6);
        let w = frac_pow(z, alpha);
        // |z|^alpha z: magnitude is |z|^{alpha+1}, phase is unchanged
        prop_assert!((w.norm() - z.norm().powf(alpha + 1.0)).abs() <= 1e-10 * w.norm());
        prop_assert!((w / z.norm().powf(alpha) - z).norm() <= 1e-10 * z.norm());
    }

    #[test]
    fn norms_absolutely_homogeneous(vals in field_values(32), cre in -2.0f64..2.0, cim in -2.0f64..2.0) {
        let c = Complex64::new(cre, cim);
        let p = make_params(1.0, 1, ParamOverrides::default()).unwrap();
        let u = Field::from_values(grid(), 2, vals.iter().cycle().take(64).cloned().collect()).unwrap();
        let base = x_norm_unchecked(&u, &p).unwrap().total;
        let scaled = x_norm_unchecked(&u.scale(c), &p).unwrap().total;
        prop_assert!((scaled - c.norm() * base).abs() <= 1e-9 * base.max(1.0));
    }
}
