use crgeom::curvature::{decompose, k_theta, space_form_curvature};
use crgeom::inequality::{kato_e_pointwise, okumura, SLACK_TOL};
use crgeom::rigidity::{comparison_check, threshold, Theorem};
use crgeom::tensor::json::{from_value, webster_to_value, TensorDocument};
use crgeom::tensor::random_webster;
use crgeom::Complex64;
use proptest::prelude::*;

fn centred(v: Vec<f64>) -> Vec<f64> {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    let mut v: Vec<f64> = v.into_iter().map(|x| x - mean).collect();
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
    v
}

proptest! {
    #[test]
    fn okumura_holds(v in prop::collection::vec(-1e3..1e3f64, 2..12)) {
        let a = centred(v);
        prop_assume!(a.iter().any(|x| *x != 0.0));
        let r = okumura(&a).unwrap();
        prop_assert!(!r.violates(SLACK_TOL), "{r:?}");
    }

    #[test]
    fn kato_pointwise_holds(
        raw in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64), 2..8),
        g in 0usize..8,
    ) {
        let n = raw.len();
        let lambda = centred(raw.iter().map(|t| t.0).collect());
        let re = centred(raw.iter().map(|t| t.1).collect());
        let im = centred(raw.iter().map(|t| t.2).collect());
        let mu: Vec<Complex64> = re.into_iter().zip(im).map(|(r, i)| Complex64::new(r, i)).collect();
        let r = kato_e_pointwise(&lambda, &mu, g % n).unwrap();
        prop_assert!(!r.violates(SLACK_TOL), "{r:?}");
    }

    #[test]
    fn decomposition_is_linear(n in 2usize..5, seed in 0u64..10_000, s in -50.0..50.0f64) {
        let r = random_webster(n, seed, false).unwrap();
        let d = decompose(&r).unwrap();
        let ds = decompose(&r.scaled(s)).unwrap();
        let tol = 1e-12 * (1.0 + s.abs()) * r.max_abs();
        prop_assert!(ds.chern_moser.max_abs_diff(&d.chern_moser.scaled(s)) <= tol);
        prop_assert!((ds.scalar - s * d.scalar).abs() <= tol * n as f64);
    }

    #[test]
    fn webster_json_round_trip(n in 2usize..5, seed in 0u64..10_000) {
        let r = random_webster(n, seed, seed % 2 == 0).unwrap();
        let TensorDocument::Webster(back) = from_value(&webster_to_value(&r)).unwrap() else {
            panic!("kind changed");
        };
        // parsing re-projects onto the symmetries, which may move the last bit
        prop_assert!(back.max_abs_diff(&r) <= 1e-15 * r.max_abs());
    }

    #[test]
    fn space_form_k_theta(n in 2usize..6, kappa in -5.0..5.0f64, z in prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), 5)) {
        let z: Vec<Complex64> = z.into_iter().take(n).map(|(a, b)| Complex64::new(a, b)).collect();
        prop_assume!(z.iter().map(|c| c.norm_sqr()).sum::<f64>() > 1e-6);
        let r = space_form_curvature(n, kappa).unwrap();
        prop_assert!((k_theta(&r, &z).unwrap() - kappa).abs() <= 1e-12 * (1.0 + kappa.abs()));
    }

    #[test]
    fn sigma_thresholds_fall_after_two(n in 2usize..40, s in 2.0..50.0f64, ds in 1e-3..5.0f64) {
        for t in [Theorem::Ctm3, Theorem::Dtm2] {
            let a = threshold(t, n, Some(s)).unwrap().coefficient;
            let b = threshold(t, n, Some(s + ds)).unwrap().coefficient;
            prop_assert!(b < a, "{t} n={n}: {a} then {b}");
        }
    }

    #[test]
    fn comparison_holds_for_large_n(n in 10_000usize..10_000_000) {
        prop_assert!(comparison_check(n).unwrap().slack >= 0.0);
    }
}
