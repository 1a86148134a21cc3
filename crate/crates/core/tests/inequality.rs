use crgeom::curvature::f_decompose;
use crgeom::inequality::*;
use crgeom::rng::CounterRng;
use crgeom::tensor::{hermitian_eigen, random_traceless_hermitian, random_webster, WebsterTensor};
use crgeom::Complex64;

// Maximum of |Σa³| on the unit circle of centred triples, by a fine angular
// scan followed by golden refinement; independent of the closed form.
fn okumura_max_m3() -> f64 {
    let e1 = [1.0, -1.0, 0.0].map(|x: f64| x / 2f64.sqrt());
    let e2 = [1.0, 1.0, -2.0].map(|x: f64| x / 6f64.sqrt());
    let f = |t: f64| -> f64 {
        (0..3)
            .map(|i| (t.cos() * e1[i] + t.sin() * e2[i]).powi(3))
            .sum::<f64>()
            .abs()
    };
    let steps = 20_000;
    let h = std::f64::consts::TAU / steps as f64;
    let best = (0..steps).max_by(|&i, &j| f(i as f64 * h).total_cmp(&f(j as f64 * h))).unwrap();
    let (mut lo, mut hi) = ((best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    for _ in 0..100 {
        let x1 = hi - g * (hi - lo);
        let x2 = lo + g * (hi - lo);
        if f(x1) > f(x2) {
            hi = x2;
        } else {
            lo = x1;
        }
    }
    f(0.5 * (lo + hi))
}

#[test]
fn okumura_constant_matches_scan() {
    let r = okumura(&okumura_extremal(3, 1.0)).unwrap();
    assert!((r.rhs - okumura_max_m3()).abs() < 1e-12);
}

#[test]
fn okumura_equality_cases() {
    for m in 2..=12 {
        for k in [1e-3, 0.5, 1.0, 7.0] {
            let mut a = okumura_extremal(m, k);
            a.rotate_left(m / 2);
            let r = okumura(&a).unwrap();
            assert!(r.slack.abs() <= 1e-12 * r.scale, "m={m} k={k} slack {}", r.slack);
            let neg: Vec<f64> = a.iter().map(|x| -x).collect();
            let r = okumura(&neg).unwrap();
            assert!(r.slack.abs() <= 1e-12 * r.scale);
        }
    }
}

#[test]
fn okumura_random_search_never_beats_extremal() {
    let mut rng = CounterRng::for_sample(11, "okumura-search", 0);
    for m in 3..=7 {
        let bound = okumura(&okumura_extremal(m, 1.0)).unwrap().rhs;
        for _ in 0..2000 {
            let mut a: Vec<f64> = (0..m).map(|_| rng.symmetric()).collect();
            let mean = a.iter().sum::<f64>() / m as f64;
            a.iter_mut().for_each(|x| *x -= mean);
            let k = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let cube: f64 = a.iter().map(|x| (x / k).powi(3)).sum();
            assert!(cube.abs() <= bound + 1e-14);
        }
    }
}

#[test]
fn cubic_e_agrees_with_eigenvalues() {
    for n in 2..=6 {
        for seed in 0..10 {
            let e = random_traceless_hermitian(n, seed).unwrap();
            let eig = hermitian_eigen(e.hermitian()).unwrap();
            let trace: f64 = eig.values.iter().map(|v| v.powi(3)).sum();
            let r = cubic_e(&e).unwrap();
            assert!((r.lhs - trace.abs()).abs() <= 1e-12 * r.scale);
            // the bound is Okumura applied to the eigenvalues, with |E|² = 2Σλ²
            let ok = okumura(&eig.values).unwrap();
            assert!((r.rhs - ok.rhs * 2f64.sqrt().powi(3) / (2.0 * 2f64.sqrt())).abs() <= 1e-12 * r.scale);
            assert!(r.slack >= -SLACK_TOL * r.scale);
        }
    }
}

#[test]
fn z_bound_from_eigenvalues() {
    for n in 2..=6 {
        for seed in 0..10 {
            let e = random_traceless_hermitian(n, seed).unwrap();
            let eig = hermitian_eigen(e.hermitian()).unwrap();
            let z: f64 = eig.values.iter().map(|v| v.powi(4)).sum();
            let r = z_bound(&e).unwrap();
            assert!((r.lhs - z).abs() <= 1e-12 * r.scale);
            let l2: f64 = eig.values.iter().map(|v| v * v).sum();
            assert!((r.rhs - l2 * l2).abs() <= 1e-12 * r.scale);
        }
    }
}

#[test]
fn cm_cubic_routes_agree() {
    for n in 2..=5 {
        for seed in 0..8 {
            let c = random_webster(n, seed, true).unwrap();
            let routes = cm_cubic_routes(&c).unwrap();
            assert!(routes.route_discrepancy() <= 1e-10 * routes.record.scale);
            assert_eq!(routes.eigenvalues.len(), n * n);
        }
    }
    let full = random_webster(3, 1, false).unwrap();
    assert!(cm_cubic(&full).is_err());
}

#[test]
fn kato_e_pointwise_is_identity_at_n2() {
    let mut rng = CounterRng::for_sample(5, "kato-n2", 0);
    for i in 0..200 {
        let l = rng.symmetric();
        let m = Complex64::new(rng.symmetric(), rng.symmetric());
        let r = kato_e_pointwise(&[l, -l], &[m, -m], i % 2).unwrap();
        assert!(r.slack.abs() <= 1e-13 * r.scale.max(1e-300));
    }
}

#[test]
fn coupling_bound_rejects_traces() {
    let e = random_traceless_hermitian(3, 0).unwrap();
    let c = random_webster(3, 0, false).unwrap();
    assert!(coupling_bound(&e, &c).is_err());
    let c = random_webster(4, 0, true).unwrap();
    assert!(coupling_bound(&e, &c).is_err());
}

#[test]
fn reduced_plan_has_no_violations() {
    for entry in default_plan() {
        let sums = run_plan_entry(&entry, 0..2, NEAR_EQUALITY).unwrap();
        for s in sums {
            if entry.inequality.is_asserted() {
                assert_eq!(s.violations, 0, "{} n={}", s.inequality, s.n);
            }
            assert_eq!(s.count, 2 * entry.per_seed);
        }
    }
}

#[test]
fn kato_c_needs_trace_free_derivative() {
    let cfg = SampleConfig::new(2, 400, 0).unwrap();
    let with = run_samples(Inequality::KatoCWithTraces, &cfg).unwrap();
    let without = run_samples(Inequality::KatoC, &cfg).unwrap();
    assert!(with.violations > 0);
    assert!(with.min_slack_ratio.unwrap() < -0.05);
    assert_eq!(without.violations, 0);
}

#[test]
fn near_equality_witnesses_occur() {
    for n in 3..=6 {
        let cfg = SampleConfig::new(n, 100, 7).unwrap();
        let s = run_samples(Inequality::Okumura, &cfg).unwrap();
        assert!(s.near_equality >= 10);
        assert!(s.witnesses.iter().all(|w| !w.violation));
        for w in &s.witnesses {
            let a: Vec<f64> = serde_json::from_value(w.witness["a"].clone()).unwrap();
            assert!(okumura_shape_distance(&a) < 0.1);
        }
    }
}

#[test]
fn coupling_is_largest_along_t() {
    let mut rng = CounterRng::for_sample(3, "coupling-direction", 0);
    for n in 2..=5 {
        for seed in 0..5 {
            let e = random_traceless_hermitian(n, seed).unwrap();
            let t = f_decompose(&e).unwrap().t;
            let best = coupling_bound(&e, &t.scaled(1.0 / t.norm())).unwrap();
            for _ in 0..50 {
                let c = WebsterTensor::random(n, true, &mut rng);
                let r = coupling_bound(&e, &c.scaled(1.0 / c.norm())).unwrap();
                assert!(r.lhs <= best.lhs * (1.0 + 1e-12));
            }
            assert!(best.slack >= 0.0);
        }
    }
}

#[test]
fn summaries_do_not_depend_on_worker_count() {
    for id in Inequality::ALL {
        let cfg = SampleConfig::new(3, 60, 2).unwrap();
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let s = pool.install(|| run_samples(id, &cfg).unwrap());
            serde_json::to_string(&s).unwrap()
        };
        assert_eq!(run(1), run(3), "{}", id.id());
    }
}

#[test]
fn small_dimensions_are_rejected() {
    for id in Inequality::ALL {
        assert!(sample_record(id, 1, 0, 0).is_err());
    }
    assert!(okumura(&[f64::NAN, 0.0]).is_err());
    let _ = WebsterTensor::zeros(2);
}
