use crgeom::curvature::*;
use crgeom::rng::CounterRng;
use crgeom::tensor::{
    hermitian_eigen, random_traceless_hermitian, random_webster, TracelessHermitianMatrix,
};
use crgeom::Complex64;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_vector(n: usize, rng: &mut CounterRng) -> Vec<Complex64> {
    (0..n).map(|_| c(rng.symmetric(), rng.symmetric())).collect()
}

#[test]
fn round_trip_and_orthogonality() {
    for n in 2..=5 {
        for seed in 0..20 {
            let r = random_webster(n, seed, false).unwrap();
            let d = decompose(&r).unwrap();
            let back = recompose(&d).unwrap();
            let scale = r.max_abs();
            assert!(back.max_abs_diff(&r) <= 1e-12 * scale);
            assert!(d.chern_moser.max_contraction() <= 1e-12 * scale);
            let (cn, pn, qn) = (
                d.chern_moser.norm(),
                d.ricci_part().norm(),
                d.scalar_part().norm(),
            );
            let total = r.norm().powi(2);
            assert!(d.max_cross_inner() <= 1e-10 * total);
            assert!((cn * cn + pn * pn + qn * qn - total).abs() <= 1e-10 * total);
            let again = decompose(&back).unwrap();
            assert!(again.chern_moser.max_abs_diff(&d.chern_moser) <= 1e-12 * scale);
            assert!((again.scalar - d.scalar).abs() <= 1e-12 * scale.max(d.scalar.abs()));
        }
    }
}

#[test]
fn recompose_of_pure_parts() {
    let n = 3;
    let kappa = 0.75;
    let d = CurvatureDecomposition {
        n,
        chern_moser: crgeom::tensor::WebsterTensor::zeros(n),
        traceless_ricci: TracelessHermitianMatrix::zeros(n),
        scalar: 2.0 * kappa * (n * (n + 1)) as f64,
    };
    let r = recompose(&d).unwrap();
    assert!(r.max_abs_diff(&space_form_curvature(n, kappa).unwrap()) < 1e-15);

    let cm = random_webster(n, 3, true).unwrap();
    let d = CurvatureDecomposition {
        n,
        chern_moser: cm.clone(),
        traceless_ricci: TracelessHermitianMatrix::zeros(n),
        scalar: 0.0,
    };
    assert!(recompose(&d).unwrap().max_abs_diff(&cm) < 1e-15);
}

#[test]
fn decompose_rejects_asymmetric_components() {
    let mut data = vec![c(0.0, 0.0); 16];
    data[1] = c(1.0, 0.0);
    assert!(decompose_components(2, data).is_err());
}

#[test]
fn k_theta_on_space_forms() {
    let mut rng = CounterRng::for_sample(0, "k-theta-test", 0);
    for (n, kappa) in [(2, 1.0), (3, -2.0), (4, 0.3)] {
        let r = space_form_curvature(n, kappa).unwrap();
        let mut e1 = vec![c(0.0, 0.0); n];
        e1[0] = c(1.0, 0.0);
        assert!((k_theta(&r, &e1).unwrap() - kappa).abs() < 1e-14);
        for _ in 0..20 {
            let z = random_vector(n, &mut rng);
            assert!((k_theta(&r, &z).unwrap() - kappa).abs() < 1e-13);
        }
        let s = 2.5;
        assert!((k_theta(&r.scaled(s), &e1).unwrap() - s * kappa).abs() < 1e-13);
    }
}

#[test]
fn j_sectional_curvature_of_space_form() {
    let mut rng = CounterRng::for_sample(0, "bridge-test", 1);
    for (n, kappa) in [(2, 1.0), (3, -0.5), (2, 0.0)] {
        let r = space_form_curvature(n, kappa).unwrap();
        for _ in 0..10 {
            let x = TangentVector::horizontal(&random_vector(n, &mut rng));
            let k = riemannian_sectional(&r, &x, &x.j()).unwrap();
            assert!((k - (4.0 * kappa - 3.0)).abs() < 1e-12, "{k}");
            let kt = riemannian_sectional(&r, &x, &TangentVector::reeb(n)).unwrap();
            assert!((kt - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn riemannian_ricci_relations() {
    for n in 2..=4 {
        let r = random_webster(n, 17, false).unwrap();
        let ric = r.ricci();
        for a in 0..n {
            for b in 0..n {
                let v = riemannian_ricci(&r, &TangentVector::eta(n, a), &TangentVector::eta_bar(n, b));
                let expect = ric.get(a, b) - if a == b { 2.0 } else { 0.0 };
                assert!((v - expect).norm() < 1e-12, "{v} vs {expect}");
                let hol = riemannian_ricci(&r, &TangentVector::eta(n, a), &TangentVector::eta(n, b));
                assert!(hol.norm() < 1e-12);
            }
            let mixed = riemannian_ricci(&r, &TangentVector::eta(n, a), &TangentVector::reeb(n));
            assert!(mixed.norm() < 1e-12);
        }
        let t = TangentVector::reeb(n);
        let v = riemannian_ricci(&r, &t, &t);
        assert!((v - c(2.0 * n as f64, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn bridge_antisymmetry() {
    let mut rng = CounterRng::for_sample(2, "bridge-test", 2);
    let n = 3;
    let r = random_webster(n, 4, false).unwrap();
    for _ in 0..10 {
        let mut v: Vec<TangentVector> = (0..4)
            .map(|_| {
                let mut t = TangentVector::horizontal(&random_vector(n, &mut rng));
                t.s = c(rng.symmetric(), 0.0);
                t
            })
            .collect();
        let w = v.pop().unwrap();
        let (x, y, z) = (&v[0], &v[1], &v[2]);
        let a = webster_to_riemannian(&r, x, y, z, &w);
        let scale = a.norm().max(1.0);
        assert!((a + webster_to_riemannian(&r, y, x, z, &w)).norm() < 1e-12 * scale);
        assert!((a + webster_to_riemannian(&r, x, y, &w, z)).norm() < 1e-12 * scale);
        // real vectors give real curvature
        assert!(a.im.abs() < 1e-12 * scale);
    }
}

#[test]
fn f_lemma_norm_identities() {
    for n in 2..=6 {
        for seed in 0..50 {
            let e = random_traceless_hermitian(n, seed).unwrap();
            let fd = f_decompose(&e).unwrap();
            let e2 = e.norm().powi(2);
            let e4 = e2 * e2;
            let nf = n as f64;
            // power-sum oracle for Z in the eigenbasis
            let eig = hermitian_eigen(e.hermitian()).unwrap();
            let z_oracle: f64 = eig.values.iter().map(|x| x.powi(4)).sum();
            assert!((fd.z - z_oracle).abs() <= 1e-12 * e4);
            assert!((fd.f - 0.5 * e2).abs() <= 1e-12 * e2);
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1e-300);
            assert!(rel(0.25 * fd.f_tensor.norm().powi(2), 0.5 * e4 + 2.0 * fd.z) <= 1e-10);
            let p_expect = 4.0 / (nf + 2.0) * (fd.z - e4 / (4.0 * nf));
            assert!((0.25 * fd.p.norm().powi(2) - p_expect).abs() <= 1e-10 * e4);
            assert!(rel(0.25 * fd.q.norm().powi(2), e4 / (2.0 * nf * (nf + 1.0))) <= 1e-10);
            let f2 = fd.f_tensor.norm().powi(2);
            assert!(fd.t.inner(&fd.p).abs() <= 1e-10 * f2);
            assert!(fd.t.inner(&fd.q).abs() <= 1e-10 * f2);
            assert!(fd.p.inner(&fd.q).abs() <= 1e-10 * f2);
            let sum = fd.t.add(&fd.p).add(&fd.q);
            assert!(sum.max_abs_diff(&fd.f_tensor) <= 1e-12 * fd.f_tensor.max_abs());
            let bound = (2.0 * nf * nf + 4.0 * nf + 3.0) / (2.0 * (nf + 1.0) * (nf + 2.0)) * e4;
            assert!(0.25 * fd.t.norm().powi(2) <= bound * (1.0 + 1e-12));
            assert!(fd.z <= e4 / 4.0 * (1.0 + 1e-12));
        }
    }
}

#[test]
fn coupling_two_routes() {
    for n in 2..=5 {
        for seed in 0..30 {
            let e = random_traceless_hermitian(n, seed).unwrap();
            let cm = random_webster(n, seed + 1000, true).unwrap();
            let fd = f_decompose(&e).unwrap();
            let direct = coupling_inner(&e, &cm).unwrap();
            let via_f = fd.f_tensor.inner(&cm) / 8.0;
            let via_t = fd.t.inner(&cm) / 8.0;
            let scale = e.norm().powi(2) * cm.norm();
            assert!((direct - via_f).abs() <= 1e-10 * scale);
            assert!((direct - via_t).abs() <= 1e-10 * scale);
        }
    }
}

#[test]
fn frame_change_invariance() {
    let mut rng = CounterRng::for_sample(5, "frame-test", 0);
    for n in 2..=4 {
        let r = random_webster(n, 40 + n as u64, false).unwrap();
        let u = random_unitary(n, &mut rng).unwrap();
        let rr = r.in_frame(&u);
        assert!((rr.norm() - r.norm()).abs() <= 1e-10 * r.norm());
        let ric_frame = r.ricci().in_frame(&u);
        assert!(rr.ricci().max_abs_diff(&ric_frame) <= 1e-12 * r.max_abs() * n as f64);
        let e = random_traceless_hermitian(n, 7).unwrap();
        assert!((e.in_frame(&u).norm() - e.norm()).abs() <= 1e-10 * e.norm());
        let d1 = decompose(&rr).unwrap();
        let d0 = decompose(&r).unwrap();
        assert!((d1.chern_moser.norm() - d0.chern_moser.norm()).abs() <= 1e-10 * r.norm());
    }
}

#[test]
fn b2_identity_random_and_sign() {
    for n in 2..=5 {
        for seed in 0..20 {
            let r = random_webster(n, seed, false).unwrap();
            let rec = b2_identity_check(&r).unwrap();
            assert!(rec.slack.abs() <= 1e-10 * rec.scale, "{rec:?}");
        }
    }
    // nonnegative orthogonal entries force a nonnegative right side
    let r = space_form_curvature(3, 1.0)
        .unwrap()
        .add(&random_webster(3, 2, true).unwrap().scaled(0.05));
    assert!(orthogonal_entries_nonnegative(&r).unwrap());
    assert!(b2_identity_check(&r).unwrap().rhs >= 0.0);
}
