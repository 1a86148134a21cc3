//! One pass/fail line per acceptance criterion. Runs as a plain binary so the
//! lines appear in `cargo test` output; exits non-zero if any line fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use crgeom::conformal::{transform_point, ConformalFactor};
use crgeom::curvature::{
    b2_identity_check, coupling_inner, decompose, f_decompose, k_theta, recompose,
    riemannian_ricci, riemannian_sectional, space_form_curvature, TangentVector,
};
use crgeom::heisenberg::{
    gaussian_quotient_exact_n1, minimize_gaussian, richardson_order, volume_constant,
    yamabe_quotient, ClosedForm, FrameCalculus, FrameIndex, GaussianFamilyBox, GridFunction,
    HeisenbergPoint,
};
use crgeom::inequality::{
    cm_cubic_routes, default_plan, okumura, okumura_extremal, run_plan_entry, DEFAULT_SEEDS,
    NEAR_EQUALITY,
};
use crgeom::rigidity::{comparison_check, threshold, Theorem};
use crgeom::rng::CounterRng;
use crgeom::tensor::{random_traceless_hermitian, random_webster};
use crgeom::Complex64;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_vector(n: usize, rng: &mut CounterRng) -> Vec<Complex64> {
    (0..n).map(|_| c(rng.symmetric(), rng.symmetric())).collect()
}

fn round_trip() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for seed in 0..1000 {
            let r = random_webster(n, seed, false).map_err(|e| e.to_string())?;
            let d = decompose(&r).map_err(|e| e.to_string())?;
            let back = recompose(&d).map_err(|e| e.to_string())?;
            let total = r.norm().powi(2);
            let rel = (back.max_abs_diff(&r) / r.max_abs()).max(d.max_cross_inner() / total);
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("n={n} seed={seed}: residual {rel:e}"))?;
        }
    }
    Ok(format!("4000 tensors, worst relative residual {worst:.1e}"))
}

fn f_lemma() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=6 {
        let nf = n as f64;
        for seed in 0..1000 {
            let e = random_traceless_hermitian(n, seed).map_err(|e| e.to_string())?;
            let fd = f_decompose(&e).map_err(|e| e.to_string())?;
            let e4 = e.norm().powi(4);
            let errs = [
                0.25 * fd.f_tensor.norm().powi(2) - (0.5 * e4 + 2.0 * fd.z),
                0.25 * fd.p.norm().powi(2) - 4.0 / (nf + 2.0) * (fd.z - e4 / (4.0 * nf)),
                0.25 * fd.q.norm().powi(2) - e4 / (2.0 * nf * (nf + 1.0)),
            ];
            let cm = random_webster(n, seed + 50_000, true).map_err(|e| e.to_string())?;
            let direct = coupling_inner(&e, &cm).map_err(|e| e.to_string())?;
            let scale = e.norm().powi(2) * cm.norm();
            let route = (direct - fd.f_tensor.inner(&cm) / 8.0)
                .abs()
                .max((direct - fd.t.inner(&cm) / 8.0).abs())
                / scale;
            let rel = errs.iter().map(|x| x.abs() / e4).fold(route, f64::max);
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("n={n} seed={seed}: residual {rel:e}"))?;
        }
    }
    Ok(format!("5000 matrices, worst relative residual {worst:.1e}"))
}

fn inequality_suite() -> Outcome {
    let mut total = 0;
    let mut worst_route: f64 = 0.0;
    for entry in default_plan() {
        let sums = run_plan_entry(&entry, DEFAULT_SEEDS, NEAR_EQUALITY).map_err(|e| e.to_string())?;
        for s in &sums {
            if entry.inequality.is_asserted() {
                total += s.count;
                ensure(s.violations == 0, || format!("{} n={}: {} violations", s.inequality, s.n, s.violations))?;
                ensure(s.count >= 10_000 / entry.dims.len(), || format!("{} too few samples", s.inequality))?;
            }
            if let Some(d) = s.max_route_discrepancy {
                worst_route = worst_route.max(d);
            }
        }
    }
    for m in 2..=20 {
        for k in [1e-3, 1.0, 30.0] {
            let r = okumura(&okumura_extremal(m, k)).map_err(|e| e.to_string())?;
            ensure(r.slack.abs() <= 1e-12 * r.scale, || format!("okumura m={m}: slack {:e}", r.slack))?;
        }
    }
    for n in 2..=5 {
        for seed in 0..20 {
            let cm = random_webster(n, seed, true).map_err(|e| e.to_string())?;
            let routes = cm_cubic_routes(&cm).map_err(|e| e.to_string())?;
            worst_route = worst_route.max(routes.route_discrepancy() / routes.record.scale);
        }
    }
    ensure(worst_route <= 1e-10, || format!("cm_cubic routes differ by {worst_route:e}"))?;
    Ok(format!("{total} samples, 0 violations, cm_cubic routes within {worst_route:.1e}"))
}

fn conformal_example() -> Outcome {
    let u = ConformalFactor::abs_sq(2);
    let e2 = (-2f64).exp();
    let mut worst: f64 = 0.0;
    for (z, a11, ric, rho) in [
        (c(0.0, 0.0), c(0.0, 0.0), -12.0, -24.0),
        (c(1.0, 0.0), c(0.0, -2.0 * e2), -24.0 * e2, -48.0 * e2),
    ] {
        let p = HeisenbergPoint::new(vec![z, c(0.0, 0.0)], 0.0).map_err(|e| e.to_string())?;
        let d = transform_point(&u, &p).map_err(|e| e.to_string())?;
        let mut err = (d.torsion.get(0, 0) - a11).norm();
        err = err.max(d.torsion.get(0, 1).norm()).max(d.torsion.get(1, 1).norm());
        for a in 0..2 {
            for b in 0..2 {
                let want = if a == b { ric } else { 0.0 };
                err = err.max((d.ricci.get(a, b) - c(want, 0.0)).norm());
            }
        }
        err = err.max((d.scalar - rho).abs()).max(d.einstein_residual);
        worst = worst.max(err);
    }
    ensure(worst <= 1e-12, || format!("largest deviation {worst:e}"))?;
    Ok(format!("both points, largest deviation {worst:.1e}"))
}

fn heisenberg_calculus() -> Outcome {
    let mut rng = CounterRng::for_sample(21, "acceptance-heisenberg", 0);
    for n in 1..=3 {
        let z = random_vector(n, &mut rng);
        let p = HeisenbergPoint::new(z, rng.symmetric()).map_err(|e| e.to_string())?;
        let exact = ClosedForm::abs_sq(n).sub_laplacian(&p).map_err(|e| e.to_string())?;
        ensure(exact == 2.0 * n as f64, || format!("closed form Δ_b|z|² = {exact} at n={n}"))?;
    }
    let axes = GridFunction::heisenberg_axes(2, 2.0, 1.0, 9).map_err(|e| e.to_string())?;
    let g = GridFunction::from_closed_form(&ClosedForm::abs_sq(2), axes).map_err(|e| e.to_string())?;
    let p = HeisenbergPoint::new(vec![c(0.5, -0.5), c(0.0, 0.5)], 0.25).map_err(|e| e.to_string())?;
    let grid = g.sub_laplacian(&p).map_err(|e| e.to_string())?;
    ensure((grid - 4.0).abs() < 1e-12, || format!("grid Δ_b|z|² = {grid}"))?;

    // order on a decaying function, at nodes shared by all three grids
    let f = ClosedForm::gaussian(1, 0.8, 0.6);
    let h = 6.0 / 24.0;
    let pts: Vec<HeisenbergPoint> = (0..50)
        .map(|_| {
            let mut coord = || -3.0 + h * (2 + rng.below(21)) as f64;
            let (x, y, t) = (coord(), coord(), coord());
            HeisenbergPoint::new(vec![c(x, y)], t).unwrap()
        })
        .collect();
    let mut errs = Vec::new();
    for s in [25, 49, 97] {
        let axes = GridFunction::heisenberg_axes(1, 3.0, 3.0, s).map_err(|e| e.to_string())?;
        let g = GridFunction::from_closed_form(&f, axes).map_err(|e| e.to_string())?;
        let mut err: f64 = 0.0;
        for p in &pts {
            let d = g.sub_laplacian_complex(p).unwrap() - f.sub_laplacian_complex(p).unwrap();
            err = err.max(d.norm());
        }
        errs.push(err);
    }
    let order = (errs[0] / errs[1]).log2().min((errs[1] / errs[2]).log2());
    ensure(order >= 1.9, || format!("grid order {order:.3}"))?;

    let mut comm: f64 = 0.0;
    for n in 1..=3 {
        let f = ClosedForm::from_id(n, "abs_sq_gaussian:1.1,0.4").map_err(|e| e.to_string())?;
        let p = HeisenbergPoint::new(random_vector(n, &mut rng), rng.symmetric()).unwrap();
        let u0 = f.frame_apply(FrameIndex::Reeb, &p).unwrap();
        for a in 0..n {
            let (ha, aa) = (FrameIndex::Holo(a), FrameIndex::Anti(a));
            let lhs = f.covariant_second(ha, aa, &p).unwrap() - f.covariant_second(aa, ha, &p).unwrap();
            comm = comm.max((lhs - c(0.0, 2.0) * u0).norm() / (1.0 + u0.norm()));
        }
    }
    ensure(comm <= 1e-12, || format!("commutator residual {comm:e}"))?;

    ensure(volume_constant(1) == 4.0, || format!("c₁ = {}", volume_constant(1)))?;
    let axes = GridFunction::heisenberg_axes(1, 6.5, 9.0, 65).map_err(|e| e.to_string())?;
    let ids = ["gaussian:1,0.5", "gaussian:0.8,0.4", "abs_sq_gaussian:1.2,0.6"];
    let mut ibp: f64 = 0.0;
    for u in ids {
        let gu = GridFunction::from_closed_form(&ClosedForm::from_id(1, u).unwrap(), axes.clone()).unwrap();
        for v in ids {
            let gv = GridFunction::from_closed_form(&ClosedForm::from_id(1, v).unwrap(), axes.clone()).unwrap();
            ibp = ibp.max(gu.integration_by_parts_residual(&gv).map_err(|e| e.to_string())?.abs());
        }
    }
    ensure(ibp <= 1e-6, || format!("integration by parts residual {ibp:e}"))?;
    Ok(format!("grid order {order:.3}, commutator {comm:.1e}, IBP {ibp:.1e}"))
}

fn space_form() -> Outcome {
    let mut rng = CounterRng::for_sample(22, "acceptance-space-form", 0);
    let mut worst: f64 = 0.0;
    for (n, kappa) in [(2, 1.0), (3, -0.5), (4, 0.0), (5, 2.25)] {
        let r = space_form_curvature(n, kappa).map_err(|e| e.to_string())?;
        let d = decompose(&r).map_err(|e| e.to_string())?;
        ensure(d.chern_moser.max_abs() == 0.0 && d.traceless_ricci.norm() == 0.0, || {
            format!("n={n}: nonzero trace-free parts")
        })?;
        let rho = 2.0 * kappa * (n * (n + 1)) as f64;
        ensure(d.scalar == rho, || format!("n={n}: ρ = {} vs {rho}", d.scalar))?;
        for _ in 0..100 {
            let z = random_vector(n, &mut rng);
            worst = worst.max((k_theta(&r, &z).unwrap() - kappa).abs());
            let x = TangentVector::horizontal(&z);
            let k = riemannian_sectional(&r, &x, &x.j()).unwrap();
            worst = worst.max((k - (4.0 * kappa - 3.0)).abs());
        }
        let ric = r.ricci();
        for a in 0..n {
            for b in 0..n {
                let v = riemannian_ricci(&r, &TangentVector::eta(n, a), &TangentVector::eta_bar(n, b));
                let want = ric.get(a, b) - if a == b { 2.0 } else { 0.0 };
                worst = worst.max((v - want).norm());
            }
        }
        let t = TangentVector::reeb(n);
        worst = worst.max((riemannian_ricci(&r, &t, &t) - c(2.0 * n as f64, 0.0)).norm());
    }
    ensure(worst <= 1e-12, || format!("largest deviation {worst:e}"))?;
    Ok(format!("largest deviation {worst:.1e}"))
}

#[derive(serde::Deserialize)]
struct Fixture {
    theorem: String,
    n: usize,
    sigma: Option<f64>,
    value: f64,
}

fn constants() -> Outcome {
    let c1 = threshold(Theorem::Dtm1, 2, None).map_err(|e| e.to_string())?.coefficient;
    let want = 5.0 / (9.0 * 3f64.sqrt());
    ensure((c1 - want).abs() <= 1e-12, || format!("C₁(2) = {c1} vs {want}"))?;
    for n in 2..=10_000 {
        let r = comparison_check(n).map_err(|e| e.to_string())?;
        ensure(r.slack >= 0.0, || format!("comparison fails at n={n}"))?;
    }
    let fixtures: Vec<Fixture> =
        serde_json::from_str(include_str!("fixtures/thresholds.json")).map_err(|e| e.to_string())?;
    for f in &fixtures {
        let t = Theorem::parse(&f.theorem).map_err(|e| e.to_string())?;
        let got = threshold(t, f.n, f.sigma).map_err(|e| e.to_string())?.coefficient;
        ensure((got - f.value).abs() <= 1e-12 * f.value, || {
            format!("{} n={} σ={:?}: {got} vs {}", f.theorem, f.n, f.sigma, f.value)
        })?;
    }
    for t in Theorem::ALL {
        let k = fixtures.iter().filter(|f| Theorem::parse(&f.theorem).ok() == Some(t)).count();
        ensure(k >= 3, || format!("{t} has {k} fixtures"))?;
    }
    Ok(format!("C₁(2) = {c1:.12}, comparison holds to n = 10⁴, {} fixtures", fixtures.len()))
}

fn yamabe() -> Outcome {
    let fam = GaussianFamilyBox::standard(1, 49);
    let u = fam.sample(1.0, 0.4).map_err(|e| e.to_string())?;
    let q = yamabe_quotient(&u, 0.0).map_err(|e| e.to_string())?;
    for s in [-3.0, 0.01, 250.0] {
        let qs = yamabe_quotient(&u.map(|v| v * s), 0.0).map_err(|e| e.to_string())?;
        ensure((qs - q).abs() <= 1e-12 * q, || format!("scale {s}: {qs} vs {q}"))?;
    }
    let (a, b) = (1.0, 1.0 / 3.0);
    let qs: Vec<f64> = [49, 97, 193]
        .iter()
        .map(|&s| fam.with_samples(s).quotient(a, b, 0.0))
        .collect::<crgeom::Result<_>>()
        .map_err(|e| e.to_string())?;
    let order = richardson_order(qs[0], qs[1], qs[2]);
    ensure(order >= 1.9, || format!("Richardson order {order:.3} from {qs:?}"))?;
    let coarse = minimize_gaussian(&GaussianFamilyBox::standard(1, 97), 0.0).map_err(|e| e.to_string())?;
    let fine = minimize_gaussian(&GaussianFamilyBox::standard(1, 129), 0.0).map_err(|e| e.to_string())?;
    ensure(fine.quotient > 0.0 && fine.quotient.is_finite(), || format!("minimum {}", fine.quotient))?;
    let drift = (coarse.quotient - fine.quotient).abs() / fine.quotient;
    ensure(drift <= 0.01, || format!("minimum moves by {:.2}%", 100.0 * drift))?;
    let exact = gaussian_quotient_exact_n1(a, b, 0.0);
    Ok(format!(
        "order {order:.3}, minimum {:.4} (97) / {:.4} (129), drift {:.2}%, exact family minimum {exact:.4}",
        coarse.quotient,
        fine.quotient,
        100.0 * drift
    ))
}

fn b2_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=5 {
        for seed in 0..1000 {
            let r = random_webster(n, seed, false).map_err(|e| e.to_string())?;
            let rec = b2_identity_check(&r).map_err(|e| e.to_string())?;
            let rel = rec.slack.abs() / rec.scale;
            worst = worst.max(rel);
            ensure(rel <= 1e-10, || format!("n={n} seed={seed}: residual {rel:e}"))?;
        }
    }
    Ok(format!("4000 tensors, worst relative residual {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("decomposition round trip", round_trip, Duration::from_secs(60)),
        ("F-lemma identities", f_lemma, Duration::MAX),
        ("inequality suite", inequality_suite, Duration::from_secs(600)),
        ("conformal example at n=2", conformal_example, Duration::MAX),
        ("Heisenberg calculus", heisenberg_calculus, Duration::MAX),
        ("space-form pipeline", space_form, Duration::MAX),
        ("constants and comparison", constants, Duration::MAX),
        ("Yamabe quotient", yamabe, Duration::MAX),
        ("b2 identity", b2_identity, Duration::MAX),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|d| {
            if elapsed <= *budget {
                Ok(d)
            } else {
                Err(format!("{d}; over the {budget:?} budget"))
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 9 criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
