use std::fmt;
use std::io::{Read, Write};
use std::path::Path;

use crgeom::conformal::{transform_point, ConformalFactor};
use crgeom::curvature::decompose as decompose_tensor;
use crgeom::heisenberg::{minimize_gaussian, richardson_order, GaussianFamilyBox, HeisenbergPoint};
use crgeom::inequality::{
    cm_cubic_routes, coupling_bound, cubic_e, kato_e_pointwise, okumura, run_samples,
    sample_record, z_bound, Inequality, SampleConfig, SampleSummary,
};
use crgeom::rigidity::{self, ManifoldSummary, Theorem};
use crgeom::tensor::json::{self as tensor_json, TensorDocument};
use crgeom::tensor::{TracelessHermitianMatrix, WebsterTensor};
use crgeom::{Complex64, SlackRecord};
use serde_json::{json, Value};

/// Largest lattice the Yamabe estimate will allocate.
const MAX_GRID_NODES: usize = 1 << 26;
/// Coarsest grid used for the order estimate.
const MIN_ORDER_SAMPLES: usize = 17;

#[derive(Debug)]
pub enum Failure {
    /// Rejected input or parameters (exit 2).
    Input(String),
    /// A sampled or supplied instance violates its inequality (exit 3).
    Counterexample(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::Counterexample(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) => write!(f, "{m}"),
            Failure::Counterexample(m) => write!(f, "counterexample: {m}"),
        }
    }
}

impl From<crgeom::Error> for Failure {
    fn from(e: crgeom::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Input(format!("invalid JSON: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn emit(v: &impl serde::Serialize) -> Outcome {
    let line = serde_json::to_string(v)?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{line}") {
        Ok(()) => Ok(()),
        // the reader went away (`| head`); nothing left to report to
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(Failure::Input(format!("stdout: {e}"))),
    }
}

pub fn decompose(input: &Path) -> Outcome {
    let doc = tensor_json::from_str(&read_input(input)?)?;
    let TensorDocument::Webster(r) = doc else {
        return Err(Failure::Input(format!("expected a webster tensor, got {}", doc.kind())));
    };
    let d = decompose_tensor(&r)?;
    emit(&json!({
        "n": d.n,
        "scalar": d.scalar,
        "chern_moser": tensor_json::webster_to_value(&d.chern_moser),
        "traceless_ricci": tensor_json::hermitian_to_value(d.traceless_ricci.hermitian()),
        "norms": {
            "chern_moser": d.chern_moser.norm(),
            "ricci_part": d.ricci_part().norm(),
            "scalar_part": d.scalar_part().norm(),
        },
        "max_cross_inner": d.max_cross_inner(),
    }))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    v.get(key).ok_or_else(|| Failure::Input(format!("missing field {key:?}")))
}

fn traceless(v: &Value) -> Result<TracelessHermitianMatrix, Failure> {
    match tensor_json::from_value(v)? {
        TensorDocument::Hermitian(m) => Ok(TracelessHermitianMatrix::new(m)?),
        other => Err(Failure::Input(format!("expected a hermitian matrix, got {}", other.kind()))),
    }
}

fn webster(v: &Value) -> Result<WebsterTensor, Failure> {
    match tensor_json::from_value(v)? {
        TensorDocument::Webster(t) => Ok(t),
        other => Err(Failure::Input(format!("expected a webster tensor, got {}", other.kind()))),
    }
}

fn complex_list(v: &Value) -> Result<Vec<Complex64>, Failure> {
    let pairs: Vec<[f64; 2]> = serde_json::from_value(v.clone())?;
    Ok(pairs.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
}

fn explicit_record(id: Inequality, v: &Value) -> Result<SlackRecord, Failure> {
    Ok(match id {
        Inequality::Okumura => {
            let a: Vec<f64> = serde_json::from_value(field(v, "a")?.clone())?;
            okumura(&a)?
        }
        Inequality::KatoEPointwise => {
            let lambda: Vec<f64> = serde_json::from_value(field(v, "lambda")?.clone())?;
            let mu = complex_list(field(v, "mu")?)?;
            let gamma: usize = serde_json::from_value(field(v, "gamma")?.clone())?;
            kato_e_pointwise(&lambda, &mu, gamma)?
        }
        Inequality::CubicE => cubic_e(&traceless(field(v, "E")?)?)?,
        Inequality::ZBound => z_bound(&traceless(field(v, "E")?)?)?,
        Inequality::CouplingBound => coupling_bound(&traceless(field(v, "E")?)?, &webster(field(v, "C")?)?)?,
        Inequality::CmCubic => {
            let routes = cm_cubic_routes(&webster(field(v, "C")?)?)?;
            let mut rec = routes.record.clone();
            rec.witness["route_discrepancy"] = json!(routes.route_discrepancy());
            rec
        }
        Inequality::KatoETensor | Inequality::KatoC | Inequality::KatoCWithTraces => {
            return Err(Failure::Input(format!(
                "{} takes derivative tensors, which have no file format; use --n and --count",
                id.id()
            )))
        }
    })
}

fn record_line(id: Inequality, rec: &SlackRecord) -> Result<bool, Failure> {
    let violation = rec.violates(id.tolerance());
    emit(&json!({
        "inequality": id.id(),
        "lhs": rec.lhs,
        "rhs": rec.rhs,
        "slack": rec.slack,
        "scale": rec.scale,
        "ratio": rec.ratio(),
        "violation": violation,
        "witness": rec.witness,
    }))?;
    Ok(violation)
}

fn require_n(n: Option<usize>) -> Result<usize, Failure> {
    n.ok_or_else(|| Failure::Input("--n is required".into()))
}

pub fn verify(id: &str, input: Option<&Path>, n: Option<usize>, count: Option<usize>, seed: u64) -> Outcome {
    let id = Inequality::parse(id)?;
    let mut violations = 0;
    if let Some(path) = input {
        let v: Value = serde_json::from_str(&read_input(path)?)?;
        let items = match v {
            Value::Array(items) => items,
            other => vec![other],
        };
        // parse everything first so a bad item cannot leave a partial stream
        let records = items
            .iter()
            .map(|item| explicit_record(id, item))
            .collect::<Result<Vec<_>, _>>()?;
        for rec in &records {
            violations += usize::from(record_line(id, rec)?);
        }
    } else {
        let n = require_n(n)?;
        let count = count.unwrap_or(100);
        if count == 0 {
            return Err(Failure::Input("--count must be at least 1".into()));
        }
        for index in 0..count as u64 {
            let rec = sample_record(id, n, seed, index)?;
            violations += usize::from(record_line(id, &rec)?);
        }
    }
    if violations > 0 {
        return Err(Failure::Counterexample(format!("{violations} violation(s) of {}", id.id())));
    }
    Ok(())
}

pub fn sample(id: &str, n: Option<usize>, count: Option<usize>, seed: u64, seeds: u64, threshold: f64) -> Outcome {
    let id = Inequality::parse(id)?;
    let n = require_n(n)?;
    if seeds == 0 {
        return Err(Failure::Input("--seeds must be at least 1".into()));
    }
    if !(threshold >= 0.0) {
        return Err(Failure::Input("--threshold must be non-negative".into()));
    }
    let mut total = None::<SampleSummary>;
    for s in seed..seed + seeds {
        let mut cfg = SampleConfig::new(n, count.unwrap_or(1000), s)?;
        cfg.near_equality_threshold = threshold;
        let run = run_samples(id, &cfg)?;
        for w in &run.witnesses {
            emit(w)?;
        }
        total = Some(match total {
            None => run,
            Some(t) => t.merge(run),
        });
    }
    let total = total.expect("at least one seed");
    emit(&json!({
        "inequality": total.inequality,
        "n": total.n,
        "count": total.count,
        "min_slack_ratio": total.min_slack_ratio,
        "violations": total.violations,
        "near_equality": total.near_equality,
        "max_route_discrepancy": total.max_route_discrepancy,
    }))?;
    if total.violations > 0 {
        return Err(Failure::Counterexample(format!(
            "{} violation(s) of {} at n = {n}",
            total.violations,
            id.id()
        )));
    }
    Ok(())
}

fn parse_points(n: usize, raw: Option<&str>) -> Result<Vec<HeisenbergPoint>, Failure> {
    let Some(raw) = raw else {
        let mut e1 = vec![Complex64::new(0.0, 0.0); n];
        e1[0] = Complex64::new(1.0, 0.0);
        return Ok(vec![HeisenbergPoint::origin(n), HeisenbergPoint::new(e1, 0.0)?]);
    };
    let v: Value = serde_json::from_str(raw)?;
    let items = v
        .as_array()
        .ok_or_else(|| Failure::Input("--points must be a JSON list".into()))?;
    items
        .iter()
        .map(|p| {
            let z = complex_list(field(p, "z")?)?;
            if z.len() != n {
                return Err(Failure::Input(format!("point has {} coordinates, expected {n}", z.len())));
            }
            let t = match p.get("t") {
                None => 0.0,
                Some(t) => t
                    .as_f64()
                    .ok_or_else(|| Failure::Input("\"t\" must be a number".into()))?,
            };
            Ok(HeisenbergPoint::new(z, t)?)
        })
        .collect()
}

pub fn conformal_example(n: usize, points: Option<&str>, u: &str) -> Outcome {
    if n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    let factor = ConformalFactor::from_id(n, u)?;
    let points = parse_points(n, points)?;
    let data = points
        .iter()
        .map(|p| transform_point(&factor, p))
        .collect::<crgeom::Result<Vec<_>>>()?;
    for d in data {
        emit(&json!({
            "z": d.point.z.iter().map(|c| [c.re, c.im]).collect::<Vec<_>>(),
            "t": d.point.t,
            "torsion": tensor_json::torsion_to_value(&d.torsion),
            "ricci": tensor_json::hermitian_to_value(&d.ricci),
            "scalar": d.scalar,
            "scalar_displayed_law": d.scalar_displayed_law,
            "einstein_residual": d.einstein_residual,
            "webster_scale": d.webster_scale,
        }))?;
    }
    Ok(())
}

pub fn thresholds(theorem: Option<&str>, n: usize, sigma: Option<f64>) -> Outcome {
    if let Some(id) = theorem {
        let t = Theorem::parse(id)?;
        return emit(&rigidity::threshold(t, n, sigma)?);
    }
    if n < 2 {
        return Err(Failure::Input("n >= 2 violated".into()));
    }
    for t in Theorem::ALL {
        match rigidity::threshold(t, n, sigma.filter(|_| t.uses_sigma())) {
            Ok(th) => emit(&th)?,
            Err(e) => emit(&json!({ "theorem": t, "n": n, "error": e.to_string() }))?,
        }
    }
    Ok(())
}

pub fn evaluate(path: &Path) -> Outcome {
    let summary = ManifoldSummary::from_json(&read_input(path)?)?;
    emit(&rigidity::evaluate(&summary)?)
}

fn parse_box(raw: &str) -> Result<(f64, f64), Failure> {
    let parts: Vec<f64> = raw
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Input(format!("--box expects z_half,t_half, got {raw:?}")))?;
    match parts[..] {
        [z, t] if z > 0.0 && t > 0.0 => Ok((z, t)),
        _ => Err(Failure::Input(format!("--box expects two positive half-widths, got {raw:?}"))),
    }
}

pub fn yamabe_estimate(n: usize, grid: usize, bx: Option<&str>, family: &str, rho: f64) -> Outcome {
    if family != "gaussian" {
        return Err(Failure::Input(format!("unknown family {family:?} (only \"gaussian\")")));
    }
    if n == 0 {
        return Err(Failure::Input("--n must be at least 1".into()));
    }
    let nodes = (grid as f64).powi(2 * n as i32 + 1);
    if nodes > MAX_GRID_NODES as f64 {
        return Err(Failure::Input(format!(
            "grid of {grid}^{} nodes is too large (limit {MAX_GRID_NODES})",
            2 * n + 1
        )));
    }
    let mut fam = GaussianFamilyBox::standard(n, grid);
    if let Some(raw) = bx {
        (fam.z_half, fam.t_half) = parse_box(raw)?;
    }
    let best = minimize_gaussian(&fam, rho)?;
    // nested coarser grids with spacing 2h and 4h, when the lattice allows it
    // and the coarsest one still resolves the bump
    let order = if (grid - 1).is_multiple_of(4) && (grid - 1) / 4 + 1 >= MIN_ORDER_SAMPLES {
        let q = |s: usize| fam.with_samples(s).quotient(best.a, best.b, rho);
        let coarse = q((grid - 1) / 4 + 1)?;
        let mid = q((grid - 1) / 2 + 1)?;
        Some(richardson_order(coarse, mid, best.quotient))
    } else {
        None
    };
    emit(&json!({
        "quotient": best.quotient,
        "params": { "a": best.a, "b": best.b, "rho": rho, "family": family },
        "grid": {
            "n": n,
            "samples": grid,
            "z_half": fam.z_half,
            "t_half": fam.t_half,
            "a_range": fam.a_range,
            "b_range": fam.b_range,
            "evaluations": best.evaluations,
        },
        "order_estimate": order,
    }))
}
