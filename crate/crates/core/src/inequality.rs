//! Verifiers for the algebraic inequalities behind the Weitzenböck
//! estimates, and a deterministic sampling harness that searches for
//! violations and near-equality witnesses.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::curvature::{coupling_inner, f_decompose};
use crate::rng::CounterRng;
use crate::tensor::{
    hermitian_eigen, CMatrix, HermitianMatrix, RicciDerivative, TracelessHermitianMatrix,
    WebsterDerivative, WebsterTensor,
};
use crate::{Complex64, Error, Result, SlackRecord};

/// Default negative-slack tolerance, relative to the record's scale.
pub const SLACK_TOL: f64 = 1e-10;
/// Tolerance for the derivative Kato inequality of `C` (longer sums).
pub const SLACK_TOL_KATO_C: f64 = 1e-9;
pub const NEAR_EQUALITY: f64 = 1e-3;

fn check_dim(a: usize, b: usize) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::Shape(format!("dimension mismatch: {a} vs {b}")))
    }
}

fn ensure_traceless_c(c: &WebsterTensor) -> Result<()> {
    let resid = c.max_contraction();
    if resid > 1e-12 * c.max_abs().max(1.0) * c.dim() as f64 {
        return Err(Error::symmetry("tensor is not traceless", resid));
    }
    Ok(())
}

/// `(m−2)/√(m(m−1))`.
fn okumura_constant(m: usize) -> f64 {
    let m = m as f64;
    (m - 2.0) / (m * (m - 1.0)).sqrt()
}

/// `|Σ a_i³| ≤ (m−2)/√(m(m−1)) k³` for `Σ a_i = 0`, `k² = Σ a_i²`.
pub fn okumura(a: &[f64]) -> Result<SlackRecord> {
    let m = a.len();
    if m < 2 {
        return Err(Error::domain("okumura needs at least two numbers"));
    }
    if a.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite("okumura input".into()));
    }
    let sum: f64 = a.iter().sum();
    let abs: f64 = a.iter().map(|x| x.abs()).sum();
    if sum.abs() > 1e-12 * abs.max(1.0) {
        return Err(Error::domain(format!("input is not centred (Σa = {sum:e})")));
    }
    let k = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let lhs = a.iter().map(|x| x.powi(3)).sum::<f64>().abs();
    let scale = k.powi(3);
    Ok(SlackRecord::new(
        lhs,
        okumura_constant(m) * scale,
        scale,
        json!({ "a": a }),
    ))
}

/// The extremal configuration `(m−1, −1, …, −1)·k/√(m(m−1))`.
pub fn okumura_extremal(m: usize, k: f64) -> Vec<f64> {
    let d = ((m * (m - 1)) as f64).sqrt();
    (0..m)
        .map(|i| if i == 0 { (m as f64 - 1.0) * k / d } else { -k / d })
        .collect()
}

/// Max-norm distance of `a/|a|` from the nearest permutation or negation of
/// the extremal shape.
pub fn okumura_shape_distance(a: &[f64]) -> f64 {
    let k = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    if k == 0.0 {
        return f64::INFINITY;
    }
    let target = okumura_extremal(a.len(), 1.0);
    [1.0, -1.0]
        .iter()
        .map(|s| {
            let mut b: Vec<f64> = a.iter().map(|x| s * x / k).collect();
            b.sort_by(|x, y| y.total_cmp(x));
            b.iter()
                .zip(&target)
                .map(|(x, y)| (x - y).abs())
                .fold(0.0, f64::max)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Pointwise Kato inequality in an eigenbasis of `E`:
/// `|Σ λ_α μ_α|² ≤ n/(n+1) (Σ λ_α²)(|μ_γ|² + 2Σ_{α≠γ} |μ_α|²)`.
pub fn kato_e_pointwise(lambda: &[f64], mu: &[Complex64], gamma: usize) -> Result<SlackRecord> {
    let n = lambda.len();
    check_dim(n, mu.len())?;
    if gamma >= n {
        return Err(Error::domain(format!("index γ = {gamma} out of range")));
    }
    let ls: f64 = lambda.iter().sum();
    let labs: f64 = lambda.iter().map(|x| x.abs()).sum();
    let ms: Complex64 = mu.iter().sum();
    let mabs: f64 = mu.iter().map(|x| x.norm()).sum();
    if ls.abs() > 1e-12 * labs.max(1.0) || ms.norm() > 1e-12 * mabs.max(1.0) {
        return Err(Error::domain("λ and μ must both sum to zero"));
    }
    let pair: Complex64 = lambda.iter().zip(mu).map(|(l, m)| m * *l).sum();
    let l2: f64 = lambda.iter().map(|x| x * x).sum();
    let weighted: f64 = mu
        .iter()
        .enumerate()
        .map(|(a, m)| if a == gamma { m.norm_sqr() } else { 2.0 * m.norm_sqr() })
        .sum();
    let nf = n as f64;
    let rhs = nf / (nf + 1.0) * l2 * weighted;
    Ok(SlackRecord::new(
        pair.norm_sqr(),
        rhs,
        l2 * weighted,
        json!({ "lambda": lambda, "mu": mu.iter().map(|z| [z.re, z.im]).collect::<Vec<_>>(), "gamma": gamma }),
    ))
}

/// `¼|∇_b|E|²|² ≤ n/(n+1) |E|² |∇_b E|²` for Codazzi, traceless `∇E`.
pub fn kato_e_tensor(e: &TracelessHermitianMatrix, de: &RicciDerivative) -> Result<SlackRecord> {
    let n = e.dim();
    check_dim(n, de.dim())?;
    // s_γ = Σ E_{αβ̄} E_{βᾱ,γ}; in an eigenbasis s_γ = Σ λ_α E_{αᾱ,γ}.
    let mut s2 = 0.0;
    for g in 0..n {
        let mut s = Complex64::new(0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                s += e.get(a, b) * de.get(b, a, g);
            }
        }
        s2 += s.norm_sqr();
    }
    let lhs = 8.0 * s2;
    let base = e.norm().powi(2) * de.norm().powi(2);
    let nf = n as f64;
    Ok(SlackRecord::new(lhs, nf / (nf + 1.0) * base, base, json!({ "n": n })))
}

/// `|tr E³| ≤ (1/(2√2)) (n−2)/√(n(n−1)) |E|³`.
pub fn cubic_e(e: &TracelessHermitianMatrix) -> Result<SlackRecord> {
    let n = e.dim();
    let lhs = e.hermitian().power(3).trace().re.abs();
    let scale = e.norm().powi(3);
    let rhs = okumura_constant(n) / (2.0 * 2f64.sqrt()) * scale;
    Ok(SlackRecord::new(lhs, rhs, scale, json!({ "n": n })))
}

/// `|Σ E_{γλ̄}C_{β̄λαγ̄}E_{ᾱβ}| ≤ ¼√((2n²+4n+3)/(2(n+1)(n+2))) |E|²|C|`.
pub fn coupling_bound(e: &TracelessHermitianMatrix, c: &WebsterTensor) -> Result<SlackRecord> {
    let n = e.dim();
    check_dim(n, c.dim())?;
    ensure_traceless_c(c)?;
    let lhs = coupling_inner(e, c)?.abs();
    let nf = n as f64;
    let k = 0.25 * ((2.0 * nf * nf + 4.0 * nf + 3.0) / (2.0 * (nf + 1.0) * (nf + 2.0))).sqrt();
    let scale = e.norm().powi(2) * c.norm();
    Ok(SlackRecord::new(lhs, k * scale, scale, json!({ "n": n })))
}

/// Both routes of the cubic Chern-Moser bound.
#[derive(Clone, Debug)]
pub struct CmCubic {
    pub record: SlackRecord,
    /// `Σ C_{λ̄αμβ̄}C_{μ̄βγν̄}C_{γ̄νλᾱ}` by direct contraction.
    pub direct: f64,
    /// `Σ ν³` over the eigenvalues of `D_{(λα)(μβ)} = C_{λ̄αμβ̄}`.
    pub matrix_route: f64,
    pub eigenvalues: Vec<f64>,
}

impl CmCubic {
    pub fn route_discrepancy(&self) -> f64 {
        (self.direct - self.matrix_route).abs()
    }
}

/// The `n² × n²` Hermitian reshape `D_{(λα)(μβ)} = C_{λ̄αμβ̄}`.
pub fn cm_reshape(c: &WebsterTensor) -> Result<HermitianMatrix> {
    let n = c.dim();
    let m = n * n;
    let d = CMatrix::from_fn(m, |i, j| c.get(i / n, i % n, j / n, j % n));
    let resid = d.max_abs_diff(&d.adjoint());
    if resid > 1e-10 * c.max_abs().max(1.0) {
        return Err(Error::symmetry(
            "reshaped Chern-Moser matrix is not Hermitian (reality convention)",
            resid,
        ));
    }
    Ok(HermitianMatrix::symmetrize(&d))
}

pub fn cm_cubic_routes(c: &WebsterTensor) -> Result<CmCubic> {
    ensure_traceless_c(c)?;
    let n = c.dim();
    let mut direct = Complex64::new(0.0, 0.0);
    for l in 0..n {
        for a in 0..n {
            for m in 0..n {
                for b in 0..n {
                    let x = c.get(l, a, m, b);
                    for g in 0..n {
                        for nu in 0..n {
                            direct += x * c.get(m, b, g, nu) * c.get(g, nu, l, a);
                        }
                    }
                }
            }
        }
    }
    let eig = hermitian_eigen(&cm_reshape(c)?)?;
    let matrix_route: f64 = eig.values.iter().map(|v| v.powi(3)).sum();
    let k = c.sum_sq().sqrt();
    let scale = k.powi(3);
    let m = n * n;
    let rhs = okumura_constant(m) * scale;
    Ok(CmCubic {
        record: SlackRecord::new(
            direct.re.abs(),
            rhs,
            scale,
            json!({ "n": n, "matrix_route": matrix_route }),
        ),
        direct: direct.re,
        matrix_route,
        eigenvalues: eig.values,
    })
}

/// `|Σ C_{λ̄αμβ̄}C_{μ̄βγν̄}C_{γ̄νλᾱ}| ≤ (n²−2)/√(n²(n²−1)) (Σ|C|²)^{3/2}`.
pub fn cm_cubic(c: &WebsterTensor) -> Result<SlackRecord> {
    Ok(cm_cubic_routes(c)?.record)
}

/// `(n+3)/(n+1) |⟨C, ∇_b C⟩|² ≤ |C|² |∇_b C|²`, where the 1-form
/// `⟨C, ∇_b C⟩` has `|⟨C, ∇_b C⟩|² = 32 Σ_γ |Σ conj(C) C_{,γ}|²`, the weight
/// that makes plain Cauchy-Schwarz hold with constant one.
pub fn kato_c(c: &WebsterTensor, dc: &WebsterDerivative) -> Result<SlackRecord> {
    let n = c.dim();
    check_dim(n, dc.dim())?;
    ensure_traceless_c(c)?;
    let mut w2 = 0.0;
    for g in 0..n {
        let mut w = Complex64::new(0.0, 0.0);
        for a in 0..n {
            for b in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        w += c.get(a, b, l, m).conj() * dc.get(a, b, l, m, g);
                    }
                }
            }
        }
        w2 += w.norm_sqr();
    }
    let nf = n as f64;
    let pairing = 32.0 * w2;
    let base = c.norm().powi(2) * dc.norm().powi(2);
    Ok(SlackRecord::new(
        (nf + 3.0) / (nf + 1.0) * pairing,
        base,
        base,
        json!({ "n": n, "traceless_derivative": dc.is_traceless() }),
    ))
}

/// `Z = tr E⁴ ≤ |E|⁴/4`.
pub fn z_bound(e: &TracelessHermitianMatrix) -> Result<SlackRecord> {
    let fd = f_decompose(e)?;
    let scale = e.norm().powi(4);
    Ok(SlackRecord::new(fd.z, scale / 4.0, scale, json!({ "n": e.dim() })))
}

/// Inequalities known to the sampling harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Inequality {
    #[serde(rename = "okumura")]
    Okumura,
    #[serde(rename = "kato_E_pointwise")]
    KatoEPointwise,
    #[serde(rename = "kato_E_tensor")]
    KatoETensor,
    #[serde(rename = "cubic_E")]
    CubicE,
    #[serde(rename = "coupling_bound")]
    CouplingBound,
    #[serde(rename = "cm_cubic")]
    CmCubic,
    #[serde(rename = "kato_C")]
    KatoC,
    /// `kato_C` with a derivative that keeps its traces; informational.
    #[serde(rename = "kato_C_with_traces")]
    KatoCWithTraces,
    #[serde(rename = "z_bound")]
    ZBound,
}

impl Inequality {
    pub const ALL: [Inequality; 9] = [
        Inequality::Okumura,
        Inequality::KatoEPointwise,
        Inequality::KatoETensor,
        Inequality::CubicE,
        Inequality::CouplingBound,
        Inequality::CmCubic,
        Inequality::KatoC,
        Inequality::KatoCWithTraces,
        Inequality::ZBound,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Inequality::Okumura => "okumura",
            Inequality::KatoEPointwise => "kato_E_pointwise",
            Inequality::KatoETensor => "kato_E_tensor",
            Inequality::CubicE => "cubic_E",
            Inequality::CouplingBound => "coupling_bound",
            Inequality::CmCubic => "cm_cubic",
            Inequality::KatoC => "kato_C",
            Inequality::KatoCWithTraces => "kato_C_with_traces",
            Inequality::ZBound => "z_bound",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|i| i.id() == s)
            .ok_or_else(|| Error::domain(format!("unknown inequality {s:?}")))
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Inequality::KatoC | Inequality::KatoCWithTraces => SLACK_TOL_KATO_C,
            _ => SLACK_TOL,
        }
    }

    /// Smallest admissible size parameter (`m` for okumura, `n` otherwise).
    pub fn min_dim(self) -> usize {
        2
    }

    /// Whether a violation of this inequality fails the default suite.
    pub fn is_asserted(self) -> bool {
        self != Inequality::KatoCWithTraces
    }
}

#[derive(Clone, Debug)]
pub struct SampleConfig {
    pub n: usize,
    pub count: usize,
    pub seed: u64,
    pub near_equality_threshold: f64,
}

impl SampleConfig {
    pub fn new(n: usize, count: usize, seed: u64) -> Result<Self> {
        if count == 0 {
            return Err(Error::domain("count must be at least 1"));
        }
        Ok(SampleConfig {
            n,
            count,
            seed,
            near_equality_threshold: NEAR_EQUALITY,
        })
    }
}

fn random_centered(m: usize, rng: &mut CounterRng) -> Vec<f64> {
    let mut a: Vec<f64> = (0..m).map(|_| rng.symmetric()).collect();
    let mean = a.iter().sum::<f64>() / m as f64;
    for x in &mut a {
        *x -= mean;
    }
    // one more pass removes the rounding left by the first
    let mean = a.iter().sum::<f64>() / m as f64;
    for x in &mut a {
        *x -= mean;
    }
    a
}

fn random_centered_complex(n: usize, rng: &mut CounterRng) -> Vec<Complex64> {
    let re = random_centered(n, rng);
    let im = random_centered(n, rng);
    re.into_iter().zip(im).map(|(r, i)| Complex64::new(r, i)).collect()
}

/// The sample of `(id, n)` with stream key `(seed, index)`.
///
/// Every tenth sample of the vector-valued inequalities, and of `cm_cubic`
/// and `coupling_bound`, is drawn near the known extremal direction; odd
/// `kato_C` samples use `∇C = C ⊗ ξ`, projected.
pub fn sample_record(id: Inequality, n: usize, seed: u64, index: u64) -> Result<SlackRecord> {
    if n < id.min_dim() {
        return Err(Error::domain(format!("{} needs dimension ≥ {}", id.id(), id.min_dim())));
    }
    let mut rng = CounterRng::for_sample(seed, id.id(), (n as u64) << 40 | index);
    let extremal = index % 10 == 9;
    let mut rec = match id {
        Inequality::Okumura => {
            let a = if extremal {
                // permuted, signed, scaled extremal shape plus a small centred
                // perturbation of random magnitude 10^-2 .. 10^-8
                let k = 0.1 + rng.next_f64();
                let mut a = okumura_extremal(n, k);
                let sign = if rng.next_u64() & 1 == 0 { 1.0 } else { -1.0 };
                let pivot = rng.below(n as u64) as usize;
                a.swap(0, pivot);
                let eps = 10f64.powf(-2.0 - 6.0 * rng.next_f64());
                let d = random_centered(n, &mut rng);
                let mut v: Vec<f64> = a.iter().zip(&d).map(|(x, y)| sign * x + eps * k * y).collect();
                let mean = v.iter().sum::<f64>() / n as f64;
                v.iter_mut().for_each(|x| *x -= mean);
                v
            } else {
                random_centered(n, &mut rng)
            };
            okumura(&a)?
        }
        Inequality::KatoEPointwise => {
            let lambda = random_centered(n, &mut rng);
            let mu = random_centered_complex(n, &mut rng);
            kato_e_pointwise(&lambda, &mu, (index % n as u64) as usize)?
        }
        Inequality::KatoETensor => {
            let e = TracelessHermitianMatrix::random(n, &mut rng);
            let de = RicciDerivative::random(n, &mut rng);
            kato_e_tensor(&e, &de)?
        }
        Inequality::CubicE => {
            let e = TracelessHermitianMatrix::random(n, &mut rng);
            cubic_e(&e)?
        }
        Inequality::CouplingBound => {
            let e = TracelessHermitianMatrix::random(n, &mut rng);
            let c = if extremal {
                let t = f_decompose(&e)?.t;
                let norm = t.norm();
                t.scaled(1.0 / norm)
            } else {
                WebsterTensor::random(n, true, &mut rng)
            };
            coupling_bound(&e, &c)?
        }
        Inequality::CmCubic => {
            let c = if extremal {
                // rank-one D pulled back through the projection
                let x: Vec<Complex64> = (0..n * n)
                    .map(|_| Complex64::new(rng.symmetric(), rng.symmetric()))
                    .collect();
                let raw = WebsterTensor::from_fn(n, |l, a, m, b| x[l * n + a] * x[m * n + b].conj());
                WebsterTensor::project(n, raw.as_slice().to_vec())?.traceless_part()
            } else {
                WebsterTensor::random(n, true, &mut rng)
            };
            let routes = cm_cubic_routes(&c)?;
            let mut rec = routes.record.clone();
            rec.witness["route_discrepancy"] = json!(routes.route_discrepancy());
            rec
        }
        Inequality::KatoC | Inequality::KatoCWithTraces => {
            let traceless = id == Inequality::KatoC;
            let c = WebsterTensor::random(n, true, &mut rng);
            let dc = if index % 2 == 1 {
                let xi: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rng.symmetric(), rng.symmetric()))
                    .collect();
                WebsterDerivative::from_fn(n, traceless, |a, b, l, m, g| c.get(a, b, l, m) * xi[g])
            } else {
                WebsterDerivative::random(n, traceless, &mut rng)
            };
            kato_c(&c, &dc)?
        }
        Inequality::ZBound => {
            let e = TracelessHermitianMatrix::random(n, &mut rng);
            z_bound(&e)?
        }
    };
    if let Value::Object(map) = &mut rec.witness {
        map.insert("seed".into(), json!(seed));
        map.insert("index".into(), json!(index));
    }
    Ok(rec)
}

/// One near-equality or violating sample.
#[derive(Clone, Debug, Serialize)]
pub struct WitnessRecord {
    pub inequality: &'static str,
    pub n: usize,
    pub seed: u64,
    pub index: u64,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub ratio: Option<f64>,
    pub violation: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, Serialize)]
pub struct SampleSummary {
    pub inequality: &'static str,
    pub n: usize,
    pub count: usize,
    pub min_slack_ratio: Option<f64>,
    pub violations: usize,
    pub near_equality: usize,
    /// Largest two-route disagreement relative to the scale (`cm_cubic`).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_route_discrepancy: Option<f64>,
    #[serde(skip)]
    pub witnesses: Vec<WitnessRecord>,
}

impl SampleSummary {
    fn empty(id: Inequality, n: usize) -> Self {
        SampleSummary {
            inequality: id.id(),
            n,
            count: 0,
            min_slack_ratio: None,
            violations: 0,
            near_equality: 0,
            max_route_discrepancy: None,
            witnesses: Vec::new(),
        }
    }

    /// Combines two summaries; associative, so worker scheduling does not
    /// change the result as long as witness lists are concatenated in order.
    pub fn merge(mut self, other: SampleSummary) -> SampleSummary {
        self.count += other.count;
        self.violations += other.violations;
        self.near_equality += other.near_equality;
        self.min_slack_ratio = match (self.min_slack_ratio, other.min_slack_ratio) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self.max_route_discrepancy = match (self.max_route_discrepancy, other.max_route_discrepancy) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.witnesses.extend(other.witnesses);
        self
    }
}

/// Upper bound on witnesses retained per summary.
pub const MAX_WITNESSES: usize = 200;

/// Evaluates samples `0..count` of `(seed, id, n)` in parallel; the result
/// does not depend on the number of workers.
pub fn run_samples(id: Inequality, cfg: &SampleConfig) -> Result<SampleSummary> {
    let results: Vec<Result<SampleSummary>> = (0..cfg.count as u64)
        .into_par_iter()
        .map(|i| {
            let rec = sample_record(id, cfg.n, cfg.seed, i)?;
            let mut s = SampleSummary::empty(id, cfg.n);
            s.count = 1;
            let ratio = rec.ratio();
            s.min_slack_ratio = ratio;
            let violation = rec.violates(id.tolerance());
            let near = ratio.is_some_and(|r| r < cfg.near_equality_threshold);
            if let Some(d) = rec.witness.get("route_discrepancy").and_then(Value::as_f64) {
                s.max_route_discrepancy = Some(d / rec.scale.max(f64::MIN_POSITIVE));
            }
            if violation {
                s.violations = 1;
            }
            if near {
                s.near_equality = 1;
            }
            if violation || near {
                s.witnesses.push(WitnessRecord {
                    inequality: id.id(),
                    n: cfg.n,
                    seed: cfg.seed,
                    index: i,
                    lhs: rec.lhs,
                    rhs: rec.rhs,
                    slack: rec.slack,
                    ratio,
                    violation,
                    witness: rec.witness,
                });
            }
            Ok(s)
        })
        .collect();
    let mut total = SampleSummary::empty(id, cfg.n);
    for r in results {
        total = total.merge(r?);
    }
    total.witnesses.truncate(MAX_WITNESSES);
    Ok(total)
}

/// One row of the default plan: `per_seed` samples for each seed and each
/// listed dimension.
#[derive(Clone, Debug)]
pub struct PlanEntry {
    pub inequality: Inequality,
    pub dims: Vec<usize>,
    pub per_seed: usize,
}

/// Seeds of the default plan.
pub const DEFAULT_SEEDS: std::ops::Range<u64> = 0..100;

/// The default sampling plan; totals are 10⁴–10⁵ samples per inequality.
pub fn default_plan() -> Vec<PlanEntry> {
    let e = |inequality, dims: std::ops::RangeInclusive<usize>, per_seed| PlanEntry {
        inequality,
        dims: dims.collect(),
        per_seed,
    };
    vec![
        e(Inequality::Okumura, 3..=10, 125),
        e(Inequality::KatoEPointwise, 2..=8, 143),
        e(Inequality::KatoETensor, 2..=6, 20),
        e(Inequality::CubicE, 3..=8, 167),
        e(Inequality::CouplingBound, 2..=6, 100),
        e(Inequality::CmCubic, 2..=5, 25),
        e(Inequality::KatoC, 2..=4, 34),
        e(Inequality::KatoCWithTraces, 2..=4, 34),
        e(Inequality::ZBound, 2..=8, 143),
    ]
}

/// Runs one plan entry over the given seeds, returning one summary per
/// dimension.
pub fn run_plan_entry(
    entry: &PlanEntry,
    seeds: std::ops::Range<u64>,
    threshold: f64,
) -> Result<Vec<SampleSummary>> {
    entry
        .dims
        .iter()
        .map(|&n| {
            let mut total = SampleSummary::empty(entry.inequality, n);
            for seed in seeds.clone() {
                let cfg = SampleConfig {
                    n,
                    count: entry.per_seed,
                    seed,
                    near_equality_threshold: threshold,
                };
                total = total.merge(run_samples(entry.inequality, &cfg)?);
            }
            total.witnesses.truncate(MAX_WITNESSES);
            Ok(total)
        })
        .collect()
}
