//! Pinching constants of the rigidity theorems and an evaluator that checks
//! their hypotheses against summary data of a Sasakian manifold.
//!
//! Every threshold is `coefficient × multiplier`, the multiplier being the
//! CR Yamabe constant `λ(M)` or the scalar curvature `ρ`. The evaluator never
//! substitutes one for the other and never guesses a missing field: a theorem
//! whose inputs are absent is reported as not applicable.

use serde::{Deserialize, Serialize};

use crate::slack::SlackRecord;
use crate::{Error, Result};

/// Version stamp of the evaluation output.
pub const FORMAT_VERSION: &str = "1";

fn check_sigma_b(sigma: f64, b: f64, delta: f64, eps: f64) -> Result<f64> {
    for (name, v) in [("sigma", sigma), ("B", b), ("delta", delta), ("epsilon", eps)] {
        if !v.is_finite() {
            return Err(Error::domain(format!("{name} must be finite")));
        }
    }
    if sigma < 2.0 {
        return Err(Error::domain(format!("sigma >= 2 violated (sigma = {sigma})")));
    }
    let room = sigma - b - 1.0;
    if room <= 0.0 {
        return Err(Error::domain(format!("sigma - B - 1 > 0 violated ({room})")));
    }
    if delta <= 0.0 {
        return Err(Error::domain(format!("delta > 0 violated (delta = {delta})")));
    }
    if eps <= 0.0 || eps >= room {
        return Err(Error::domain(format!(
            "0 < epsilon < sigma - B - 1 violated (epsilon = {eps}, sigma - B - 1 = {room})"
        )));
    }
    Ok(room)
}

/// `C_{δ,ε} = 4σ⁻²(1+δ)⁻¹(σ − B − 1 − ε)`.
pub fn const_prop_blm1(sigma: f64, b: f64, delta: f64, eps: f64) -> Result<f64> {
    let room = check_sigma_b(sigma, b, delta, eps)?;
    Ok(4.0 * (room - eps) / (sigma * sigma * (1.0 + delta)))
}

/// `C̃_{δ,ε} = (2n/(n+1)) (σ − B − 1 − ε) / (σ²(1+δ))`.
pub fn const_cor_blm1(n: usize, sigma: f64, b: f64, delta: f64, eps: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::domain("n >= 1 violated"));
    }
    let room = check_sigma_b(sigma, b, delta, eps)?;
    let nf = n as f64;
    Ok(2.0 * nf / (nf + 1.0) * (room - eps) / (sigma * sigma * (1.0 + delta)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    /// L^{n+1} pinching, zero scalar curvature.
    #[serde(rename = "ctm3")]
    Ctm3,
    /// Same pinching, negative scalar curvature, `2 ≤ σ < n − 1`.
    #[serde(rename = "ctm3n")]
    Ctm3Negative,
    /// `σ = n + 1` case of `ctm3`.
    #[serde(rename = "cco1")]
    Cco1,
    /// L^{n+1} pinching, positive scalar curvature, compactness.
    #[serde(rename = "ctm1")]
    Ctm1,
    /// `σ = n + 1` case of `ctm1` with the pseudo-Einstein conclusion.
    #[serde(rename = "cco2")]
    Cco2,
    /// Sup-norm pinching, positive scalar curvature.
    #[serde(rename = "ctm2")]
    Ctm2,
    /// Chern-Moser pinching, zero scalar curvature.
    #[serde(rename = "dtm2")]
    Dtm2,
    /// Chern-Moser pinching, negative scalar curvature, `n ≥ 4`.
    #[serde(rename = "dtm2n")]
    Dtm2Negative,
    /// Combined corollary characterising the Heisenberg group.
    #[serde(rename = "dco1")]
    Dco1,
    /// Chern-Moser pinching, compact with positive scalar curvature.
    #[serde(rename = "dtm1")]
    Dtm1,
    /// Combined corollary characterising the sphere.
    #[serde(rename = "dco2")]
    Dco2,
    /// Sup-norm Chern-Moser pinching.
    #[serde(rename = "dtm3")]
    Dtm3,
    /// Combined sup-norm corollary characterising the sphere.
    #[serde(rename = "dco3")]
    Dco3,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplier {
    /// CR Yamabe constant `λ(M)`.
    Yamabe,
    /// Pseudo-Hermitian scalar curvature `ρ`.
    Rho,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum RhoSign {
    Zero,
    Negative,
    Positive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Lhs {
    /// `‖C‖/√2 + ‖E‖`
    MixedL,
    /// `‖C‖ + √2‖E‖`
    MixedLSphere,
    /// `‖C‖`
    ChernMoserL,
    /// `sup √2|E| + sup |C|`
    MixedSup,
    /// `sup |C|`
    ChernMoserSup,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    #[serde(rename = "pseudo-Einstein")]
    PseudoEinstein,
    #[serde(rename = "Ricci-flat")]
    RicciFlat,
    #[serde(rename = "compact")]
    Compact,
    #[serde(rename = "space-form-κ<0")]
    SpaceFormNegative,
    #[serde(rename = "space-form-κ=0")]
    SpaceFormZero,
    #[serde(rename = "space-form-κ>0")]
    SpaceFormPositive,
    #[serde(rename = "sphere")]
    Sphere,
    #[serde(rename = "heisenberg")]
    Heisenberg,
}

impl Conclusion {
    pub fn label(self) -> &'static str {
        match self {
            Conclusion::PseudoEinstein => "pseudo-Einstein",
            Conclusion::RicciFlat => "Ricci-flat",
            Conclusion::Compact => "compact",
            Conclusion::SpaceFormNegative => "space-form-κ<0",
            Conclusion::SpaceFormZero => "space-form-κ=0",
            Conclusion::SpaceFormPositive => "space-form-κ>0",
            Conclusion::Sphere => "sphere",
            Conclusion::Heisenberg => "heisenberg",
        }
    }
}

/// Structural hypotheses of a theorem besides the pinching inequality.
struct Profile {
    rho: RhoSign,
    multiplier: Multiplier,
    lhs: Lhs,
    uses_sigma: bool,
    min_n: usize,
    noncompact: bool,
    compact: bool,
    simply_connected: bool,
    pseudo_einstein: bool,
    /// Growth condition assumed rather than checked.
    growth: Option<&'static str>,
    conclusions: &'static [Conclusion],
    /// Added when the summary says the manifold is simply connected.
    simply_connected_bonus: Option<Conclusion>,
}

impl Theorem {
    pub const ALL: [Theorem; 13] = [
        Theorem::Ctm3,
        Theorem::Ctm3Negative,
        Theorem::Cco1,
        Theorem::Ctm1,
        Theorem::Cco2,
        Theorem::Ctm2,
        Theorem::Dtm2,
        Theorem::Dtm2Negative,
        Theorem::Dco1,
        Theorem::Dtm1,
        Theorem::Dco2,
        Theorem::Dtm3,
        Theorem::Dco3,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Ctm3 => "ctm3",
            Theorem::Ctm3Negative => "ctm3n",
            Theorem::Cco1 => "cco1",
            Theorem::Ctm1 => "ctm1",
            Theorem::Cco2 => "cco2",
            Theorem::Ctm2 => "ctm2",
            Theorem::Dtm2 => "dtm2",
            Theorem::Dtm2Negative => "dtm2n",
            Theorem::Dco1 => "dco1",
            Theorem::Dtm1 => "dtm1",
            Theorem::Dco2 => "dco2",
            Theorem::Dtm3 => "dtm3",
            Theorem::Dco3 => "dco3",
        }
    }

    /// Accepts the ids above plus the display-label aliases `c15`, `d5`.
    pub fn parse(s: &str) -> Result<Theorem> {
        let s = s.trim();
        let alias = match s {
            "c15" => "ctm3",
            "d5" => "dtm2",
            other => other,
        };
        Theorem::ALL
            .into_iter()
            .find(|t| t.id() == alias)
            .ok_or_else(|| Error::domain(format!("unknown theorem id {s:?}")))
    }

    fn profile(self) -> Profile {
        use Conclusion::*;
        let base = Profile {
            rho: RhoSign::Zero,
            multiplier: Multiplier::Yamabe,
            lhs: Lhs::MixedL,
            uses_sigma: false,
            min_n: 2,
            noncompact: false,
            compact: false,
            simply_connected: false,
            pseudo_einstein: false,
            growth: None,
            conclusions: &[],
            simply_connected_bonus: None,
        };
        const E_GROWTH: &str = "∫_{B_r} |E|^σ = o(r²)";
        const C_GROWTH: &str = "∫_{B_r} |C|^σ = o(r²)";
        match self {
            Theorem::Ctm3 => Profile {
                uses_sigma: true,
                noncompact: true,
                growth: Some(E_GROWTH),
                conclusions: &[PseudoEinstein, RicciFlat],
                ..base
            },
            Theorem::Ctm3Negative => Profile {
                rho: RhoSign::Negative,
                uses_sigma: true,
                noncompact: true,
                growth: Some(E_GROWTH),
                conclusions: &[PseudoEinstein],
                ..base
            },
            Theorem::Cco1 => Profile {
                noncompact: true,
                conclusions: &[PseudoEinstein, RicciFlat],
                ..base
            },
            Theorem::Ctm1 => Profile {
                rho: RhoSign::Positive,
                uses_sigma: true,
                growth: Some(E_GROWTH),
                conclusions: &[Compact],
                ..base
            },
            Theorem::Cco2 => Profile {
                rho: RhoSign::Positive,
                conclusions: &[Compact, PseudoEinstein],
                ..base
            },
            Theorem::Ctm2 => Profile {
                rho: RhoSign::Positive,
                multiplier: Multiplier::Rho,
                lhs: Lhs::MixedSup,
                conclusions: &[PseudoEinstein, Compact],
                ..base
            },
            Theorem::Dtm2 => Profile {
                lhs: Lhs::ChernMoserL,
                uses_sigma: true,
                noncompact: true,
                pseudo_einstein: true,
                growth: Some(C_GROWTH),
                conclusions: &[SpaceFormZero],
                simply_connected_bonus: Some(Heisenberg),
                ..base
            },
            Theorem::Dtm2Negative => Profile {
                rho: RhoSign::Negative,
                lhs: Lhs::ChernMoserL,
                uses_sigma: true,
                min_n: 4,
                noncompact: true,
                pseudo_einstein: true,
                growth: Some(C_GROWTH),
                conclusions: &[SpaceFormNegative],
                ..base
            },
            Theorem::Dco1 => Profile {
                lhs: Lhs::MixedLSphere,
                noncompact: true,
                simply_connected: true,
                conclusions: &[Heisenberg],
                ..base
            },
            Theorem::Dtm1 => Profile {
                rho: RhoSign::Positive,
                lhs: Lhs::ChernMoserL,
                compact: true,
                pseudo_einstein: true,
                conclusions: &[SpaceFormPositive],
                simply_connected_bonus: Some(Sphere),
                ..base
            },
            Theorem::Dco2 => Profile {
                rho: RhoSign::Positive,
                lhs: Lhs::MixedLSphere,
                simply_connected: true,
                conclusions: &[Sphere],
                ..base
            },
            Theorem::Dtm3 => Profile {
                rho: RhoSign::Positive,
                multiplier: Multiplier::Rho,
                lhs: Lhs::ChernMoserSup,
                compact: true,
                pseudo_einstein: true,
                conclusions: &[SpaceFormPositive],
                simply_connected_bonus: Some(Sphere),
                ..base
            },
            Theorem::Dco3 => Profile {
                rho: RhoSign::Positive,
                multiplier: Multiplier::Rho,
                lhs: Lhs::MixedSup,
                simply_connected: true,
                conclusions: &[Sphere],
                ..base
            },
        }
    }

    pub fn multiplier(self) -> Multiplier {
        self.profile().multiplier
    }

    pub fn uses_sigma(self) -> bool {
        self.profile().uses_sigma
    }

    pub fn min_dim(self) -> usize {
        self.profile().min_n
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Threshold coefficient with its multiplier tag.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub theorem: Theorem,
    pub n: usize,
    pub sigma: Option<f64>,
    pub coefficient: f64,
    pub multiplier: Multiplier,
    /// Which piece of a piecewise constant was used.
    pub branch: Option<&'static str>,
    /// Input sits on a branch boundary the statement leaves ambiguous.
    pub boundary: bool,
}

fn radical(n: f64) -> f64 {
    ((n + 2.0) / (2.0 * n * n + 4.0 * n + 3.0)).sqrt()
}

/// `C_{nσ}` of the compactness theorem, with the branch used.
pub fn c_n_sigma(n: usize, sigma: f64) -> Result<(f64, &'static str, bool)> {
    if n < 2 {
        return Err(Error::domain("n >= 2 violated"));
    }
    if !(sigma >= 2.0) || !sigma.is_finite() {
        return Err(Error::domain(format!("sigma >= 2 violated (sigma = {sigma})")));
    }
    let nf = n as f64;
    let rational = (2.0 * nf * sigma - 2.0 * nf + 2.0) / ((nf + 1.0) * sigma * sigma);
    Ok(if n <= 3 {
        (rational, "n in {2,3}", false)
    } else if sigma < nf - 1.0 {
        (2.0 / (nf + 1.0), "n >= 4, 2 <= sigma < n-1", false)
    } else {
        (rational, "n >= 4, sigma >= n-1", sigma == nf - 1.0)
    })
}

/// `C₁` of the compact Chern-Moser theorem.
pub fn c_one(n: usize) -> Result<f64> {
    let nf = n as f64;
    match n {
        0 | 1 => Err(Error::domain("n >= 2 violated")),
        2 => Ok(5.0 / (9.0 * 3f64.sqrt())),
        3 => Ok(9.0 * 2f64.sqrt() / 56.0),
        _ => Ok(2.0 * (nf * nf - 1.0).sqrt() / (3.0 * (nf * nf - 2.0))),
    }
}

/// Upper end (exclusive) of the σ window of the negative-curvature
/// Chern-Moser theorem: `(n² + √(n⁴ − 4n³ + 4n²)) / (2(n+1))`.
pub fn dtm2_negative_sigma_limit(n: usize) -> f64 {
    let nf = n as f64;
    (nf * nf + (nf.powi(4) - 4.0 * nf.powi(3) + 4.0 * nf * nf).sqrt()) / (2.0 * (nf + 1.0))
}

fn dtm2_coefficient(nf: f64, sigma: f64) -> f64 {
    2.0 * nf * nf / (3.0 * (nf * nf - 2.0))
        * ((nf - 1.0) / (nf + 1.0)).sqrt()
        * (sigma + 2.0 / (nf + 1.0) - 1.0)
        / (sigma * sigma)
}

fn ctm3_coefficient(nf: f64, sigma: f64) -> f64 {
    (2.0 * nf * sigma - 2.0 * nf + 2.0) / (sigma * sigma * (nf + 1.0).sqrt()) * radical(nf)
}

/// Threshold coefficient of `theorem` in dimension `2n + 1`.
pub fn threshold(theorem: Theorem, n: usize, sigma: Option<f64>) -> Result<Threshold> {
    let prof = theorem.profile();
    if n < prof.min_n {
        return Err(Error::domain(format!(
            "{theorem} needs n >= {} (dimension 2n+1 >= {})",
            prof.min_n,
            2 * prof.min_n + 1
        )));
    }
    let nf = n as f64;
    let sigma = if prof.uses_sigma {
        let s = sigma.ok_or_else(|| Error::domain(format!("{theorem} needs sigma")))?;
        if !(s >= 2.0) || !s.is_finite() {
            return Err(Error::domain(format!("sigma >= 2 violated (sigma = {s})")));
        }
        Some(s)
    } else {
        None
    };
    let mut branch = None;
    let mut boundary = false;
    let coefficient = match theorem {
        Theorem::Ctm3 => ctm3_coefficient(nf, sigma.unwrap()),
        Theorem::Ctm3Negative => {
            let s = sigma.unwrap();
            if s >= nf - 1.0 {
                return Err(Error::domain(format!(
                    "{theorem} needs 2 <= sigma < n-1 (sigma = {s}, n = {n})"
                )));
            }
            ctm3_coefficient(nf, s)
        }
        Theorem::Cco1 | Theorem::Cco2 => {
            (2.0 * nf * nf + 2.0) / (nf + 1.0).powf(2.5) * radical(nf)
        }
        Theorem::Ctm1 => {
            let (c, b, edge) = c_n_sigma(n, sigma.unwrap())?;
            branch = Some(b);
            boundary = edge;
            c * ((nf + 1.0) * (nf + 2.0) / (2.0 * nf * nf + 4.0 * nf + 3.0)).sqrt()
        }
        Theorem::Ctm2 => (8.0 * (nf + 2.0) / ((nf + 1.0) * (2.0 * nf * nf + 4.0 * nf + 3.0))).sqrt(),
        Theorem::Dtm2 => dtm2_coefficient(nf, sigma.unwrap()),
        Theorem::Dtm2Negative => {
            let s = sigma.unwrap();
            let hi = dtm2_negative_sigma_limit(n);
            if s >= hi {
                return Err(Error::domain(format!(
                    "{theorem} needs 2 <= sigma < {hi} (sigma = {s}, n = {n})"
                )));
            }
            dtm2_coefficient(nf, s)
        }
        Theorem::Dco1 => {
            2.0 * nf * nf * (nf * nf + nf + 2.0) / (3.0 * (nf + 1.0).powi(3) * (nf * nf - 2.0))
                * ((nf - 1.0) / (nf + 1.0)).sqrt()
        }
        Theorem::Dtm1 | Theorem::Dco2 => {
            branch = Some(match n {
                2 => "n = 2",
                3 => "n = 3",
                _ => "n >= 4",
            });
            c_one(n)?
        }
        Theorem::Dtm3 | Theorem::Dco3 => 2.0 * (nf * nf - 1.0).sqrt() / (3.0 * (nf * nf - 2.0)),
    };
    Ok(Threshold {
        theorem,
        n,
        sigma,
        coefficient,
        multiplier: prof.multiplier,
        branch,
        boundary,
    })
}

/// `2√(n²−1)/(3(n²−2)) ≤ √(8(n+2)/((n+1)(2n²+4n+3)))`: the sup-norm
/// Chern-Moser constant never exceeds the mixed sup-norm constant.
pub fn comparison_check(n: usize) -> Result<SlackRecord> {
    let lhs = threshold(Theorem::Dtm3, n, None)?.coefficient;
    let rhs = threshold(Theorem::Ctm2, n, None)?.coefficient;
    Ok(SlackRecord::new(lhs, rhs, rhs, serde_json::json!({ "n": n })))
}

/// Where the σ-dependent coefficient of `theorem` is largest.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BestSigma {
    pub theorem: Theorem,
    pub n: usize,
    pub sigma: f64,
    pub coefficient: f64,
    /// Critical point of the coefficient as a function of σ on `(0, ∞)`.
    pub stationary_point: f64,
    /// The optimum is the end point σ = 2 of the admissible range.
    pub at_boundary: bool,
}

/// Best σ for the σ-dependent thresholds. Each coefficient is
/// `(σ + c)/σ²` up to constants, maximal at `σ = −2c`; the derivative sign
/// change is confirmed by bracketing, and the optimum is clipped to the
/// admissible window.
pub fn best_sigma(theorem: Theorem, n: usize) -> Result<BestSigma> {
    let nf = n as f64;
    let shift = match theorem {
        Theorem::Ctm3 | Theorem::Ctm3Negative | Theorem::Ctm1 => (2.0 - 2.0 * nf) / (2.0 * nf),
        Theorem::Dtm2 | Theorem::Dtm2Negative => 2.0 / (nf + 1.0) - 1.0,
        _ => return Err(Error::domain(format!("{theorem} does not depend on sigma"))),
    };
    let stationary = -2.0 * shift;
    let shape = |s: f64| (s + shift) / (s * s);
    let h = 1e-4 * stationary.max(1e-3);
    let slope = |s: f64| (shape(s + h) - shape(s - h)) / (2.0 * h);
    if !(slope(stationary - 10.0 * h) > 0.0 && slope(stationary + 10.0 * h) < 0.0) {
        return Err(Error::Inconclusive(format!(
            "no sign change of the derivative around sigma = {stationary}"
        )));
    }
    let sigma = stationary.max(2.0);
    let t = threshold(theorem, n, Some(sigma))?;
    Ok(BestSigma {
        theorem,
        n,
        sigma,
        coefficient: t.coefficient,
        stationary_point: stationary,
        at_boundary: sigma > stationary,
    })
}

/// Value of the second branch minus the third branch of `C_{nσ}` at
/// `σ = n − 1` (zero when the branches meet continuously).
pub fn ctm1_branch_jump(n: usize) -> Result<f64> {
    if n < 4 {
        return Err(Error::domain("branches only meet for n >= 4"));
    }
    let nf = n as f64;
    let s = nf - 1.0;
    let third = (2.0 * nf * s - 2.0 * nf + 2.0) / ((nf + 1.0) * s * s);
    Ok(2.0 / (nf + 1.0) - third)
}

/// Data about a Sasakian manifold of dimension `2n + 1`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSummary {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub yamabe: Option<f64>,
    #[serde(default, rename = "normC", skip_serializing_if = "Option::is_none")]
    pub norm_c: Option<f64>,
    #[serde(default, rename = "normE", skip_serializing_if = "Option::is_none")]
    pub norm_e: Option<f64>,
    #[serde(default, rename = "supC", skip_serializing_if = "Option::is_none")]
    pub sup_c: Option<f64>,
    #[serde(default, rename = "supE", skip_serializing_if = "Option::is_none")]
    pub sup_e: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compact: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simply_connected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pseudo_einstein: Option<bool>,
}

impl ManifoldSummary {
    pub fn from_json(s: &str) -> Result<Self> {
        let m: ManifoldSummary = serde_json::from_str(s)?;
        m.validate()?;
        Ok(m)
    }

    /// Field-level sanity; theorem-specific requirements are handled per
    /// report.
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::domain(format!("n >= 2 required (n = {})", self.n)));
        }
        for (name, v) in [("rho", self.rho), ("yamabe", self.yamabe), ("sigma", self.sigma)] {
            if matches!(v, Some(x) if !x.is_finite()) {
                return Err(Error::domain(format!("{name} must be finite")));
            }
        }
        for (name, v) in [
            ("normC", self.norm_c),
            ("normE", self.norm_e),
            ("supC", self.sup_c),
            ("supE", self.sup_e),
        ] {
            if matches!(v, Some(x) if !(x >= 0.0) || !x.is_finite()) {
                return Err(Error::domain(format!("{name} must be finite and nonnegative")));
            }
        }
        if matches!(self.sigma, Some(s) if s < 2.0) {
            return Err(Error::domain("sigma >= 2 required"));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Satisfied,
    NotSatisfied,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PinchReport {
    pub theorem: Theorem,
    pub status: Status,
    /// `lhs < threshold`, strictly.
    pub satisfied: bool,
    pub lhs: Option<f64>,
    pub threshold: Option<f64>,
    pub coefficient: Option<f64>,
    pub multiplier: Multiplier,
    pub sigma: Option<f64>,
    pub conclusion: Vec<Conclusion>,
    /// Hypotheses that cannot be checked from summary data and are assumed.
    pub assumptions: Vec<&'static str>,
    pub reason: Option<String>,
    pub boundary: bool,
}

impl PinchReport {
    fn not_applicable(theorem: Theorem, reason: String) -> Self {
        PinchReport {
            theorem,
            status: Status::NotApplicable,
            satisfied: false,
            lhs: None,
            threshold: None,
            coefficient: None,
            multiplier: theorem.multiplier(),
            sigma: None,
            conclusion: Vec::new(),
            assumptions: Vec::new(),
            reason: Some(reason),
            boundary: false,
        }
    }
}

fn need(v: Option<f64>, name: &str) -> std::result::Result<f64, String> {
    v.ok_or_else(|| format!("{name} not supplied"))
}

fn evaluate_one(theorem: Theorem, s: &ManifoldSummary) -> PinchReport {
    match try_evaluate(theorem, s) {
        Ok(r) => r,
        Err(reason) => PinchReport::not_applicable(theorem, reason),
    }
}

fn try_evaluate(theorem: Theorem, s: &ManifoldSummary) -> std::result::Result<PinchReport, String> {
    let prof = theorem.profile();
    if s.n < prof.min_n {
        return Err(format!("needs dimension 2n+1 >= {}", 2 * prof.min_n + 1));
    }
    let rho = need(s.rho, "rho")?;
    let sign_ok = match prof.rho {
        RhoSign::Zero => rho == 0.0,
        RhoSign::Negative => rho < 0.0,
        RhoSign::Positive => rho > 0.0,
    };
    if !sign_ok {
        let want = match prof.rho {
            RhoSign::Zero => "zero",
            RhoSign::Negative => "negative",
            RhoSign::Positive => "positive",
        };
        return Err(format!("needs {want} scalar curvature (rho = {rho})"));
    }
    if prof.noncompact && s.compact == Some(true) {
        return Err("needs a noncompact manifold".into());
    }
    if prof.compact && s.compact != Some(true) {
        return Err("needs a compact manifold (compact flag not set)".into());
    }
    if prof.simply_connected && s.simply_connected != Some(true) {
        return Err("needs a simply connected manifold (flag not set)".into());
    }
    if prof.pseudo_einstein && s.pseudo_einstein != Some(true) {
        return Err("needs a pseudo-Einstein manifold (flag not set)".into());
    }
    let multiplier_value = match prof.multiplier {
        Multiplier::Yamabe => {
            let y = need(s.yamabe, "yamabe")?;
            if !(y > 0.0) {
                return Err(format!("needs positive CR Yamabe constant (yamabe = {y})"));
            }
            y
        }
        Multiplier::Rho => rho,
    };
    let sqrt2 = 2f64.sqrt();
    let lhs = match prof.lhs {
        Lhs::MixedL => need(s.norm_c, "normC")? / sqrt2 + need(s.norm_e, "normE")?,
        Lhs::MixedLSphere => need(s.norm_c, "normC")? + sqrt2 * need(s.norm_e, "normE")?,
        Lhs::ChernMoserL => need(s.norm_c, "normC")?,
        // sup of the sum is bounded by the sum of the sups
        Lhs::MixedSup => sqrt2 * need(s.sup_e, "supE")? + need(s.sup_c, "supC")?,
        Lhs::ChernMoserSup => need(s.sup_c, "supC")?,
    };
    let sigma = if prof.uses_sigma {
        Some(need(s.sigma, "sigma")?)
    } else {
        None
    };
    let t = threshold(theorem, s.n, sigma).map_err(|e| e.to_string())?;
    let bound = t.coefficient * multiplier_value;
    let satisfied = lhs < bound;
    let mut conclusion = Vec::new();
    if satisfied {
        conclusion.extend_from_slice(prof.conclusions);
        if let (Some(extra), Some(true)) = (prof.simply_connected_bonus, s.simply_connected) {
            conclusion.push(extra);
        }
    }
    Ok(PinchReport {
        theorem,
        status: if satisfied {
            Status::Satisfied
        } else {
            Status::NotSatisfied
        },
        satisfied,
        lhs: Some(lhs),
        threshold: Some(bound),
        coefficient: Some(t.coefficient),
        multiplier: t.multiplier,
        sigma,
        conclusion,
        assumptions: prof.growth.into_iter().collect(),
        reason: None,
        boundary: t.boundary,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evaluation {
    pub version: &'static str,
    pub summary: ManifoldSummary,
    pub reports: Vec<PinchReport>,
}

/// One report per theorem, in the fixed order of [`Theorem::ALL`].
pub fn evaluate(summary: &ManifoldSummary) -> Result<Evaluation> {
    summary.validate()?;
    Ok(Evaluation {
        version: FORMAT_VERSION,
        summary: summary.clone(),
        reports: Theorem::ALL.iter().map(|&t| evaluate_one(t, summary)).collect(),
    })
}
