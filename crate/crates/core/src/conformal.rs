//! CR conformal changes `θ̃ = e^{2u} θ` of the Heisenberg structure and
//! D-homothetic rescalings `θ̃ = λ θ`.
//!
//! On `H^n` the reference structure is flat and torsion free, so the
//! transformation laws only involve the derivatives of `u`, which come from
//! the closed-form engine exactly.

use serde::Serialize;

use crate::heisenberg::{ClosedForm, FrameCalculus, FrameIndex, HeisenbergPoint};
use crate::tensor::{CMatrix, HermitianMatrix, TorsionMatrix};
use crate::{Complex64, Error, Result};

/// Real conformal factor `u` from the closed-form catalogue.
#[derive(Clone, Debug, PartialEq)]
pub struct ConformalFactor {
    u: ClosedForm,
}

impl ConformalFactor {
    pub fn new(u: ClosedForm) -> Self {
        ConformalFactor { u }
    }

    /// `u = |z|²`, the factor of the non-constant scalar curvature example.
    pub fn abs_sq(n: usize) -> Self {
        Self::new(ClosedForm::abs_sq(n))
    }

    pub fn from_id(n: usize, id: &str) -> Result<Self> {
        Ok(Self::new(ClosedForm::from_id(n, id)?))
    }

    pub fn dim(&self) -> usize {
        self.u.n
    }

    pub fn function(&self) -> &ClosedForm {
        &self.u
    }

    fn value(&self, p: &HeisenbergPoint) -> Result<f64> {
        if p.dim() != self.dim() {
            return Err(Error::Shape(format!(
                "point in H^{} for a factor on H^{}",
                p.dim(),
                self.dim()
            )));
        }
        let v = self.u.eval(p);
        if v.im.abs() > 1e-12 * (1.0 + v.re.abs()) || !v.re.is_finite() {
            return Err(Error::domain(format!("conformal factor is not real at this point: {v}")));
        }
        Ok(v.re)
    }

    fn first(&self, p: &HeisenbergPoint) -> Result<Vec<Complex64>> {
        (0..self.dim())
            .map(|a| self.u.frame_apply(FrameIndex::Holo(a), p))
            .collect()
    }
}

/// Transformed quantities at one point, in the transformed coframe.
#[derive(Clone, Debug, PartialEq)]
pub struct TransformedPointData {
    pub point: HeisenbergPoint,
    pub torsion: TorsionMatrix,
    pub ricci: HermitianMatrix,
    /// `ρ̃ = tr R̃`.
    pub scalar: f64,
    /// `e^{2u}` at the point.
    pub webster_scale: f64,
    /// `ρ̃` from the separately displayed scalar law, which does not agree
    /// with the trace of the Ricci law; kept for comparison only.
    pub scalar_displayed_law: f64,
    /// Largest entry of the trace-free part of `R̃`.
    pub einstein_residual: f64,
}

/// `Ã_{αβ} = e^{−2u}(i u_{αβ} − 2i u_α u_β)` on the Heisenberg base.
pub fn transform_torsion(u: &ConformalFactor, p: &HeisenbergPoint) -> Result<TorsionMatrix> {
    let n = u.dim();
    let scale = (-2.0 * u.value(p)?).exp();
    let d1 = u.first(p)?;
    let i = Complex64::new(0.0, 1.0);
    let mut m = CMatrix::zeros(n);
    for a in 0..n {
        for b in 0..n {
            let uab = u.u.covariant_second(FrameIndex::Holo(a), FrameIndex::Holo(b), p)?;
            m[(a, b)] = (i * uab - 2.0 * i * d1[a] * d1[b]) * scale;
        }
    }
    TorsionMatrix::new(m)
}

/// `e^{2u} R̃_{λμ̄} = −(n+2)(u_{λμ̄} + u_{μ̄λ}) − δ_{λμ}(Δ_b u + 4(n+1) u_α u_ᾱ)`
/// and `ρ̃ = tr R̃`.
pub fn transform_ricci_scalar(u: &ConformalFactor, p: &HeisenbergPoint) -> Result<(HermitianMatrix, f64)> {
    let d = transform_ricci_parts(u, p)?;
    Ok((d.0, d.1))
}

fn transform_ricci_parts(u: &ConformalFactor, p: &HeisenbergPoint) -> Result<(HermitianMatrix, f64, f64)> {
    let n = u.dim();
    let nf = n as f64;
    let inv = (-2.0 * u.value(p)?).exp();
    let d1 = u.first(p)?;
    let grad: f64 = d1.iter().map(|z| z.norm_sqr()).sum();
    let lap = u.u.sub_laplacian(p)?;
    let mut m = CMatrix::zeros(n);
    for l in 0..n {
        for mu in 0..n {
            let (hl, am) = (FrameIndex::Holo(l), FrameIndex::Anti(mu));
            let mixed = u.u.covariant_second(hl, am, p)? + u.u.covariant_second(am, hl, p)?;
            let mut v = -(nf + 2.0) * mixed;
            if l == mu {
                v -= Complex64::new(lap + 4.0 * (nf + 1.0) * grad, 0.0);
            }
            m[(l, mu)] = v * inv;
        }
    }
    let ricci = HermitianMatrix::new(m)?;
    let scalar = ricci.trace();
    let displayed = inv * (-2.0 * (nf + 1.0) * lap - 4.0 * (nf + 1.0) * grad);
    Ok((ricci, scalar, displayed))
}

pub fn transform_point(u: &ConformalFactor, p: &HeisenbergPoint) -> Result<TransformedPointData> {
    let torsion = transform_torsion(u, p)?;
    let (ricci, scalar, displayed) = transform_ricci_parts(u, p)?;
    let n = u.dim();
    let mut residual: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let shift = if a == b { scalar / n as f64 } else { 0.0 };
            residual = residual.max((ricci.get(a, b) - shift).norm());
        }
    }
    Ok(TransformedPointData {
        point: p.clone(),
        torsion,
        ricci,
        scalar,
        webster_scale: (2.0 * u.value(p)?).exp(),
        scalar_displayed_law: displayed,
        einstein_residual: residual,
    })
}

/// Closed forms for `u = |z|²`:
/// `(R̃ diagonal entry, ρ̃) = (−4(n+1)(1+|z|²)e^{−2|z|²}, n times that)`.
pub fn abs_sq_closed_form(n: usize, p: &HeisenbergPoint) -> (f64, f64) {
    let r2 = p.abs_sq();
    let nf = n as f64;
    let d = -4.0 * (nf + 1.0) * (1.0 + r2) * (-2.0 * r2).exp();
    (d, nf * d)
}

/// Largest absolute entry accepted as "zero" for the trace-free Ricci part.
pub const EINSTEIN_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct ScalarWitness {
    pub points: Vec<TransformedPointData>,
    pub scalar_min: f64,
    pub scalar_max: f64,
    pub consequence: &'static str,
}

/// Consequence recorded by [`nonconstant_scalar_witness`]. Vanishing torsion
/// divergence forces constant scalar curvature, so a pseudo-Einstein
/// structure with non-constant `ρ̃` must have non-vanishing divergence.
pub const DIVERGENCE_CONSEQUENCE: &str =
    "divergence of transformed torsion cannot vanish: pseudo-Einstein with non-constant scalar curvature";

/// Evaluates `θ̃ = e^{2|z|²}θ` at the points and certifies that `ρ̃` varies
/// while `Ẽ = 0`.
pub fn nonconstant_scalar_witness(n: usize, points: &[HeisenbergPoint]) -> Result<ScalarWitness> {
    if points.len() < 2 {
        return Err(Error::Inconclusive("need at least two points".into()));
    }
    let r0 = points[0].abs_sq();
    if points.iter().all(|p| (p.abs_sq() - r0).abs() <= 1e-14 * (1.0 + r0)) {
        return Err(Error::Inconclusive("all points have the same |z|".into()));
    }
    let u = ConformalFactor::abs_sq(n);
    let data = points
        .iter()
        .map(|p| transform_point(&u, p))
        .collect::<Result<Vec<_>>>()?;
    let lo = data.iter().map(|d| d.scalar).fold(f64::INFINITY, f64::min);
    let hi = data.iter().map(|d| d.scalar).fold(f64::NEG_INFINITY, f64::max);
    let peak = data.iter().map(|d| d.scalar.abs()).fold(0.0, f64::max);
    if hi - lo <= 1e-6 * peak {
        return Err(Error::Inconclusive(format!("scalar curvature spread {} too small", hi - lo)));
    }
    if let Some(d) = data.iter().find(|d| d.einstein_residual > EINSTEIN_TOL) {
        return Err(Error::symmetry("transformed structure is not pseudo-Einstein", d.einstein_residual));
    }
    Ok(ScalarWitness {
        points: data,
        scalar_min: lo,
        scalar_max: hi,
        consequence: DIVERGENCE_CONSEQUENCE,
    })
}

/// Pointwise data carried through a D-homothety: the Ricci form, torsion
/// and scalar at a reference point plus a sampled field of `|C|` values with
/// their volume weights.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HomothetyBundle {
    pub n: usize,
    #[serde(skip)]
    pub ricci: HermitianMatrix,
    #[serde(skip)]
    pub torsion: TorsionMatrix,
    pub scalar: f64,
    pub chern_moser_norms: Vec<f64>,
    pub volume_weights: Vec<f64>,
}

impl HomothetyBundle {
    pub fn new(
        ricci: HermitianMatrix,
        torsion: TorsionMatrix,
        chern_moser_norms: Vec<f64>,
        volume_weights: Vec<f64>,
    ) -> Result<Self> {
        let n = ricci.dim();
        if torsion.dim() != n {
            return Err(Error::Shape("torsion and Ricci dimensions differ".into()));
        }
        if chern_moser_norms.len() != volume_weights.len() {
            return Err(Error::Shape("one volume weight per sample needed".into()));
        }
        if chern_moser_norms.iter().chain(&volume_weights).any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::domain("norms and weights must be finite and nonnegative"));
        }
        Ok(HomothetyBundle {
            n,
            scalar: ricci.trace(),
            ricci,
            torsion,
            chern_moser_norms,
            volume_weights,
        })
    }

    /// `Σ w_i |C_i|^{n+1}`, the discrete `∫|C|^{n+1} dV`.
    pub fn chern_moser_energy(&self) -> f64 {
        let p = (self.n + 1) as i32;
        crate::sum::pairwise_sum_by(self.volume_weights.len(), |i| {
            self.volume_weights[i] * self.chern_moser_norms[i].powi(p)
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = self.ricci.max_abs_diff(&other.ricci);
        d = d.max((self.scalar - other.scalar).abs());
        d = d.max(self.torsion.as_matrix().max_abs_diff(&other.torsion.as_matrix()));
        for (a, b) in self.chern_moser_norms.iter().zip(&other.chern_moser_norms) {
            d = d.max((a - b).abs());
        }
        for (a, b) in self.volume_weights.iter().zip(&other.volume_weights) {
            d = d.max((a - b).abs());
        }
        d
    }
}

/// `θ̃ = λθ`: Ricci, scalar, torsion and `|C|` scale by `λ^{−1}`, the volume
/// density by `λ^{n+1}`.
pub fn d_homothety(data: &HomothetyBundle, lambda: f64) -> Result<HomothetyBundle> {
    if !(lambda > 0.0) || !lambda.is_finite() {
        return Err(Error::domain(format!("homothety factor must be positive, got {lambda}")));
    }
    let inv = 1.0 / lambda;
    let vol = lambda.powi(data.n as i32 + 1);
    Ok(HomothetyBundle {
        n: data.n,
        ricci: data.ricci.scaled(inv),
        torsion: data.torsion.scaled(inv),
        scalar: data.scalar * inv,
        chern_moser_norms: data.chern_moser_norms.iter().map(|c| c * inv).collect(),
        volume_weights: data.volume_weights.iter().map(|w| w * vol).collect(),
    })
}

/// Lower bound `c/λ − 2` of the horizontal Riemannian Ricci curvature of
/// `λθ` when `R_{αβ̄} ≥ c δ` on a Sasakian manifold.
pub fn homothetic_ricci_lower_bound(c: f64, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::domain("homothety factor must be positive"));
    }
    Ok(c / lambda - 2.0)
}

/// Supremum of the factors `λ` for which `λθ` has positive Riemannian Ricci
/// curvature, given `R_{αβ̄} ≥ c δ` with `c > 0`: every `λ < c/2` works.
pub fn positive_ricci_homothety_bound(c: f64) -> Result<f64> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::domain("Ricci lower bound must be positive"));
    }
    Ok(c / 2.0)
}
