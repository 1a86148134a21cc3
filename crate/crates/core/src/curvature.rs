//! Algebra of the Webster curvature: the orthogonal decomposition into
//! Chern-Moser, traceless Ricci and scalar parts, the quadratic tensor `F`
//! built from `E`, space forms, sectional curvatures and the Riemannian
//! curvature of the Webster metric on a Sasakian manifold.

use serde_json::json;

use crate::tensor::{
    ensure_dimension, hermitian_eigen, CMatrix, HermitianMatrix, TracelessHermitianMatrix,
    WebsterTensor,
};
use crate::{Complex64, Error, Result, SlackRecord};

/// `R = C + P(E) + Q(ρ)` with `C` totally traceless.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureDecomposition {
    pub n: usize,
    pub chern_moser: WebsterTensor,
    pub traceless_ricci: TracelessHermitianMatrix,
    pub scalar: f64,
}

impl CurvatureDecomposition {
    /// The `E`-block of the decomposition.
    pub fn ricci_part(&self) -> WebsterTensor {
        WebsterTensor::ricci_block(self.traceless_ricci.hermitian())
    }

    /// The `ρ`-block of the decomposition.
    pub fn scalar_part(&self) -> WebsterTensor {
        WebsterTensor::scalar_block(self.n, self.scalar)
    }

    /// Largest absolute pairwise inner product among the three parts.
    pub fn max_cross_inner(&self) -> f64 {
        let (c, p, q) = (&self.chern_moser, self.ricci_part(), self.scalar_part());
        c.inner(&p).abs().max(c.inner(&q).abs()).max(p.inner(&q).abs())
    }
}

pub fn decompose(r: &WebsterTensor) -> Result<CurvatureDecomposition> {
    let n = r.dim();
    ensure_dimension(n)?;
    let ric = r.ricci();
    let rho = ric.trace();
    let e = TracelessHermitianMatrix::project(&ric);
    let c = r.sub(&WebsterTensor::trace_block(&ric));
    Ok(CurvatureDecomposition {
        n,
        chern_moser: c,
        traceless_ricci: e,
        scalar: rho,
    })
}

/// Decomposes raw components after checking the Webster symmetries.
pub fn decompose_components(n: usize, data: Vec<Complex64>) -> Result<CurvatureDecomposition> {
    decompose(&WebsterTensor::new(n, data)?)
}

pub fn recompose(d: &CurvatureDecomposition) -> Result<WebsterTensor> {
    ensure_dimension(d.n)?;
    if d.chern_moser.dim() != d.n || d.traceless_ricci.dim() != d.n {
        return Err(Error::Shape("decomposition parts disagree on n".into()));
    }
    let resid = d.chern_moser.max_contraction();
    if resid > 1e-12 * d.chern_moser.max_abs().max(1.0) {
        return Err(Error::symmetry("Chern-Moser part is not traceless", resid));
    }
    Ok(d.chern_moser.add(&d.ricci_part()).add(&d.scalar_part()))
}

/// `2κ(δ_{ᾱβ}δ_{λμ̄} + δ_{ᾱλ}δ_{βμ̄})`.
pub fn space_form_curvature(n: usize, kappa: f64) -> Result<WebsterTensor> {
    ensure_dimension(n)?;
    if !kappa.is_finite() {
        return Err(Error::NonFinite("κ".into()));
    }
    Ok(WebsterTensor::scalar_block(n, 2.0 * kappa * (n * (n + 1)) as f64))
}

/// Pseudo-Hermitian sectional curvature of the plane spanned by
/// `Z = Σ z_α η_α`:
/// `Σ R_{ᾱβλμ̄} conj(z_α) z_β z_λ conj(z_μ) / (4|z|⁴)`.
pub fn k_theta(r: &WebsterTensor, z: &[Complex64]) -> Result<f64> {
    let n = r.dim();
    if z.len() != n {
        return Err(Error::Shape(format!("direction has {} components, n = {n}", z.len())));
    }
    let norm2: f64 = z.iter().map(|c| c.norm_sqr()).sum();
    if !(norm2 > 0.0) || !norm2.is_finite() {
        return Err(Error::domain("k_theta needs a nonzero finite direction"));
    }
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..n {
        for b in 0..n {
            let ab = z[a].conj() * z[b];
            for l in 0..n {
                for m in 0..n {
                    s += r.get(a, b, l, m) * ab * z[l] * z[m].conj();
                }
            }
        }
    }
    Ok(s.re / (4.0 * norm2 * norm2))
}

/// `F = T + P + Q` for `F_{ᾱβλμ̄} = E_{ᾱβ}E_{λμ̄} + E_{ᾱλ}E_{βμ̄}`.
#[derive(Clone, Debug)]
pub struct FDecomposition {
    pub f_tensor: WebsterTensor,
    pub t: WebsterTensor,
    pub p: WebsterTensor,
    pub q: WebsterTensor,
    /// `Z = tr E⁴`.
    pub z: f64,
    /// `f = tr E² = ½|E|²`.
    pub f: f64,
}

pub fn f_decompose(e: &TracelessHermitianMatrix) -> Result<FDecomposition> {
    let n = e.dim();
    ensure_dimension(n)?;
    let m = e.hermitian();
    let f_tensor = WebsterTensor::from_fn(n, |a, b, l, mu| {
        m.get(b, a) * m.get(l, mu) + m.get(l, a) * m.get(b, mu)
    });
    // Ricci contraction of F is E², with trace f.
    let e2 = HermitianMatrix::symmetrize(&m.power(2));
    let f = e2.trace();
    let ftilde = TracelessHermitianMatrix::project(&e2);
    let p = WebsterTensor::ricci_block(ftilde.hermitian());
    let q = WebsterTensor::scalar_block(n, f);
    let t = f_tensor.sub(&p).sub(&q);
    let z = m.power(4).trace().re;
    Ok(FDecomposition {
        f_tensor,
        t,
        p,
        q,
        z,
        f,
    })
}

/// Validates that a raw matrix is traceless Hermitian before decomposing.
pub fn f_decompose_matrix(m: HermitianMatrix) -> Result<FDecomposition> {
    f_decompose(&TracelessHermitianMatrix::new(m)?)
}

/// `Σ E_{γλ̄} C_{β̄λαγ̄} E_{ᾱβ}`, real for Webster-symmetric `C`.
pub fn coupling_inner(e: &TracelessHermitianMatrix, c: &WebsterTensor) -> Result<f64> {
    let n = e.dim();
    if c.dim() != n {
        return Err(Error::Shape("E and C have different n".into()));
    }
    let mut s = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for g in 0..n {
        for l in 0..n {
            let egl = e.get(g, l);
            for b in 0..n {
                for a in 0..n {
                    let term = egl * c.get(b, l, a, g) * e.get(b, a);
                    scale += term.norm();
                    s += term;
                }
            }
        }
    }
    if s.im.abs() > 1e-10 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::symmetry("coupling contraction is not real", s.im.abs()));
    }
    Ok(s.re)
}

/// Model space of a Sasakian space form up to D-homothety.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelSpace {
    Sphere,
    Heisenberg,
    ComplexBallTimesLine,
}

impl ModelSpace {
    pub fn label(self) -> &'static str {
        match self {
            ModelSpace::Sphere => "sphere",
            ModelSpace::Heisenberg => "heisenberg",
            ModelSpace::ComplexBallTimesLine => "complex-ball-times-line",
        }
    }
}

pub fn tanno_classify(kappa: f64) -> ModelSpace {
    if kappa > 0.0 {
        ModelSpace::Sphere
    } else if kappa < 0.0 {
        ModelSpace::ComplexBallTimesLine
    } else {
        ModelSpace::Heisenberg
    }
}

/// Complexified tangent vector `Σ p_α η_α + Σ q_α η_ᾱ + s T`.
#[derive(Clone, Debug, PartialEq)]
pub struct TangentVector {
    pub p: Vec<Complex64>,
    pub q: Vec<Complex64>,
    pub s: Complex64,
}

impl TangentVector {
    pub fn zero(n: usize) -> Self {
        TangentVector {
            p: vec![Complex64::new(0.0, 0.0); n],
            q: vec![Complex64::new(0.0, 0.0); n],
            s: Complex64::new(0.0, 0.0),
        }
    }

    /// Real horizontal vector `Σ p_α η_α + conj(p_α) η_ᾱ`.
    pub fn horizontal(p: &[Complex64]) -> Self {
        TangentVector {
            p: p.to_vec(),
            q: p.iter().map(|z| z.conj()).collect(),
            s: Complex64::new(0.0, 0.0),
        }
    }

    pub fn reeb(n: usize) -> Self {
        let mut v = Self::zero(n);
        v.s = Complex64::new(1.0, 0.0);
        v
    }

    pub fn eta(n: usize, a: usize) -> Self {
        let mut v = Self::zero(n);
        v.p[a] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn eta_bar(n: usize, a: usize) -> Self {
        let mut v = Self::zero(n);
        v.q[a] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn dim(&self) -> usize {
        self.p.len()
    }

    /// `J` acts by `i` on `T_{1,0}`, by `−i` on `T_{0,1}` and kills `T`.
    pub fn j(&self) -> Self {
        let i = Complex64::new(0.0, 1.0);
        TangentVector {
            p: self.p.iter().map(|z| z * i).collect(),
            q: self.q.iter().map(|z| -z * i).collect(),
            s: Complex64::new(0.0, 0.0),
        }
    }

    /// Components of `a·self + b·other`.
    pub fn combine(&self, a: Complex64, other: &Self, b: Complex64) -> Self {
        TangentVector {
            p: self.p.iter().zip(&other.p).map(|(x, y)| a * x + b * y).collect(),
            q: self.q.iter().zip(&other.q).map(|(x, y)| a * x + b * y).collect(),
            s: a * self.s + b * other.s,
        }
    }
}

/// Webster metric `g_θ`, extended complex-bilinearly.
pub fn webster_metric(x: &TangentVector, y: &TangentVector) -> Complex64 {
    let h: Complex64 = (0..x.dim()).map(|a| x.p[a] * y.q[a] + x.q[a] * y.p[a]).sum();
    h + x.s * y.s
}

/// `dθ(X, Y) = i Σ (p_X q_Y − q_X p_Y)`, so that `g_θ(X, Y) = dθ(X, JY)` on
/// horizontal vectors.
pub fn d_theta(x: &TangentVector, y: &TangentVector) -> Complex64 {
    let s: Complex64 = (0..x.dim()).map(|a| x.p[a] * y.q[a] - x.q[a] * y.p[a]).sum();
    Complex64::new(0.0, 1.0) * s
}

/// `g_θ(R(X,Y)Z, W)` for the Tanaka-Webster curvature of a torsion-free
/// structure, whose curvature 2-form is `R^α_{βλμ̄} θ^λ ∧ θ^μ̄`.
pub fn tanaka_webster_curvature(
    r: &WebsterTensor,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
    w: &TangentVector,
) -> Complex64 {
    let n = r.dim();
    let mut s = Complex64::new(0.0, 0.0);
    for l in 0..n {
        for m in 0..n {
            let form = x.p[l] * y.q[m] - y.p[l] * x.q[m];
            if form == Complex64::new(0.0, 0.0) {
                continue;
            }
            let mut inner = Complex64::new(0.0, 0.0);
            for a in 0..n {
                for b in 0..n {
                    inner += z.p[b] * w.q[a] * r.get(a, b, l, m) - z.q[b] * w.p[a] * r.get(b, a, l, m);
                }
            }
            s += form * inner;
        }
    }
    s
}

/// `g_θ(R^θ(X,Y)Z, W)` for the Riemannian curvature of the Webster metric of
/// a Sasakian manifold with Webster curvature `r`.
pub fn webster_to_riemannian(
    r: &WebsterTensor,
    x: &TangentVector,
    y: &TangentVector,
    z: &TangentVector,
    w: &TangentVector,
) -> Complex64 {
    let g = webster_metric;
    let (jx, jy, jz) = (x.j(), y.j(), z.j());
    tanaka_webster_curvature(r, x, y, z, w)
        + g(&jx, z) * g(&jy, w)
        - g(&jy, z) * g(&jx, w)
        + 2.0 * d_theta(x, y) * g(&jz, w)
        + x.s * g(y, z) * w.s
        - y.s * g(x, z) * w.s
        - z.s * x.s * g(y, w)
        + z.s * y.s * g(x, w)
}

/// Sectional curvature of the Webster metric on the plane `span{X, Y}`.
pub fn riemannian_sectional(r: &WebsterTensor, x: &TangentVector, y: &TangentVector) -> Result<f64> {
    let area = webster_metric(x, x) * webster_metric(y, y) - webster_metric(x, y).powi(2);
    if area.re.abs() <= 1e-300 {
        return Err(Error::domain("degenerate plane"));
    }
    Ok((webster_to_riemannian(r, x, y, y, x) / area).re)
}

/// `Ric^θ(Y, Z) = tr(X ↦ R^θ(X, Y)Z)` in the frame `{η_α, η_ᾱ, T}`.
pub fn riemannian_ricci(r: &WebsterTensor, y: &TangentVector, z: &TangentVector) -> Complex64 {
    let n = r.dim();
    let mut s = Complex64::new(0.0, 0.0);
    for a in 0..n {
        let (e, eb) = (TangentVector::eta(n, a), TangentVector::eta_bar(n, a));
        s += webster_to_riemannian(r, &e, y, z, &eb) + webster_to_riemannian(r, &eb, y, z, &e);
    }
    let t = TangentVector::reeb(n);
    s + webster_to_riemannian(r, &t, y, z, &t)
}

/// Both sides of
/// `4Σλ³ − 4Σ R_{ᾱαββ̄} λ_β λ_α = 2Σ_{α≠β} R_{ᾱαββ̄}(λ_α − λ_β)²`
/// evaluated in a frame diagonalising the Ricci tensor. `slack` is the
/// identity residual; `scale` bounds the magnitude of the summands.
pub fn b2_identity_check(r: &WebsterTensor) -> Result<SlackRecord> {
    let n = r.dim();
    ensure_dimension(n)?;
    let eig = hermitian_eigen(&r.ricci())?;
    let rr = r.in_frame(&eig.vectors);
    let lam = &eig.values;
    let d = |a: usize, b: usize| rr.get(a, a, b, b).re;
    let mut lhs = 4.0 * lam.iter().map(|x| x.powi(3)).sum::<f64>();
    let mut scale = lhs.abs();
    let mut rhs = 0.0;
    for a in 0..n {
        for b in 0..n {
            let t = 4.0 * d(a, b) * lam[a] * lam[b];
            lhs -= t;
            scale += t.abs();
            if a != b {
                rhs += 2.0 * d(a, b) * (lam[a] - lam[b]).powi(2);
            }
        }
    }
    Ok(SlackRecord::new(
        lhs,
        rhs,
        scale,
        json!({ "n": n, "ricci_eigenvalues": lam }),
    ))
}

/// Whether the eigenbasis entries `R_{ᾱαββ̄}` with `α ≠ β` are all
/// nonnegative (orthogonal bisectional curvature sign condition).
pub fn orthogonal_entries_nonnegative(r: &WebsterTensor) -> Result<bool> {
    let n = r.dim();
    let eig = hermitian_eigen(&r.ricci())?;
    let rr = r.in_frame(&eig.vectors);
    Ok((0..n).all(|a| (0..n).all(|b| a == b || rr.get(a, a, b, b).re >= 0.0)))
}

/// Random unitary from the eigenvectors of a random Hermitian matrix.
pub fn random_unitary(n: usize, rng: &mut crate::rng::CounterRng) -> Result<CMatrix> {
    let raw = CMatrix::from_vec(
        n,
        (0..n * n)
            .map(|_| {
                let re = rng.symmetric();
                let im = rng.symmetric();
                Complex64::new(re, im)
            })
            .collect(),
    );
    Ok(hermitian_eigen(&HermitianMatrix::symmetrize(&raw))?.vectors)
}
