//! Frame calculus on the Heisenberg group `H^n ≅ C^n × R` with the frame
//! `η_α = ∂/∂z^α + i z̄^α ∂/∂t`, `η_ᾱ = ∂/∂z̄^α − i z^α ∂/∂t`, `T = ∂/∂t`.
//!
//! The Tanaka-Webster connection of the standard structure is flat and
//! torsion free in this frame, so covariant derivatives are iterated frame
//! derivatives: `u_{AB} = η_B η_A u`.
//!
//! Two interchangeable representations implement [`FrameCalculus`]:
//! [`ClosedForm`] (symbolic, exact) and [`GridFunction`] (central differences).

mod expr;
mod grid;
mod volume;
mod yamabe;

pub use expr::{Expr, Partial};
pub use grid::{Axis, GridFunction, GridIntegral};
pub use volume::volume_constant;
pub use grid::{DECAY_TOL, MARGIN};
pub use yamabe::{
    gaussian_quotient_exact_n1, minimize_gaussian, richardson_order, sobolev_exponent,
    yamabe_quotient, GaussianFamilyBox, YamabeMinimum, GOLDEN_ITERATIONS,
};

use crate::{Complex64, Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergPoint {
    pub z: Vec<Complex64>,
    pub t: f64,
}

impl HeisenbergPoint {
    pub fn new(z: Vec<Complex64>, t: f64) -> Result<Self> {
        if !t.is_finite() || z.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::NonFinite("Heisenberg point".into()));
        }
        Ok(HeisenbergPoint { z, t })
    }

    pub fn origin(n: usize) -> Self {
        HeisenbergPoint {
            z: vec![Complex64::new(0.0, 0.0); n],
            t: 0.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn abs_sq(&self) -> f64 {
        self.z.iter().map(|c| c.norm_sqr()).sum()
    }
}

/// Frame vector: `η_α`, `η_ᾱ` or the Reeb field `T` (the `0` slot).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameIndex {
    Holo(usize),
    Anti(usize),
    Reeb,
}

pub trait FrameCalculus {
    fn dim(&self) -> usize;

    /// `(η_A u)(p)`.
    fn frame_apply(&self, a: FrameIndex, p: &HeisenbergPoint) -> Result<Complex64>;

    /// `u_{AB}(p) = (η_B η_A u)(p)`.
    fn covariant_second(&self, a: FrameIndex, b: FrameIndex, p: &HeisenbergPoint)
        -> Result<Complex64>;

    /// `Δ_b u = Σ_α (u_{αᾱ} + u_{ᾱα})`.
    fn sub_laplacian_complex(&self, p: &HeisenbergPoint) -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for a in 0..self.dim() {
            s += self.covariant_second(FrameIndex::Holo(a), FrameIndex::Anti(a), p)?;
            s += self.covariant_second(FrameIndex::Anti(a), FrameIndex::Holo(a), p)?;
        }
        Ok(s)
    }

    /// Real part of [`Self::sub_laplacian_complex`]; exact for real `u`.
    fn sub_laplacian(&self, p: &HeisenbergPoint) -> Result<f64> {
        Ok(self.sub_laplacian_complex(p)?.re)
    }

    /// `|∇_b u|² = 2 Σ_α |η_α u|²` (for real `u`).
    fn horizontal_gradient_sq(&self, p: &HeisenbergPoint) -> Result<f64> {
        let mut s = 0.0;
        for a in 0..self.dim() {
            s += self.frame_apply(FrameIndex::Holo(a), p)?.norm_sqr();
        }
        Ok(2.0 * s)
    }

    /// `|∇_b u|`.
    fn horizontal_gradient_norm(&self, p: &HeisenbergPoint) -> Result<f64> {
        Ok(self.horizontal_gradient_sq(p)?.sqrt())
    }
}

/// Function from the closed-form catalogue on `H^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClosedForm {
    pub n: usize,
    pub expr: Expr,
}

impl ClosedForm {
    pub fn new(n: usize, expr: Expr) -> Self {
        ClosedForm { n, expr }
    }

    pub fn abs_sq(n: usize) -> Self {
        Self::new(n, Expr::abs_sq(n))
    }

    pub fn gaussian(n: usize, a: f64, b: f64) -> Self {
        Self::new(n, Expr::gaussian(n, a, b))
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Expr::constant(0.0))
    }

    /// Catalogue lookup: `zero`, `abs_sq`, `t`, `re_z<k>`, `gaussian:<a>,<b>`,
    /// `abs_sq_gaussian:<a>,<b>` (1-based `k`).
    pub fn from_id(n: usize, id: &str) -> Result<Self> {
        let bad = || Error::domain(format!("unknown catalogue function {id:?}"));
        let params = |s: &str| -> Result<(f64, f64)> {
            let mut it = s.split(',').map(|x| x.trim().parse::<f64>());
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
                _ => Err(bad()),
            }
        };
        match id {
            "zero" => Ok(Self::zero(n)),
            "abs_sq" | "|z|^2" => Ok(Self::abs_sq(n)),
            "t" => Ok(Self::new(n, Expr::t())),
            _ => {
                if let Some(k) = id.strip_prefix("re_z") {
                    let k: usize = k.parse().map_err(|_| bad())?;
                    if k == 0 || k > n {
                        return Err(bad());
                    }
                    return Ok(Self::new(n, Expr::re_z(k - 1)));
                }
                if let Some(p) = id.strip_prefix("gaussian:") {
                    let (a, b) = params(p)?;
                    return Ok(Self::gaussian(n, a, b));
                }
                if let Some(p) = id.strip_prefix("abs_sq_gaussian:") {
                    let (a, b) = params(p)?;
                    return Ok(Self::new(n, Expr::abs_sq(n) * Expr::gaussian(n, a, b)));
                }
                Err(bad())
            }
        }
    }

    /// Exact expression for `η_A f`.
    pub fn frame_expr(&self, a: FrameIndex) -> Expr {
        frame_expr(&self.expr, a)
    }

    fn check(&self, p: &HeisenbergPoint) -> Result<()> {
        if p.dim() != self.n {
            return Err(Error::Shape(format!(
                "point has {} complex coordinates, function lives on H^{}",
                p.dim(),
                self.n
            )));
        }
        Ok(())
    }

    pub fn eval(&self, p: &HeisenbergPoint) -> Complex64 {
        self.expr.eval(p)
    }
}

pub fn frame_expr(f: &Expr, a: FrameIndex) -> Expr {
    let i = Expr::complex(Complex64::new(0.0, 1.0));
    match a {
        FrameIndex::Holo(k) => f.partial(Partial::Z(k)) + i * Expr::zbar(k) * f.partial(Partial::T),
        FrameIndex::Anti(k) => f.partial(Partial::ZBar(k)) - i * Expr::z(k) * f.partial(Partial::T),
        FrameIndex::Reeb => f.partial(Partial::T),
    }
}

impl FrameCalculus for ClosedForm {
    fn dim(&self) -> usize {
        self.n
    }

    fn frame_apply(&self, a: FrameIndex, p: &HeisenbergPoint) -> Result<Complex64> {
        self.check(p)?;
        Ok(self.frame_expr(a).eval(p))
    }

    fn covariant_second(
        &self,
        a: FrameIndex,
        b: FrameIndex,
        p: &HeisenbergPoint,
    ) -> Result<Complex64> {
        self.check(p)?;
        Ok(frame_expr(&self.frame_expr(a), b).eval(p))
    }
}
