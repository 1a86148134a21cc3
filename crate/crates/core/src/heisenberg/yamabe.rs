use std::f64::consts::PI;

use serde::Serialize;

use super::grid::DECAY_TOL;
use super::{Axis, GridFunction};
use crate::{Error, Result};

/// Golden-section iterations per coordinate pass.
pub const GOLDEN_ITERATIONS: usize = 40;

/// `b_n = p = 2 + 2/n`.
pub fn sobolev_exponent(n: usize) -> f64 {
    2.0 + 2.0 / n as f64
}

/// `∫ (b_n |∇_b u|² + ρ u²) dV / (∫ |u|^p dV)^{2/p}` for a real grid function
/// that has decayed inside the boundary margin.
pub fn yamabe_quotient(u: &GridFunction, rho: f64) -> Result<f64> {
    if !rho.is_finite() {
        return Err(Error::NonFinite("rho".into()));
    }
    let vals = u.values();
    let peak = vals.iter().map(|v| v.norm()).fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::domain("quotient of the zero function"));
    }
    if vals.iter().any(|v| v.im.abs() > 1e-12 * peak) {
        return Err(Error::domain("quotient needs a real function"));
    }
    let ratio = u.boundary_ratio();
    if ratio > DECAY_TOL {
        return Err(Error::domain(format!(
            "function has not decayed inside the boundary margin (ratio {ratio:.3e})"
        )));
    }
    let n = u.dim();
    let p = sobolev_exponent(n);
    let [grad, l2, lp] = u.energy_integrals(p);
    let num = p * grad + rho * l2;
    let den = lp;
    let q = num / den.powf(2.0 / p);
    if !q.is_finite() {
        return Err(Error::NonFinite("yamabe quotient".into()));
    }
    Ok(q)
}

/// Exact quotient of `exp(−a|z|² − b t²)` on `H¹`, from gaussian moments.
pub fn gaussian_quotient_exact_n1(a: f64, b: f64, rho: f64) -> f64 {
    let c1 = 4.0;
    let it0 = (PI / (2.0 * b)).sqrt();
    let ir0 = PI / (2.0 * a);
    let ir1 = PI / (4.0 * a * a);
    // |∇_b u|² = 2u²|z|²(a² + 4b²t²)
    let grad = 2.0 * ir1 * it0 * (a * a + b);
    let l2 = ir0 * it0;
    let l4 = PI / (4.0 * a) * (PI / (4.0 * b)).sqrt();
    (4.0 * c1 * grad + rho * c1 * l2) / (c1 * l4).sqrt()
}

/// Lattice and parameter ranges for the family `exp(−a|z|² − b t²)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GaussianFamilyBox {
    pub n: usize,
    pub samples: usize,
    pub z_half: f64,
    pub t_half: f64,
    pub a_range: (f64, f64),
    pub b_range: (f64, f64),
}

impl GaussianFamilyBox {
    /// Box sized so every member of the parameter ranges decays below
    /// `DECAY_TOL` before the boundary margin from 33 samples up. The ranges
    /// are narrow on purpose: the grid error grows with the spread between
    /// the widest and the narrowest bump the box has to hold.
    pub fn standard(n: usize, samples: usize) -> Self {
        GaussianFamilyBox {
            n,
            samples,
            z_half: 5.2,
            t_half: 10.3,
            a_range: (0.8, 1.25),
            b_range: (0.2, 0.5),
        }
    }

    pub fn axes(&self) -> Result<Vec<Axis>> {
        GridFunction::heisenberg_axes(self.n, self.z_half, self.t_half, self.samples)
    }

    pub fn sample(&self, a: f64, b: f64) -> Result<GridFunction> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::domain("gaussian parameters must be positive"));
        }
        let tk = 2 * self.n;
        GridFunction::separable(self.n, self.axes()?, |k, x| {
            let c = if k == tk { b } else { a };
            (-c * x * x).exp()
        })
    }

    pub fn quotient(&self, a: f64, b: f64, rho: f64) -> Result<f64> {
        yamabe_quotient(&self.sample(a, b)?, rho)
    }

    pub fn with_samples(&self, samples: usize) -> Self {
        GaussianFamilyBox {
            samples,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct YamabeMinimum {
    pub a: f64,
    pub b: f64,
    pub quotient: f64,
    pub evaluations: usize,
}

fn golden<F: FnMut(f64) -> Result<f64>>(mut f: F, lo: f64, hi: f64, evals: &mut usize) -> Result<(f64, f64)> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    *evals += 2;
    for _ in 0..GOLDEN_ITERATIONS {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2)?;
        }
        *evals += 1;
    }
    Ok(if f1 <= f2 { (x1, f1) } else { (x2, f2) })
}

/// Coordinate-wise golden-section search over `(a, b)`: one pass in `a`,
/// one in `b`, then the same again from the point found. The quotient is
/// invariant under `(a, b) → (λ²a, λ⁴b)`, so the minimizer is a curve and
/// the point returned is one representative of it.
pub fn minimize_gaussian(family: &GaussianFamilyBox, rho: f64) -> Result<YamabeMinimum> {
    let mut a = 0.5 * (family.a_range.0 + family.a_range.1);
    let mut b = 0.5 * (family.b_range.0 + family.b_range.1);
    let mut q = f64::INFINITY;
    let mut evaluations = 0;
    for _ in 0..2 {
        let (a1, _) = golden(|x| family.quotient(x, b, rho), family.a_range.0, family.a_range.1, &mut evaluations)?;
        a = a1;
        let (b1, q1) = golden(|y| family.quotient(a, y, rho), family.b_range.0, family.b_range.1, &mut evaluations)?;
        b = b1;
        q = q1;
    }
    Ok(YamabeMinimum {
        a,
        b,
        quotient: q,
        evaluations,
    })
}

/// Observed convergence order from three values on grids with `h`, `h/2`, `h/4`.
pub fn richardson_order(coarse: f64, mid: f64, fine: f64) -> f64 {
    ((coarse - mid).abs() / (mid - fine).abs()).log2()
}
