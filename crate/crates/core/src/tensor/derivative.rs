//! Horizontal covariant derivatives of curvature-type tensors, held as plain
//! arrays with the algebraic symmetries they inherit pointwise.

use super::{delta, ensure_finite, max_abs};
use crate::rng::CounterRng;
use crate::{Complex64, Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn random_components(len: usize, rng: &mut CounterRng) -> Vec<Complex64> {
    (0..len)
        .map(|_| {
            let re = rng.symmetric();
            let im = rng.symmetric();
            Complex64::new(re, im)
        })
        .collect()
}

/// `E_{αβ̄,γ}` stored at `[(α n + β) n + γ]`, constrained by the Codazzi
/// symmetry `E_{αβ̄,γ} = E_{γβ̄,α}` and `Σ_α E_{αᾱ,γ} = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct RicciDerivative {
    n: usize,
    data: Vec<Complex64>,
}

impl RicciDerivative {
    pub fn zeros(n: usize) -> Self {
        RicciDerivative {
            n,
            data: vec![ZERO; n * n * n],
        }
    }

    /// Symmetrises in `(α, γ)` and removes the trace `v_γ = Σ_α X_{αᾱ,γ}`
    /// through `(δ_{αβ} v_γ + δ_{γβ} v_α)/(n+1)`.
    pub fn project(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != n * n * n {
            return Err(Error::Shape(format!("expected {} components", n.pow(3))));
        }
        ensure_finite("Ricci derivative", &data)?;
        let x = |a: usize, b: usize, g: usize| data[(a * n + b) * n + g];
        let s: Vec<Complex64> = (0..n * n * n)
            .map(|i| {
                let (a, b, g) = (i / (n * n), (i / n) % n, i % n);
                (x(a, b, g) + x(g, b, a)) * 0.5
            })
            .collect();
        let v: Vec<Complex64> = (0..n)
            .map(|g| (0..n).map(|a| s[(a * n + a) * n + g]).sum())
            .collect();
        let k = 1.0 / (n as f64 + 1.0);
        let out = (0..n * n * n)
            .map(|i| {
                let (a, b, g) = (i / (n * n), (i / n) % n, i % n);
                s[i] - (v[g] * delta(a, b) + v[a] * delta(g, b)) * k
            })
            .collect();
        Ok(RicciDerivative { n, data: out })
    }

    /// Checks both constraints at `1e-12` scaled by the largest entry.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        let scale = max_abs(&data).max(1.0);
        let p = Self::project(n, data.clone())?;
        let residual = data
            .iter()
            .zip(&p.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        if residual > 1e-12 * scale {
            return Err(Error::symmetry(
                "derivative violates Codazzi symmetry or tracelessness",
                residual,
            ));
        }
        Ok(p)
    }

    pub fn random(n: usize, rng: &mut CounterRng) -> Self {
        Self::project(n, random_components(n * n * n, rng)).expect("shape is consistent")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, g: usize) -> Complex64 {
        self.data[(a * self.n + b) * self.n + g]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scaled(&self, s: f64) -> Self {
        RicciDerivative {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// `|∇_b E|` with `|∇_b E|² = 4 Σ |E_{αβ̄,γ}|²`.
    pub fn norm(&self) -> f64 {
        (4.0 * self.data.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }
}

/// `C_{ᾱβλμ̄,γ}` stored row-major in `(ᾱ, β, λ, μ̄, γ)`.
///
/// The symmetry class: the unbarred slots `β, λ, γ` are totally symmetric
/// (first Bianchi plus the second Bianchi-type swap `λ ↔ γ`), the barred slots
/// `ᾱ, μ̄` are symmetric. No reality condition applies because the derivative
/// direction `γ` has no barred partner. `traceless` removes every contraction
/// of a barred with an unbarred slot.
#[derive(Clone, Debug, PartialEq)]
pub struct WebsterDerivative {
    n: usize,
    data: Vec<Complex64>,
    traceless: bool,
}

#[inline]
fn idx5(n: usize, a: usize, b: usize, l: usize, m: usize, g: usize) -> usize {
    (((a * n + b) * n + l) * n + m) * n + g
}

impl WebsterDerivative {
    pub fn zeros(n: usize) -> Self {
        WebsterDerivative {
            n,
            data: vec![ZERO; n.pow(5)],
            traceless: true,
        }
    }

    pub fn project(n: usize, data: Vec<Complex64>, traceless: bool) -> Result<Self> {
        if data.len() != n.pow(5) {
            return Err(Error::Shape(format!("expected {} components", n.pow(5))));
        }
        ensure_finite("Webster derivative", &data)?;
        let x = |a, b, l, m, g| data[idx5(n, a, b, l, m, g)];
        let mut y = vec![ZERO; data.len()];
        for a in 0..n {
            for b in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        for g in 0..n {
                            let perms = [
                                (b, l, g),
                                (b, g, l),
                                (l, b, g),
                                (l, g, b),
                                (g, b, l),
                                (g, l, b),
                            ];
                            let mut s = ZERO;
                            for (p, q, r) in perms {
                                s += x(a, p, q, m, r) + x(m, p, q, a, r);
                            }
                            y[idx5(n, a, b, l, m, g)] = s / 12.0;
                        }
                    }
                }
            }
        }
        if traceless {
            remove_traces(n, &mut y);
        }
        Ok(WebsterDerivative {
            n,
            data: y,
            traceless,
        })
    }

    /// Validates membership in the symmetry class at `1e-12` (scaled).
    pub fn new(n: usize, data: Vec<Complex64>, traceless: bool) -> Result<Self> {
        let scale = max_abs(&data).max(1.0);
        let p = Self::project(n, data.clone(), traceless)?;
        let residual = data
            .iter()
            .zip(&p.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max);
        if residual > 1e-12 * scale {
            return Err(Error::symmetry(
                "derivative lacks the curvature-derivative symmetries",
                residual,
            ));
        }
        Ok(p)
    }

    pub fn from_fn(
        n: usize,
        traceless: bool,
        f: impl Fn(usize, usize, usize, usize, usize) -> Complex64,
    ) -> Self {
        let mut data = Vec::with_capacity(n.pow(5));
        for a in 0..n {
            for b in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        for g in 0..n {
                            data.push(f(a, b, l, m, g));
                        }
                    }
                }
            }
        }
        Self::project(n, data, traceless).expect("shape is consistent")
    }

    pub fn random(n: usize, traceless: bool, rng: &mut CounterRng) -> Self {
        Self::project(n, random_components(n.pow(5), rng), traceless)
            .expect("shape is consistent")
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn is_traceless(&self) -> bool {
        self.traceless
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, l: usize, m: usize, g: usize) -> Complex64 {
        self.data[idx5(self.n, a, b, l, m, g)]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn scaled(&self, s: f64) -> Self {
        WebsterDerivative {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
            traceless: self.traceless,
        }
    }

    /// `|∇_b C|` with `|∇_b C|² = 8 Σ |C_{ᾱβλμ̄,γ}|²`.
    pub fn norm(&self) -> f64 {
        (8.0 * self.data.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt()
    }

    /// Largest entry of the contraction over `(ᾱ, β)`; all other
    /// barred/unbarred contractions agree with it by symmetry.
    pub fn max_contraction(&self) -> f64 {
        let n = self.n;
        let mut worst: f64 = 0.0;
        for l in 0..n {
            for m in 0..n {
                for g in 0..n {
                    let s: Complex64 = (0..n).map(|a| self.get(a, a, l, m, g)).sum();
                    worst = worst.max(s.norm());
                }
            }
        }
        worst
    }
}

/// Subtracts `K = δ_{ᾱβ}u'_{μ̄;λγ} + δ_{ᾱλ}u'_{μ̄;βγ} + δ_{ᾱγ}u'_{μ̄;βλ}
/// + (ᾱ ↔ μ̄)`, with `u'` chosen so that the result is traceless.
fn remove_traces(n: usize, y: &mut [Complex64]) {
    let nf = n as f64;
    // u[m][l][g] = Σ_a Y(a, a, l, m, g), symmetric in (l, g)
    let mut u = vec![ZERO; n * n * n];
    for m in 0..n {
        for l in 0..n {
            for g in 0..n {
                u[(m * n + l) * n + g] = (0..n).map(|a| y[idx5(n, a, a, l, m, g)]).sum();
            }
        }
    }
    let t: Vec<Complex64> = (0..n)
        .map(|g| (0..n).map(|a| u[(a * n + a) * n + g]).sum::<Complex64>() / (2.0 * nf + 4.0))
        .collect();
    let mut up = vec![ZERO; n * n * n];
    for m in 0..n {
        for l in 0..n {
            for g in 0..n {
                up[(m * n + l) * n + g] = (u[(m * n + l) * n + g]
                    - t[g] * delta(m, l)
                    - t[l] * delta(m, g))
                    / (nf + 3.0);
            }
        }
    }
    let w = |m: usize, l: usize, g: usize| up[(m * n + l) * n + g];
    for a in 0..n {
        for b in 0..n {
            for l in 0..n {
                for m in 0..n {
                    for g in 0..n {
                        let k = w(m, l, g) * delta(a, b)
                            + w(m, b, g) * delta(a, l)
                            + w(m, b, l) * delta(a, g)
                            + w(a, l, g) * delta(m, b)
                            + w(a, b, g) * delta(m, l)
                            + w(a, b, l) * delta(m, g);
                        y[idx5(n, a, b, l, m, g)] -= k;
                    }
                }
            }
        }
    }
}
