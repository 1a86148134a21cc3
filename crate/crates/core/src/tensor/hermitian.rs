use serde::{Deserialize, Serialize};

use super::{ensure_dimension, ensure_finite, max_abs, scaled_tol, CMatrix};
use crate::rng::CounterRng;
use crate::{Complex64, Error, Result};

/// Hermitian `n × n` matrix; entry `(i, j)` is the component `M_{i j̄}`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix {
    m: CMatrix,
}

impl HermitianMatrix {
    /// Validates `entries[a][b] = conj(entries[b][a])` at the scaled
    /// tolerance and returns the exactly symmetrised matrix.
    pub fn new(m: CMatrix) -> Result<Self> {
        ensure_finite("hermitian matrix", m.as_slice())?;
        let n = m.dim();
        if n == 0 {
            return Err(Error::domain("empty matrix"));
        }
        let tol = scaled_tol(max_abs(m.as_slice()));
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        if worst > tol {
            return Err(Error::symmetry("matrix is not Hermitian", worst));
        }
        Ok(Self::symmetrize(&m))
    }

    /// `(m + m†) / 2`.
    pub fn symmetrize(m: &CMatrix) -> Self {
        let n = m.dim();
        HermitianMatrix {
            m: CMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)].conj()) * 0.5),
        }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        HermitianMatrix {
            m: CMatrix::from_fn(n, |i, j| {
                if i == j {
                    Complex64::new(d[i], 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            }),
        }
    }

    pub fn zeros(n: usize) -> Self {
        HermitianMatrix {
            m: CMatrix::zeros(n),
        }
    }

    pub fn identity(n: usize) -> Self {
        HermitianMatrix {
            m: CMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.m[(i, j)]
    }

    pub fn as_matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn trace(&self) -> f64 {
        self.m.trace().re
    }

    /// `Σ_{i,j} |M_{i j̄}|²`; the tensor norm is twice this.
    pub fn sum_sq(&self) -> f64 {
        self.m.as_slice().iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn scaled(&self, s: f64) -> Self {
        HermitianMatrix {
            m: CMatrix::from_fn(self.dim(), |i, j| self.m[(i, j)] * s),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        HermitianMatrix {
            m: CMatrix::from_fn(self.dim(), |i, j| self.m[(i, j)] + other.m[(i, j)]),
        }
    }

    /// Components in the frame `η'_j = Σ_i U_{ij} η_i`, i.e. `U† M U`.
    pub fn in_frame(&self, u: &CMatrix) -> Self {
        Self::symmetrize(&u.adjoint().matmul(&self.m).matmul(u))
    }

    /// Matrix power `M^k` as a general matrix.
    pub fn power(&self, k: u32) -> CMatrix {
        let mut out = CMatrix::identity(self.dim());
        for _ in 0..k {
            out = out.matmul(&self.m);
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.m.max_abs_diff(&other.m)
    }
}

/// Hermitian matrix with vanishing trace, e.g. the traceless Ricci tensor
/// `E_{αβ̄} = R_{αβ̄} − (ρ/n) δ_{αβ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TracelessHermitianMatrix {
    base: HermitianMatrix,
}

impl TracelessHermitianMatrix {
    pub fn new(base: HermitianMatrix) -> Result<Self> {
        let n = base.dim();
        let tr = base.trace();
        let bound = 1e-12 * (n as f64) * max_abs(base.m.as_slice()).max(1.0);
        if tr.abs() > bound {
            return Err(Error::symmetry("matrix is not traceless", tr.abs()));
        }
        Ok(TracelessHermitianMatrix { base })
    }

    /// Removes the trace part `(tr/n) δ`.
    pub fn project(base: &HermitianMatrix) -> Self {
        let n = base.dim();
        let shift = base.trace() / n as f64;
        let mut m = base.m.clone();
        for i in 0..n {
            m[(i, i)] -= shift;
        }
        TracelessHermitianMatrix {
            base: HermitianMatrix::symmetrize(&m),
        }
    }

    pub fn zeros(n: usize) -> Self {
        TracelessHermitianMatrix {
            base: HermitianMatrix::zeros(n),
        }
    }

    pub fn from_real_diagonal(d: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(d))
    }

    pub fn random(n: usize, rng: &mut CounterRng) -> Self {
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
        Self::project(&HermitianMatrix::symmetrize(&raw))
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.base
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.base.get(i, j)
    }

    pub fn scaled(&self, s: f64) -> Self {
        TracelessHermitianMatrix {
            base: self.base.scaled(s),
        }
    }

    pub fn in_frame(&self, u: &CMatrix) -> Self {
        Self::project(&self.base.in_frame(u))
    }

    /// `|E|` with `|E|² = 2 Σ_{α,β} |E_{αβ̄}|²`.
    pub fn norm(&self) -> f64 {
        (2.0 * self.base.sum_sq()).sqrt()
    }
}

/// `|E|` for a traceless Hermitian matrix.
pub fn norm_e(e: &TracelessHermitianMatrix) -> f64 {
    e.norm()
}

/// Deterministic traceless Hermitian sample: `n²` draws of `(re, im)` uniform
/// in `[-1, 1)`, row-major, symmetrised and shifted to trace zero.
pub fn random_traceless_hermitian(n: usize, seed: u64) -> Result<TracelessHermitianMatrix> {
    ensure_dimension(n)?;
    let mut rng = CounterRng::for_sample(seed, "traceless-hermitian", n as u64);
    Ok(TracelessHermitianMatrix::random(n, &mut rng))
}

/// Symmetric matrix `A_{αβ}` (pseudo-Hermitian torsion components).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TorsionMatrix {
    n: usize,
    entries: Vec<Complex64>,
}

impl TorsionMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        ensure_finite("torsion", m.as_slice())?;
        let n = m.dim();
        let tol = scaled_tol(max_abs(m.as_slice()));
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((m[(i, j)] - m[(j, i)]).norm());
            }
        }
        if worst > tol {
            return Err(Error::symmetry("torsion is not symmetric", worst));
        }
        Ok(TorsionMatrix {
            n,
            entries: CMatrix::from_fn(n, |i, j| (m[(i, j)] + m[(j, i)]) * 0.5)
                .as_slice()
                .to_vec(),
        })
    }

    pub fn zeros(n: usize) -> Self {
        TorsionMatrix {
            n,
            entries: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.n + j]
    }

    pub fn as_matrix(&self) -> CMatrix {
        CMatrix::from_vec(self.n, self.entries.clone())
    }

    pub fn scaled(&self, s: f64) -> Self {
        TorsionMatrix {
            n: self.n,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// Sasakian means vanishing torsion.
    pub fn is_zero(&self, tol: f64) -> bool {
        self.entries.iter().all(|z| z.norm() <= tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_fn(2, |i, j| Complex64::new((i + 2 * j) as f64, 0.0));
        assert!(matches!(
            HermitianMatrix::new(m),
            Err(Error::SymmetryViolation { .. })
        ));
    }

    #[test]
    fn rejects_nan() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = Complex64::new(f64::NAN, 0.0);
        assert!(matches!(HermitianMatrix::new(m), Err(Error::NonFinite(_))));
    }

    #[test]
    fn norm_of_diag_one_minus_one() {
        let e = TracelessHermitianMatrix::from_real_diagonal(&[1.0, -1.0]).unwrap();
        assert!((e.norm() - 2.0).abs() < 1e-15);
        assert_eq!(norm_e(&TracelessHermitianMatrix::zeros(3)), 0.0);
    }

    #[test]
    fn random_traceless_is_deterministic_and_traceless() {
        let a = random_traceless_hermitian(4, 11).unwrap();
        let b = random_traceless_hermitian(4, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.hermitian().trace().abs() <= 1e-12);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(a.get(i, j), a.get(j, i).conj());
            }
        }
    }

    #[test]
    fn random_requires_n_at_least_two() {
        assert!(matches!(
            random_traceless_hermitian(1, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn traceless_rejects_trace() {
        assert!(TracelessHermitianMatrix::from_real_diagonal(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn torsion_symmetry() {
        let mut m = CMatrix::zeros(2);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        assert!(TorsionMatrix::new(m.clone()).is_err());
        m[(1, 0)] = Complex64::new(0.0, 1.0);
        let t = TorsionMatrix::new(m).unwrap();
        assert_eq!(t.get(1, 0), Complex64::new(0.0, 1.0));
        assert!(!t.is_zero(1e-12));
        assert!(TorsionMatrix::zeros(3).is_zero(0.0));
    }
}
