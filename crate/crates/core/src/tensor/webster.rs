use super::{delta, ensure_dimension, ensure_finite, max_abs, scaled_tol, CMatrix, HermitianMatrix};
use crate::rng::CounterRng;
use crate::{Complex64, Error, Result};

/// Four-index tensor with the symmetries of the Webster curvature, indexed
/// `(ᾱ, β, λ, μ̄)` and stored row-major.
///
/// Invariants:
/// * `R(a,b,l,m) = R(a,l,b,m)` (first Bianchi),
/// * `R(a,b,l,m) = R(m,b,l,a)` (barred pair),
/// * `conj R(a,b,l,m) = R(b,a,m,l)` (reality).
#[derive(Clone, Debug, PartialEq)]
pub struct WebsterTensor {
    n: usize,
    data: Vec<Complex64>,
}

#[inline]
fn index(n: usize, a: usize, b: usize, l: usize, m: usize) -> usize {
    ((a * n + b) * n + l) * n + m
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl WebsterTensor {
    pub fn zeros(n: usize) -> Self {
        WebsterTensor {
            n,
            data: vec![ZERO; n * n * n * n],
        }
    }

    /// Validates the symmetries at the scaled tolerance, then returns the
    /// exact projection of `data`.
    pub fn new(n: usize, data: Vec<Complex64>) -> Result<Self> {
        let raw = Self::raw(n, data)?;
        let projected = raw.projected();
        let residual = raw.max_abs_diff(&projected);
        if residual > scaled_tol(max_abs(&raw.data)) {
            return Err(Error::symmetry(
                "components lack the Webster symmetries",
                residual,
            ));
        }
        Ok(projected)
    }

    /// Group average of an arbitrary array over the symmetry group.
    pub fn project(n: usize, data: Vec<Complex64>) -> Result<Self> {
        Ok(Self::raw(n, data)?.projected())
    }

    fn raw(n: usize, data: Vec<Complex64>) -> Result<Self> {
        if n == 0 || data.len() != n * n * n * n {
            return Err(Error::Shape(format!(
                "expected {} components for n = {n}, got {}",
                n.pow(4),
                data.len()
            )));
        }
        ensure_finite("webster tensor", &data)?;
        Ok(WebsterTensor { n, data })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize, usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n.pow(4));
        for a in 0..n {
            for b in 0..n {
                for l in 0..n {
                    for m in 0..n {
                        data.push(f(a, b, l, m));
                    }
                }
            }
        }
        WebsterTensor { n, data }
    }

    fn projected(&self) -> Self {
        let n = self.n;
        let r = |a, b, l, m| self.data[index(n, a, b, l, m)];
        // Average over the Klein group generated by the two swaps, then over
        // the antilinear reality involution, which normalises that group.
        let y = Self::from_fn(n, |a, b, l, m| {
            (r(a, b, l, m) + r(a, l, b, m) + r(m, b, l, a) + r(m, l, b, a)) * 0.25
        });
        Self::from_fn(n, |a, b, l, m| (y.get(a, b, l, m) + y.get(b, a, m, l).conj()) * 0.5)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, l: usize, m: usize) -> Complex64 {
        self.data[index(self.n, a, b, l, m)]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    /// `Ric[l][m] = Σ_α R(α, α, l, m)`, the component `R_{λμ̄}`.
    pub fn ricci(&self) -> HermitianMatrix {
        let n = self.n;
        let m = CMatrix::from_fn(n, |l, mu| (0..n).map(|a| self.get(a, a, l, mu)).sum());
        HermitianMatrix::symmetrize(&m)
    }

    /// `ρ = Σ_{α,λ} R(α, α, λ, λ)`.
    pub fn scalar(&self) -> f64 {
        self.ricci().trace()
    }

    /// Largest entry of any single contraction. By the symmetries every
    /// contraction of a barred with an unbarred slot is a Ricci matrix.
    pub fn max_contraction(&self) -> f64 {
        max_abs(self.ricci().as_matrix().as_slice())
    }

    /// `(E_{ᾱβ}δ_{λμ̄} + E_{ᾱλ}δ_{βμ̄} + δ_{ᾱβ}E_{λμ̄} + δ_{ᾱλ}E_{βμ̄})/(n+2)`
    /// for a traceless Hermitian `E`; its Ricci contraction is `E`.
    pub fn ricci_block(e: &HermitianMatrix) -> Self {
        let n = e.dim();
        let k = 1.0 / (n as f64 + 2.0);
        let e = |i, j| e.get(i, j);
        Self::from_fn(n, |a, b, l, m| {
            (e(b, a) * delta(l, m) + e(l, a) * delta(b, m) + e(l, m) * delta(a, b) + e(b, m) * delta(a, l))
                * k
        })
    }

    /// `ρ(δ_{ᾱβ}δ_{λμ̄} + δ_{ᾱλ}δ_{βμ̄})/(n(n+1))`, whose Ricci contraction is
    /// `(ρ/n) δ`.
    pub fn scalar_block(n: usize, rho: f64) -> Self {
        let nf = n as f64;
        let k = rho / (nf * (nf + 1.0));
        Self::from_fn(n, |a, b, l, m| {
            Complex64::new(k * (delta(a, b) * delta(l, m) + delta(a, l) * delta(b, m)), 0.0)
        })
    }

    /// The full trace part of a tensor with Ricci contraction `ric`.
    pub fn trace_block(ric: &HermitianMatrix) -> Self {
        let n = ric.dim();
        let rho = ric.trace();
        let e = HermitianMatrix::symmetrize(&CMatrix::from_fn(n, |i, j| {
            ric.get(i, j) - rho / n as f64 * delta(i, j)
        }));
        Self::ricci_block(&e).add(&Self::scalar_block(n, rho))
    }

    /// Removes every trace, leaving a tensor with vanishing contractions.
    pub fn traceless_part(&self) -> Self {
        self.sub(&Self::trace_block(&self.ricci()))
    }

    /// Sum of squared component moduli, without convention factor.
    pub fn sum_sq(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `|C|` with `|C|² = 4 Σ |C_{ᾱβλμ̄}|²`.
    pub fn norm(&self) -> f64 {
        (4.0 * self.sum_sq()).sqrt()
    }

    /// `⟨A, B⟩ = 4 Re Σ A_{ᾱβλμ̄} conj(B_{ᾱβλμ̄})`, compatible with [`Self::norm`].
    pub fn inner(&self, other: &Self) -> f64 {
        4.0 * self
            .data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x * y.conj()).re)
            .sum::<f64>()
    }

    pub fn scaled(&self, s: f64) -> Self {
        WebsterTensor {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        WebsterTensor {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        WebsterTensor {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(x, y)| x - y).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.data)
    }

    /// Frame change matching [`HermitianMatrix::in_frame`] (`U† M U`): unbarred
    /// slots pick up `conj U`, barred slots `U`.
    pub fn in_frame(&self, u: &CMatrix) -> Self {
        let n = self.n;
        // Transform one slot at a time: four passes of O(n^5).
        let mut cur = self.data.clone();
        for slot in 0..4 {
            let barred = slot == 0 || slot == 3;
            let mut next = vec![ZERO; cur.len()];
            let stride = n.pow(3 - slot as u32);
            for (pos, out) in next.iter_mut().enumerate() {
                let j = (pos / stride) % n;
                let base = pos - j * stride;
                let mut s = ZERO;
                for i in 0..n {
                    let c = if barred { u[(i, j)] } else { u[(i, j)].conj() };
                    s += c * cur[base + i * stride];
                }
                *out = s;
            }
            cur = next;
        }
        WebsterTensor { n, data: cur }
    }

    /// Uniform `[-1,1]²` components, projected; `traceless` additionally
    /// removes the trace block.
    pub fn random(n: usize, traceless: bool, rng: &mut CounterRng) -> Self {
        let data = (0..n.pow(4))
            .map(|_| {
                let re = rng.symmetric();
                let im = rng.symmetric();
                Complex64::new(re, im)
            })
            .collect();
        let r = WebsterTensor { n, data }.projected();
        if traceless {
            r.traceless_part()
        } else {
            r
        }
    }
}

/// Deterministic random Webster tensor for `(n, seed)`.
pub fn random_webster(n: usize, seed: u64, traceless: bool) -> Result<WebsterTensor> {
    ensure_dimension(n)?;
    let mut rng = CounterRng::for_sample(seed, "webster", n as u64);
    Ok(WebsterTensor::random(n, traceless, &mut rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    type Idx = (usize, usize, usize, usize);

    /// Orbit of an index tuple under the generating permutations; the flag
    /// records whether the reality involution (with conjugation) was used an
    /// odd number of times.
    fn orbit(start: Idx) -> BTreeSet<(Idx, bool)> {
        let mut seen = BTreeSet::new();
        let mut stack = vec![(start, false)];
        while let Some(((a, b, l, m), c)) = stack.pop() {
            if !seen.insert(((a, b, l, m), c)) {
                continue;
            }
            stack.push(((a, l, b, m), c));
            stack.push(((m, b, l, a), c));
            stack.push(((b, a, m, l), !c));
        }
        seen
    }

    #[test]
    fn projection_of_unit_spreads_over_orbit() {
        let n = 3;
        let start = (0, 1, 2, 1);
        let mut raw = vec![ZERO; 81];
        raw[index(n, 0, 1, 2, 1)] = Complex64::new(1.0, 0.0);
        let p = WebsterTensor::project(n, raw).unwrap();
        let orb = orbit(start);
        // The group has order 8; each orbit element receives 1/8 per group
        // element mapping the start onto it, conjugated for the antilinear part.
        let mut expect = vec![ZERO; 81];
        for g in 0..8u32 {
            let (mut t, mut conj) = (start, false);
            if g & 1 != 0 {
                t = (t.0, t.2, t.1, t.3);
            }
            if g & 2 != 0 {
                t = (t.3, t.1, t.2, t.0);
            }
            if g & 4 != 0 {
                t = (t.1, t.0, t.3, t.2);
                conj = true;
            }
            assert!(orb.contains(&(t, conj)));
            let v = if conj { Complex64::new(1.0, -0.0) } else { Complex64::new(1.0, 0.0) };
            expect[index(n, t.0, t.1, t.2, t.3)] += v / 8.0;
        }
        let e = WebsterTensor { n, data: expect };
        assert!(p.max_abs_diff(&e) < 1e-16);
        let support: usize = p.data.iter().filter(|z| z.norm() > 0.0).count();
        let distinct: BTreeSet<Idx> = orb.iter().map(|x| x.0).collect();
        assert_eq!(support, distinct.len());
    }

    #[test]
    fn projection_is_idempotent_and_real_linear() {
        let r = random_webster(3, 5, false).unwrap();
        assert!(r.projected().max_abs_diff(&r) <= 1e-14);
        let s = r.scaled(-2.5);
        assert!(s.projected().max_abs_diff(&s) <= 1e-14);
    }

    #[test]
    fn new_rejects_asymmetric() {
        let mut raw = vec![ZERO; 16];
        raw[index(2, 0, 1, 0, 0)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            WebsterTensor::new(2, raw),
            Err(Error::SymmetryViolation { .. })
        ));
        assert!(matches!(
            WebsterTensor::new(2, vec![ZERO; 15]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn traceless_random_has_zero_contractions() {
        for n in 2..=5 {
            let c = random_webster(n, 1, true).unwrap();
            // every barred/unbarred contraction, summed explicitly
            for x in 0..n {
                for y in 0..n {
                    let sums = [
                        (0..n).map(|a| c.get(a, a, x, y)).sum::<Complex64>(),
                        (0..n).map(|a| c.get(a, x, a, y)).sum::<Complex64>(),
                        (0..n).map(|a| c.get(x, a, y, a)).sum::<Complex64>(),
                        (0..n).map(|a| c.get(x, y, a, a)).sum::<Complex64>(),
                    ];
                    for s in sums {
                        assert!(s.norm() <= 1e-12, "n={n} contraction {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn same_seed_same_tensor() {
        assert_eq!(
            random_webster(4, 9, true).unwrap(),
            random_webster(4, 9, true).unwrap()
        );
        assert!(random_webster(1, 9, true).is_err());
    }

    #[test]
    fn ricci_is_hermitian() {
        let r = random_webster(4, 2, false).unwrap();
        let n = 4;
        for l in 0..n {
            for m in 0..n {
                let x: Complex64 = (0..n).map(|a| r.get(a, a, l, m)).sum();
                let y: Complex64 = (0..n).map(|a| r.get(a, a, m, l)).sum();
                assert!((x - y.conj()).norm() < 1e-14);
            }
        }
    }
}
