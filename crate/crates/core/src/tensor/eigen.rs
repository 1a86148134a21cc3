use super::{CMatrix, HermitianMatrix};
use crate::{Complex64, Error, Result};

/// Upper bound on cyclic Jacobi sweeps.
pub const MAX_SWEEPS: usize = 100;

const TOL: f64 = 1e-12;

/// Spectral decomposition `m = U diag(values) U†`.
#[derive(Clone, Debug)]
pub struct Eigen {
    /// Eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary whose `k`-th column is the eigenvector of `values[k]`.
    pub vectors: CMatrix,
}

impl Eigen {
    /// `max |U diag U† − m|`.
    pub fn reconstruction_residual(&self, m: &HermitianMatrix) -> f64 {
        let n = m.dim();
        let u = &self.vectors;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += u[(i, k)] * self.values[k] * u[(j, k)].conj();
                }
                worst = worst.max((s - m.get(i, j)).norm());
            }
        }
        worst
    }
}

fn off_diagonal(a: &CMatrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of `a[p][q]`, then applies the real
/// symmetric Jacobi rotation to the resulting 2×2 block.
pub fn hermitian_eigen(m: &HermitianMatrix) -> Result<Eigen> {
    let n = m.dim();
    let mut a = m.as_matrix().clone();
    let mut v = CMatrix::identity(n);
    let scale = a.frobenius();
    let target = TOL * scale.max(f64::MIN_POSITIVE);

    let mut converged = off_diagonal(&a) <= target;
    let mut sweeps = 0;
    while !converged && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE || r <= 1e-3 * target / n as f64 {
                    continue;
                }
                let phase = apq / r;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let theta = (aqq - app) / (2.0 * r);
                let t = if theta >= 0.0 { 1.0 } else { -1.0 } / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let jpp = Complex64::new(c, 0.0);
                let jpq = Complex64::new(s, 0.0);
                let jqp = -phase.conj() * s;
                let jqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = Complex64::new(0.0, 0.0);
                a[(q, p)] = Complex64::new(0.0, 0.0);
                a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
        converged = off_diagonal(&a) <= target;
    }
    if !converged {
        return Err(Error::Inconclusive(format!(
            "Jacobi iteration did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].re.total_cmp(&a[(i, i)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let vectors = CMatrix::from_fn(n, |i, j| v[(i, order[j])]);
    Ok(Eigen { values, vectors })
}
