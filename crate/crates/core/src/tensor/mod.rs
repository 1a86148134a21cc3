//! Complex tensors carrying the index conventions of pseudo-Hermitian
//! geometry.
//!
//! Components are stored densely and row-major. A Webster-type tensor is
//! indexed `(ᾱ, β, λ, μ̄)`; a Hermitian matrix `M[i][j]` stands for the
//! component `M_{i j̄}`. Frames are orthonormal with `g(η_α, η_β̄) = δ_{αβ}`.

mod derivative;
mod eigen;
mod hermitian;
pub mod json;
mod matrix;
mod webster;

pub use derivative::{RicciDerivative, WebsterDerivative};
pub use eigen::{hermitian_eigen, Eigen, MAX_SWEEPS};
pub use hermitian::{
    norm_e, random_traceless_hermitian, HermitianMatrix, TorsionMatrix, TracelessHermitianMatrix,
};
pub use matrix::CMatrix;
pub use json::TensorDocument;
pub use webster::{random_webster, WebsterTensor};

use crate::{Complex64, Error, Result};

/// Absolute tolerance for symmetry and trace checks, before scaling by the
/// largest component magnitude.
pub const SYMMETRY_TOL: f64 = 1e-12;

pub(crate) fn ensure_finite(what: &str, xs: &[Complex64]) -> Result<()> {
    if xs.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

pub fn ensure_dimension(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::domain(format!(
            "CR dimension n = {n}; at least n = 2 (real dimension 5) is required"
        )))
    } else {
        Ok(())
    }
}

pub(crate) fn max_abs(xs: &[Complex64]) -> f64 {
    xs.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Tolerance for a residual on data whose largest entry is `scale`.
pub(crate) fn scaled_tol(scale: f64) -> f64 {
    SYMMETRY_TOL * scale.max(1.0)
}

pub(crate) fn delta(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}
