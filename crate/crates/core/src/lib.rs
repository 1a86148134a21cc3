//! Pseudo-Hermitian (CR) geometry toolkit.
//!
//! The crate is organised around the algebra of the Webster curvature of a
//! strictly pseudoconvex CR manifold of real dimension `2n + 1`:
//!
//! * [`tensor`]: complex tensor storage with the Webster symmetries, norms
//!   with the customary convention weights, a Jacobi eigensolver for
//!   Hermitian matrices and the JSON exchange format.
//! * [`curvature`]: Chern-Moser / traceless Ricci / scalar decomposition,
//!   space forms, pseudo-Hermitian sectional curvature and the bridge to the
//!   Riemannian curvature of the Webster metric on Sasakian manifolds.
//! * [`inequality`]: verifiers and a sampling harness for the algebraic
//!   inequalities behind the Weitzenböck estimates.
//! * [`heisenberg`]: explicit frame calculus on the Heisenberg group, both
//!   with exact symbolic derivatives and with finite differences on grids.
//! * [`conformal`]: CR conformal and D-homothetic transformation laws.
//! * [`rigidity`]: pinching constants and a hypothesis evaluator.

// `!(x >= lo)` is deliberate throughout: NaN has to fail range checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod conformal;
pub mod curvature;
pub mod error;
pub mod heisenberg;
pub mod inequality;
pub mod rigidity;
pub mod rng;
pub mod slack;
pub mod sum;
pub mod tensor;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use slack::SlackRecord;
