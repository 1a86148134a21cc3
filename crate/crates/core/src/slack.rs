use serde::{Deserialize, Serialize};

/// Outcome of checking one instance of an inequality `lhs <= rhs`.
///
/// `scale` is the natural magnitude of both sides (for instance `k^3` for a
/// cubic bound); violation tolerances are expressed relative to it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SlackRecord {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub scale: f64,
    pub witness: serde_json::Value,
}

impl SlackRecord {
    pub fn new(lhs: f64, rhs: f64, scale: f64, witness: serde_json::Value) -> Self {
        SlackRecord {
            lhs,
            rhs,
            slack: rhs - lhs,
            scale,
            witness,
        }
    }

    /// `slack / rhs`, or `None` when the bound degenerates to zero.
    pub fn ratio(&self) -> Option<f64> {
        if self.rhs > 0.0 {
            Some(self.slack / self.rhs)
        } else {
            None
        }
    }

    pub fn violates(&self, tol: f64) -> bool {
        !(self.slack >= -tol * self.scale.max(f64::MIN_POSITIVE))
    }
}
