use serde::{Deserialize, Serialize};

pub const DEFAULT_TOL: f64 = 1e-9;
pub const DEFAULT_JACOBI_TOL: f64 = 1e-8;

/// Tolerances used by every predicate in the crate.
///
/// `numeric` is the base tolerance for "is this tensor zero" questions; it is
/// applied scale-free as `numeric * (1 + scale)` where `scale` is the largest
/// structure constant of the manifold. `jacobi` only guards input validation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub numeric: f64,
    pub jacobi: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            numeric: DEFAULT_TOL,
            jacobi: DEFAULT_JACOBI_TOL,
        }
    }
}

impl Tolerance {
    pub fn with_numeric(numeric: f64) -> Self {
        Self {
            numeric,
            ..Self::default()
        }
    }

    /// Zero threshold for tensors computed from data of magnitude `scale`.
    pub fn threshold(&self, scale: f64) -> f64 {
        self.numeric * (1.0 + scale.abs())
    }

    pub fn is_zero(&self, value: f64, scale: f64) -> bool {
        value.abs() < self.threshold(scale)
    }
}
