//! Small dense complex linear algebra with a fixed qubit-ordering convention.
//!
//! Amplitude arrays are big-endian over the state's label list: for labels
//! `(1, 2, a)` the amplitude of `|q1 q2 qa⟩` sits at index `4*q1 + 2*q2 + qa`.

mod complement;
mod density;
mod matrix;
mod state;

pub use complement::orthonormal_complement;
pub use density::{von_neumann_entropy, DensityMatrix};
pub use matrix::{is_unitary, is_zero, Matrix2, Verdict};
pub use state::{fidelity_pure, inner_product, partial_trace, tensor_product, Label, PureState};

use num_complex::Complex64;

pub type Amplitude = Complex64;

/// Numeric tolerances shared by the checks in this crate.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerances {
    /// Allowed deviation of Σ|amp|² from 1.
    pub norm: f64,
    /// Threshold for unitary / zero predicates and basis checks.
    pub predicate: f64,
    /// Hermiticity and trace check on density matrices.
    pub hermitian: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            norm: 1e-10,
            predicate: 1e-10,
            hermitian: 1e-12,
        }
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^{iθ}`
pub(crate) fn phase(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}
