//! Transformation operators induced on Bob's qubit by each measurement outcome.
//!
//! For a channel `|φ⟩₁₂₃` and a basis `{φⁱ}` on `(1, 2, a)` the joint state
//! decomposes as `|φ⟩₁₂₃ ⊗ |χ⟩ₐ = ½ Σᵢ |φⁱ⟩₁₂ₐ ⊗ σⁱ|χ⟩₃`, with
//!
//! ```text
//! σⁱ[j][k] = 2 Σ_{q1,q2} conj(φⁱ[q1 q2 k]) · φ[q1 q2 j]
//! ```
//!
//! (row `j` is Bob's output bit, column `k` the input bit). The channel is a
//! perfect teleportation resource for the basis when four `σⁱ` are unitary and
//! the remaining four vanish.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::bases::{verify_basis, MeasurementBasis, BASIS_LABELS, BASIS_SIZE};
use crate::channels::CHANNEL_LABELS;
use crate::error::{Error, Result};
use crate::qmath::{is_unitary, is_zero, Matrix2, PureState, Tolerances};

/// The four corrections that appear for both canonical families:
/// `I`, `diag(1, −1)`, `[[0, 1], [1, 0]]`, `[[0, −1], [1, 0]]`.
pub fn canonical_corrections() -> [Matrix2; 4] {
    [
        Matrix2::IDENTITY,
        Matrix2::from_real([[1.0, 0.0], [0.0, -1.0]]),
        Matrix2::from_real([[0.0, 1.0], [1.0, 0.0]]),
        Matrix2::from_real([[0.0, -1.0], [1.0, 0.0]]),
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OperatorTag {
    Unitary {
        residual: f64,
    },
    Zero {
        residual: f64,
    },
    Other {
        unitary_residual: f64,
        zero_residual: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExtractionResult {
    sigmas: [Matrix2; BASIS_SIZE],
}

#[derive(Debug, Clone, PartialEq)]
pub struct PerfectVerdict {
    pub perfect: bool,
    /// 1-based, ascending
    pub unitary_indices: Vec<usize>,
    /// 1-based, ascending
    pub zero_indices: Vec<usize>,
    /// `(σⁱ)†` for every unitary index
    pub corrections: BTreeMap<usize, Matrix2>,
    pub max_unitary_residual: f64,
    pub max_zero_residual: f64,
}

impl ExtractionResult {
    /// Wraps precomputed operators, `sigmas[i - 1] = σⁱ`.
    pub fn from_sigmas(sigmas: [Matrix2; BASIS_SIZE]) -> Self {
        Self { sigmas }
    }

    pub fn sigmas(&self) -> &[Matrix2; BASIS_SIZE] {
        &self.sigmas
    }

    /// `σⁱ` for `i` in `1..=8`.
    pub fn sigma(&self, i: usize) -> &Matrix2 {
        &self.sigmas[i - 1]
    }

    pub fn tag(&self, i: usize, tol: f64) -> OperatorTag {
        let m = self.sigma(i);
        let u = is_unitary(m, tol);
        let z = is_zero(m, tol);
        match (u.holds, z.holds) {
            (true, _) => OperatorTag::Unitary {
                residual: u.residual,
            },
            (false, true) => OperatorTag::Zero {
                residual: z.residual,
            },
            (false, false) => OperatorTag::Other {
                unitary_residual: u.residual,
                zero_residual: z.residual,
            },
        }
    }

    pub fn tags(&self, tol: f64) -> Vec<OperatorTag> {
        (1..=BASIS_SIZE).map(|i| self.tag(i, tol)).collect()
    }

    /// Max-abs entry of `Σᵢ (σⁱ)†σⁱ − 4I`.
    pub fn completeness_deviation(&self) -> f64 {
        let sum = self
            .sigmas
            .iter()
            .fold(Matrix2::ZERO, |acc, s| acc + s.adjoint() * *s);
        sum.max_abs_diff(&Matrix2::IDENTITY.scale(Complex64::new(4.0, 0.0)))
    }
}

/// σⁱ for every basis element. The basis must pass [`verify_basis`] and the channel must be normalized.
pub fn extract_operators(
    channel: &PureState,
    basis: &MeasurementBasis,
) -> Result<ExtractionResult> {
    extract_operators_with(channel, basis, &Tolerances::default())
}

pub fn extract_operators_with(
    channel: &PureState,
    basis: &MeasurementBasis,
    tol: &Tolerances,
) -> Result<ExtractionResult> {
    if channel.labels() != CHANNEL_LABELS {
        return Err(Error::LabelMismatch(format!(
            "channel must live on (1,2,3), got {:?}",
            channel.labels()
        )));
    }
    let norm_sqr = channel.norm_sqr();
    if (norm_sqr - 1.0).abs() > tol.norm {
        return Err(Error::NotNormalized { norm_sqr });
    }
    if basis.labels() != BASIS_LABELS {
        return Err(Error::MalformedBasis(format!(
            "basis must live on (1,2,a), got {:?}",
            basis.labels()
        )));
    }
    let report = verify_basis(basis, tol.predicate)?;
    if !report.ok {
        return Err(Error::MalformedBasis(format!(
            "not orthonormal and complete: gram deviation {:e}, completeness deviation {:e}",
            report.max_gram_deviation, report.max_completeness_deviation
        )));
    }

    let ch = channel.amps();
    let mut sigmas = [Matrix2::ZERO; BASIS_SIZE];
    for (sigma, phi) in sigmas.iter_mut().zip(basis.elements()) {
        let phi = phi.amps();
        for j in 0..2 {
            for k in 0..2 {
                // Alice's pair (q1, q2) occupies the two high bits in both registers
                let acc: Complex64 = (0..4)
                    .map(|pair| phi[2 * pair + k].conj() * ch[2 * pair + j])
                    .sum();
                sigma.0[j][k] = 2.0 * acc;
            }
        }
    }
    Ok(ExtractionResult { sigmas })
}

/// Perfect iff exactly four operators are unitary and the other four zero within `tol`.
pub fn classify(result: &ExtractionResult, tol: f64) -> PerfectVerdict {
    assert!(
        tol < 0.5,
        "unitary and zero predicates overlap for tol ≥ 0.5"
    );
    let mut unitary_indices = Vec::new();
    let mut zero_indices = Vec::new();
    let mut corrections = BTreeMap::new();
    let mut max_unitary_residual = 0.0f64;
    let mut max_zero_residual = 0.0f64;
    for i in 1..=BASIS_SIZE {
        match result.tag(i, tol) {
            OperatorTag::Unitary { residual } => {
                unitary_indices.push(i);
                corrections.insert(i, result.sigma(i).adjoint());
                max_unitary_residual = max_unitary_residual.max(residual);
            }
            OperatorTag::Zero { residual } => {
                zero_indices.push(i);
                max_zero_residual = max_zero_residual.max(residual);
            }
            OperatorTag::Other { .. } => {}
        }
    }
    let perfect = unitary_indices.len() == 4 && zero_indices.len() == 4;
    PerfectVerdict {
        perfect,
        unitary_indices,
        zero_indices,
        corrections,
        max_unitary_residual,
        max_zero_residual,
    }
}

impl PerfectVerdict {
    /// Residual of the best assignment of unitary operators to the canonical
    /// four, each compared up to its own global phase.
    pub fn canonical_correction_residual(&self) -> Result<f64> {
        if !self.perfect {
            return Err(Error::NotPerfect(
                "canonical corrections are only defined for perfect verdicts".into(),
            ));
        }
        let sigmas: Vec<Matrix2> = self.corrections.values().map(Matrix2::adjoint).collect();
        let targets = canonical_corrections();
        let mut best = f64::INFINITY;
        for perm in permutations4() {
            let worst = sigmas
                .iter()
                .zip(perm)
                .map(|(s, t)| s.phase_aligned_residual(&targets[t]))
                .fold(0.0, f64::max);
            best = best.min(worst);
        }
        Ok(best)
    }
}

/// True iff the four unitary operators are, up to a phase each, exactly the canonical four.
pub fn check_canonical_corrections(verdict: &PerfectVerdict) -> Result<bool> {
    check_canonical_corrections_with(verdict, Tolerances::default().predicate)
}

pub fn check_canonical_corrections_with(verdict: &PerfectVerdict, tol: f64) -> Result<bool> {
    Ok(verdict.canonical_correction_residual()? <= tol)
}

fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in (0..4).filter(|&b| b != a) {
            for c in (0..4).filter(|&c| c != a && c != b) {
                let d = 6 - a - b - c;
                out.push([a, b, c, d]);
            }
        }
    }
    out
}
