//! Channel-level diagnostics: Bob's reduced state, its entropy, and the
//! three-tangle that separates GHZ-class from W-class channels.

use num_complex::Complex64;
use serde::Serialize;

use crate::bases::{verify_basis, BasisReport, MeasurementBasis};
use crate::channels::{ChannelSpec, CHANNEL_LABELS};
use crate::error::{Error, Result};
use crate::extractor::{ExtractionResult, OperatorTag, PerfectVerdict};
use crate::protocol::{FidelityStats, TeleportTrace};
use crate::qmath::{partial_trace, von_neumann_entropy, DensityMatrix, Label, PureState};
use crate::record::{self, Complex64Record};

/// `tr₁₂ |φ⟩⟨φ|`
pub fn bob_reduced_state(channel: &PureState) -> Result<DensityMatrix> {
    if channel.labels() != CHANNEL_LABELS {
        return Err(Error::LabelMismatch(format!(
            "channel must live on (1,2,3), got {:?}",
            channel.labels()
        )));
    }
    partial_trace(channel, &[Label::Three])
}

/// Cayley hyperdeterminant of the 2×2×2 amplitude tensor `t[i][j][k] = amps[4i + 2j + k]`.
pub fn hyperdeterminant(amps: &[Complex64]) -> Complex64 {
    let a = |i: usize, j: usize, k: usize| amps[4 * i + 2 * j + k];

    let d1 = a(0, 0, 0).powi(2) * a(1, 1, 1).powi(2)
        + a(0, 0, 1).powi(2) * a(1, 1, 0).powi(2)
        + a(0, 1, 0).powi(2) * a(1, 0, 1).powi(2)
        + a(1, 0, 0).powi(2) * a(0, 1, 1).powi(2);

    let d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0)
        + a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1)
        + a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);

    let d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1)
        + a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);

    d1 - 2.0 * d2 + 4.0 * d3
}

/// `τ = 4 |hyperdeterminant|`, clamped to `[0, 1]`.
pub fn three_tangle(channel: &PureState) -> f64 {
    assert_eq!(
        channel.num_qubits(),
        3,
        "three-tangle needs a three-qubit state"
    );
    (4.0 * hyperdeterminant(channel.amps()).norm()).clamp(0.0, 1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelSection {
    pub spec: ChannelSpec,
    pub amplitudes: Vec<Complex64Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basis: Option<Vec<BasisElementRecord>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BasisElementRecord {
    pub index: usize,
    pub amplitudes: Vec<Complex64Record>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatorRecord {
    pub index: usize,
    pub matrix: [[Complex64Record; 2]; 2],
    pub tag: OperatorTag,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrectionRecord {
    pub index: usize,
    pub matrix: [[Complex64Record; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerdictSummary {
    pub perfect: bool,
    pub unitary_indices: Vec<usize>,
    pub zero_indices: Vec<usize>,
    pub max_unitary_residual: f64,
    pub max_zero_residual: f64,
    pub operator_completeness_deviation: f64,
    pub canonical_corrections: Option<bool>,
    pub corrections: Vec<CorrectionRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rho3Section {
    pub entries: Vec<Vec<Complex64Record>>,
    pub max_deviation_from_half_identity: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FidelitySection {
    #[serde(flatten)]
    pub stats: FidelityStats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub traces: Option<Vec<TeleportTrace>>,
}

/// Everything known about one channel/basis pair; serializes to the JSON report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChannelReport {
    pub channel: ChannelSection,
    pub basis_deviations: BasisReport,
    pub operators: Vec<OperatorRecord>,
    pub verdict: VerdictSummary,
    pub rho3: Rho3Section,
    pub entropy_bits: f64,
    pub three_tangle: f64,
    pub fidelity: Option<FidelitySection>,
}

pub struct ReportInputs<'a> {
    pub spec: &'a ChannelSpec,
    pub channel: &'a PureState,
    pub basis: &'a MeasurementBasis,
    pub extraction: &'a ExtractionResult,
    pub verdict: &'a PerfectVerdict,
    pub fidelity: Option<FidelitySection>,
    pub tol: f64,
    pub dump_basis: bool,
}

pub fn build_report(inputs: ReportInputs<'_>) -> Result<ChannelReport> {
    let ReportInputs {
        spec,
        channel,
        basis,
        extraction,
        verdict,
        fidelity,
        tol,
        dump_basis,
    } = inputs;

    let rho3 = bob_reduced_state(channel)?;
    let entropy_bits = von_neumann_entropy(&rho3)?;
    let basis_deviations = verify_basis(basis, tol)?;

    let operators = extraction
        .tags(tol)
        .into_iter()
        .enumerate()
        .map(|(k, tag)| OperatorRecord {
            index: k + 1,
            matrix: record::matrix2(extraction.sigma(k + 1)),
            tag,
        })
        .collect();

    let canonical_corrections = if verdict.perfect {
        Some(crate::extractor::check_canonical_corrections_with(
            verdict, tol,
        )?)
    } else {
        None
    };

    let basis_dump = dump_basis.then(|| {
        basis
            .elements()
            .iter()
            .enumerate()
            .map(|(k, e)| BasisElementRecord {
                index: k + 1,
                amplitudes: record::amplitudes(e),
            })
            .collect()
    });

    Ok(ChannelReport {
        channel: ChannelSection {
            spec: spec.clone(),
            amplitudes: record::amplitudes(channel),
            basis: basis_dump,
        },
        basis_deviations,
        operators,
        verdict: VerdictSummary {
            perfect: verdict.perfect,
            unitary_indices: verdict.unitary_indices.clone(),
            zero_indices: verdict.zero_indices.clone(),
            max_unitary_residual: verdict.max_unitary_residual,
            max_zero_residual: verdict.max_zero_residual,
            operator_completeness_deviation: extraction.completeness_deviation(),
            canonical_corrections,
            corrections: verdict
                .corrections
                .iter()
                .map(|(&index, m)| CorrectionRecord {
                    index,
                    matrix: record::matrix2(m),
                })
                .collect(),
        },
        rho3: Rho3Section {
            entries: record::density(&rho3),
            max_deviation_from_half_identity: rho3.max_deviation_from_maximally_mixed(),
        },
        entropy_bits,
        three_tangle: three_tangle(channel),
        fidelity,
    })
}
