//! Eight-element projective measurement bases on Alice's register `(1, 2, a)`.

use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::channels::{CanonicalParams1, CanonicalParams2};
use crate::error::{Error, Result};
use crate::qmath::{c, inner_product, orthonormal_complement, phase, Label, PureState};

pub const BASIS_LABELS: [Label; 3] = [Label::One, Label::Two, Label::A];
pub const BASIS_SIZE: usize = 8;

/// Measurement basis `φ¹ … φ⁸`; element `i` is stored at position `i − 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementBasis {
    elements: Vec<PureState>,
}

/// Real coefficients of the completion states in the `{|x0⟩, |x1·e^{iδ}⟩, |x2·e^{iλ}⟩}` blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CompletionCoefficients {
    pub c: [f64; 3],
    pub d: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BasisReport {
    pub max_gram_deviation: f64,
    pub max_completeness_deviation: f64,
    pub ok: bool,
}

impl MeasurementBasis {
    /// Elements must be eight states on identical three-qubit label lists.
    pub fn new(elements: Vec<PureState>) -> Result<Self> {
        if elements.len() != BASIS_SIZE {
            return Err(Error::MalformedBasis(format!(
                "expected {BASIS_SIZE} elements, got {}",
                elements.len()
            )));
        }
        let labels = elements[0].labels();
        if labels.len() != 3 {
            return Err(Error::MalformedBasis(format!(
                "elements must be three-qubit states, got {} qubits",
                labels.len()
            )));
        }
        if let Some(i) = elements.iter().position(|e| e.labels() != labels) {
            return Err(Error::MalformedBasis(format!(
                "element {} has different labels",
                i + 1
            )));
        }
        Ok(Self { elements })
    }

    /// `|000⟩ … |111⟩` on `(1, 2, a)`.
    pub fn computational() -> Self {
        let elements = (0..BASIS_SIZE)
            .map(|k| PureState::basis_state(BASIS_LABELS.to_vec(), k).expect("k < 8"))
            .collect();
        Self { elements }
    }

    /// Haar-random basis: Gram–Schmidt of a complex Gaussian 8×8 matrix.
    pub fn haar_random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let mut columns: Vec<Vec<Complex64>> = Vec::with_capacity(BASIS_SIZE);
        while columns.len() < BASIS_SIZE {
            let mut v: Vec<Complex64> = (0..BASIS_SIZE)
                .map(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)))
                .collect();
            for _ in 0..2 {
                for q in &columns {
                    let p: Complex64 = q.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
                    v.iter_mut().zip(q).for_each(|(vi, qi)| *vi -= p * qi);
                }
            }
            let norm = v.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
            if norm > 1e-8 {
                v.iter_mut().for_each(|z| *z /= norm);
                columns.push(v);
            }
        }
        let elements = columns
            .into_iter()
            .map(|v| PureState::new(BASIS_LABELS.to_vec(), v).expect("unit vector"))
            .collect();
        Self { elements }
    }

    pub fn elements(&self) -> &[PureState] {
        &self.elements
    }

    /// `φⁱ` for `i` in `1..=8`.
    pub fn element(&self, i: usize) -> &PureState {
        &self.elements[i - 1]
    }

    pub fn labels(&self) -> &[Label] {
        self.elements[0].labels()
    }
}

fn state(entries: &[(usize, Complex64)]) -> PureState {
    let mut amps = vec![Complex64::ZERO; BASIS_SIZE];
    for &(k, z) in entries {
        amps[k] = z;
    }
    PureState::new(BASIS_LABELS.to_vec(), amps).expect("basis elements are unit vectors")
}

/// `(c, d)` orthogonal to `(a, b, √(½ − a² − b²))` and to each other, unit length.
pub fn completion_coefficients(p: &CanonicalParams1) -> Result<CompletionCoefficients> {
    p.validate()?;
    let v = [p.a, p.b, p.third()];
    // rounding in third() can move |v|² off 1/2 by an ulp or two
    let (c, d) = orthonormal_complement(v)?;
    Ok(CompletionCoefficients { c, d })
}

/// Basis paired with the first canonical form.
///
/// `φ¹…φ⁴` carry the `e^{iλ}` phase on their `|100⟩`/`|101⟩` terms; `φ⁵, φ⁶`
/// span the rest of `{|000⟩, |010⟩, |100⟩}` and `φ⁷, φ⁸` the rest of
/// `{|001⟩, |011⟩, |101⟩}`, both with the same `(c, d)`.
pub fn build_basis_form1(p: &CanonicalParams1) -> Result<MeasurementBasis> {
    let CompletionCoefficients { c: cc, d: dd } = completion_coefficients(p)?;
    let a = c(p.a, 0.0);
    let b = p.b * phase(p.delta);
    let s = p.third() * phase(p.lambda);
    let h = FRAC_1_SQRT_2 * phase(p.gamma);
    let (pd, pl) = (phase(p.delta), phase(p.lambda));

    let elements = vec![
        state(&[(0b000, a), (0b010, b), (0b100, s), (0b111, h)]),
        state(&[(0b000, a), (0b010, b), (0b100, s), (0b111, -h)]),
        state(&[(0b001, a), (0b011, b), (0b101, s), (0b110, h)]),
        state(&[(0b001, a), (0b011, b), (0b101, s), (0b110, -h)]),
        state(&[
            (0b000, c(cc[0], 0.0)),
            (0b010, cc[1] * pd),
            (0b100, cc[2] * pl),
        ]),
        state(&[
            (0b000, c(dd[0], 0.0)),
            (0b010, dd[1] * pd),
            (0b100, dd[2] * pl),
        ]),
        state(&[
            (0b001, c(cc[0], 0.0)),
            (0b011, cc[1] * pd),
            (0b101, cc[2] * pl),
        ]),
        state(&[
            (0b001, c(dd[0], 0.0)),
            (0b011, dd[1] * pd),
            (0b101, dd[2] * pl),
        ]),
    ];
    Ok(MeasurementBasis { elements })
}

/// Basis paired with the second canonical form.
pub fn build_basis_form2(p: &CanonicalParams2) -> Result<MeasurementBasis> {
    p.validate()?;
    let a = c(p.a, 0.0);
    let b = p.b * phase(p.delta);
    let sb = p.sb() * phase(p.lambda);
    let sa = p.sa() * phase(p.gamma);

    let r2 = c(SQRT_2, 0.0);
    let elements = vec![
        state(&[(0b001, a), (0b010, b), (0b100, sb), (0b111, sa)]),
        state(&[(0b001, -a), (0b010, b), (0b100, sb), (0b111, -sa)]),
        state(&[(0b000, a), (0b011, b), (0b101, sb), (0b110, sa)]),
        state(&[(0b000, -a), (0b011, b), (0b101, sb), (0b110, -sa)]),
        state(&[(0b001, r2 * p.sa()), (0b111, -r2 * p.a * phase(p.gamma))]),
        state(&[
            (0b010, r2 * p.sb() * phase(p.delta)),
            (0b100, -r2 * p.b * phase(p.lambda)),
        ]),
        state(&[(0b000, r2 * p.sa()), (0b110, -r2 * p.a * phase(p.gamma))]),
        state(&[
            (0b011, r2 * p.sb() * phase(p.delta)),
            (0b101, -r2 * p.b * phase(p.lambda)),
        ]),
    ];
    Ok(MeasurementBasis { elements })
}

/// Gram matrix `G[i][j] = ⟨φⁱ|φʲ⟩`.
pub fn gram_matrix(basis: &MeasurementBasis) -> Result<Vec<Vec<Complex64>>> {
    basis
        .elements
        .iter()
        .map(|x| basis.elements.iter().map(|y| inner_product(x, y)).collect())
        .collect()
}

/// Orthonormality and resolution of the identity, each as a max-abs deviation.
pub fn verify_basis(basis: &MeasurementBasis, tol: f64) -> Result<BasisReport> {
    // also re-checks count and labels for bases assembled elsewhere
    MeasurementBasis::new(basis.elements.clone())?;

    let gram = gram_matrix(basis)?;
    let mut max_gram_deviation = 0.0f64;
    for (i, row) in gram.iter().enumerate() {
        for (j, g) in row.iter().enumerate() {
            let target = if i == j {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            max_gram_deviation = max_gram_deviation.max((g - target).norm());
        }
    }

    let mut max_completeness_deviation = 0.0f64;
    for r in 0..BASIS_SIZE {
        for col in 0..BASIS_SIZE {
            let sum: Complex64 = basis
                .elements
                .iter()
                .map(|e| e.amps()[r] * e.amps()[col].conj())
                .sum();
            let target = if r == col {
                Complex64::ONE
            } else {
                Complex64::ZERO
            };
            max_completeness_deviation = max_completeness_deviation.max((sum - target).norm());
        }
    }

    Ok(BasisReport {
        max_gram_deviation,
        max_completeness_deviation,
        ok: max_gram_deviation <= tol && max_completeness_deviation <= tol,
    })
}
