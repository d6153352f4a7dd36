use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{DensityMatrix, Tolerances};
use crate::error::{Error, Result};

/// Physical qubit names: Alice holds 1 and 2 plus the input `a`, Bob holds 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[serde(rename = "3")]
    Three,
    #[serde(rename = "a")]
    A,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::One => "1",
            Label::Two => "2",
            Label::Three => "3",
            Label::A => "a",
        };
        f.write_str(s)
    }
}

fn labels_str(labels: &[Label]) -> String {
    let parts: Vec<String> = labels.iter().map(Label::to_string).collect();
    format!("({})", parts.join(","))
}

/// A state vector over an ordered list of distinct qubit labels.
///
/// States built with [`PureState::new`] are checked for unit norm. Collapsed
/// or otherwise intermediate vectors come from [`PureState::unnormalized`]
/// and carry `normalized == false`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    labels: Vec<Label>,
    amps: Vec<Complex64>,
    normalized: bool,
}

impl PureState {
    pub fn new(labels: Vec<Label>, amps: Vec<Complex64>) -> Result<Self> {
        Self::with_tolerance(labels, amps, Tolerances::default().norm)
    }

    pub fn with_tolerance(labels: Vec<Label>, amps: Vec<Complex64>, tol_norm: f64) -> Result<Self> {
        let mut state = Self::unnormalized(labels, amps)?;
        let norm_sqr = state.norm_sqr();
        if (norm_sqr - 1.0).abs() > tol_norm {
            return Err(Error::NotNormalized { norm_sqr });
        }
        state.normalized = true;
        Ok(state)
    }

    pub fn unnormalized(labels: Vec<Label>, amps: Vec<Complex64>) -> Result<Self> {
        check_distinct(&labels)?;
        if amps.len() != 1usize << labels.len() {
            return Err(Error::DimensionMismatch {
                len: amps.len(),
                qubits: labels.len(),
            });
        }
        if let Some(k) = amps
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite(k));
        }
        Ok(Self {
            labels,
            amps,
            normalized: false,
        })
    }

    /// `|bits⟩` in the computational basis, `bits` read big-endian over `labels`.
    pub fn basis_state(labels: Vec<Label>, bits: usize) -> Result<Self> {
        let dim = 1usize << labels.len();
        if bits >= dim {
            return Err(Error::DimensionMismatch {
                len: bits,
                qubits: labels.len(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[bits] = Complex64::new(1.0, 0.0);
        Self::new(labels, amps)
    }

    /// Single qubit `α|0⟩ + β|1⟩`.
    pub fn qubit(label: Label, alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::new(vec![label], vec![alpha, beta])
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Rescale to unit norm. Fails on the zero vector.
    pub fn normalize(mut self) -> Result<Self> {
        let norm_sqr = self.norm_sqr();
        if norm_sqr <= f64::MIN_POSITIVE {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let inv = norm_sqr.sqrt().recip();
        self.amps.iter_mut().for_each(|z| *z *= inv);
        self.normalized = true;
        Ok(self)
    }

    /// Same amplitudes under new names (e.g. the input qubit `a` renamed to `3`).
    pub fn relabel(&self, labels: Vec<Label>) -> Result<Self> {
        if labels.len() != self.labels.len() {
            return Err(Error::LabelMismatch(format!(
                "cannot relabel {} as {}",
                labels_str(&self.labels),
                labels_str(&labels)
            )));
        }
        check_distinct(&labels)?;
        Ok(Self {
            labels,
            amps: self.amps.clone(),
            normalized: self.normalized,
        })
    }

    /// Multiply every amplitude by `factor`; normalization is kept only for unit-modulus factors.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let keeps_norm = (factor.norm_sqr() - 1.0).abs() <= 1e-15;
        Self {
            labels: self.labels.clone(),
            amps: self.amps.iter().map(|z| z * factor).collect(),
            normalized: self.normalized && keeps_norm,
        }
    }

    /// Largest entrywise modulus of `self - other`; labels must agree.
    pub fn max_abs_diff(&self, other: &PureState) -> Result<f64> {
        same_labels(self, other)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max))
    }
}

fn check_distinct(labels: &[Label]) -> Result<()> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(Error::LabelMismatch(format!(
                "label {l} repeated in {}",
                labels_str(labels)
            )));
        }
    }
    Ok(())
}

fn same_labels(x: &PureState, y: &PureState) -> Result<()> {
    if x.labels != y.labels {
        return Err(Error::LabelMismatch(format!(
            "{} vs {}",
            labels_str(&x.labels),
            labels_str(&y.labels)
        )));
    }
    Ok(())
}

/// `left ⊗ right` on the concatenated label list.
pub fn tensor_product(left: &PureState, right: &PureState) -> Result<PureState> {
    if let Some(l) = left.labels.iter().find(|l| right.labels.contains(l)) {
        return Err(Error::LabelCollision(*l));
    }
    let labels = left.labels.iter().chain(&right.labels).copied().collect();
    let amps = left
        .amps
        .iter()
        .flat_map(|x| right.amps.iter().map(move |y| x * y))
        .collect();
    Ok(PureState {
        labels,
        amps,
        normalized: left.normalized && right.normalized,
    })
}

/// `⟨bra|ket⟩`
pub fn inner_product(bra: &PureState, ket: &PureState) -> Result<Complex64> {
    same_labels(bra, ket)?;
    Ok(bra
        .amps
        .iter()
        .zip(&ket.amps)
        .map(|(x, y)| x.conj() * y)
        .sum())
}

/// `|⟨s1|s2⟩|²`
pub fn fidelity_pure(s1: &PureState, s2: &PureState) -> Result<f64> {
    Ok(inner_product(s1, s2)?.norm_sqr().clamp(0.0, 1.0))
}

/// Reduced density matrix over `keep`, ordered as those labels appear in the state.
pub fn partial_trace(state: &PureState, keep: &[Label]) -> Result<DensityMatrix> {
    if keep.is_empty() {
        return Err(Error::LabelMismatch("nothing to keep".into()));
    }
    if let Some(l) = keep.iter().find(|l| !state.labels.contains(l)) {
        return Err(Error::LabelMismatch(format!(
            "label {l} not in {}",
            labels_str(&state.labels)
        )));
    }
    let n = state.num_qubits();
    // bit position of each label inside the big-endian index
    let shift = |pos: usize| n - 1 - pos;
    let kept: Vec<usize> = (0..n)
        .filter(|&p| keep.contains(&state.labels[p]))
        .collect();
    let traced: Vec<usize> = (0..n)
        .filter(|&p| !keep.contains(&state.labels[p]))
        .collect();

    let index = |kbits: usize, tbits: usize| -> usize {
        let mut idx = 0;
        for (j, &p) in kept.iter().enumerate() {
            let bit = (kbits >> (kept.len() - 1 - j)) & 1;
            idx |= bit << shift(p);
        }
        for (j, &p) in traced.iter().enumerate() {
            let bit = (tbits >> (traced.len() - 1 - j)) & 1;
            idx |= bit << shift(p);
        }
        idx
    };

    let dim = 1usize << kept.len();
    let env = 1usize << traced.len();
    let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
    for r in 0..dim {
        for col in 0..dim {
            entries[r * dim + col] = (0..env)
                .map(|t| state.amps[index(r, t)] * state.amps[index(col, t)].conj())
                .sum();
        }
    }
    DensityMatrix::from_entries(dim, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmath::c;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn product_of_zeros() {
        let z1 = PureState::basis_state(vec![Label::One], 0).unwrap();
        let z2 = PureState::basis_state(vec![Label::Two], 0).unwrap();
        let p = tensor_product(&z1, &z2).unwrap();
        assert_eq!(p.labels(), &[Label::One, Label::Two]);
        assert_eq!(
            p.amps(),
            &[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]
        );
    }

    #[test]
    fn ghz_times_input_layout() {
        let h = FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = c(h, 0.0);
        amps[7] = c(h, 0.0);
        let ghz = PureState::new(vec![Label::One, Label::Two, Label::Three], amps).unwrap();
        let (alpha, beta) = (c(0.6, 0.0), c(0.0, 0.8));
        let chi = PureState::qubit(Label::A, alpha, beta).unwrap();
        let joint = tensor_product(&ghz, &chi).unwrap();
        assert_eq!(joint.dim(), 16);
        for (k, z) in joint.amps().iter().enumerate() {
            let expected = match k {
                0b0000 => alpha * h,
                0b0001 => beta * h,
                0b1110 => alpha * h,
                0b1111 => beta * h,
                _ => c(0.0, 0.0),
            };
            assert!((z - expected).norm() < 1e-15, "index {k:04b}");
        }
        assert!(joint.is_normalized());
    }

    #[test]
    fn colliding_labels() {
        let x = PureState::basis_state(vec![Label::A], 0).unwrap();
        assert_eq!(tensor_product(&x, &x), Err(Error::LabelCollision(Label::A)));
    }

    #[test]
    fn inner_product_label_mismatch() {
        let x = PureState::basis_state(vec![Label::A], 0).unwrap();
        let y = PureState::basis_state(vec![Label::Three], 0).unwrap();
        assert!(matches!(
            inner_product(&x, &y),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn rejects_unnormalized_and_nan() {
        let r = PureState::new(vec![Label::A], vec![c(0.9, 0.0), c(0.0, 0.0)]);
        assert!(matches!(r, Err(Error::NotNormalized { .. })));
        let r = PureState::new(vec![Label::A], vec![c(f64::NAN, 0.0), c(1.0, 0.0)]);
        assert_eq!(r, Err(Error::NonFinite(0)));
        let r = PureState::new(vec![Label::A, Label::A], vec![c(1.0, 0.0); 4]);
        assert!(matches!(r, Err(Error::LabelMismatch(_))));
    }

    #[test]
    fn fidelity_examples() {
        let zero = PureState::basis_state(vec![Label::A], 0).unwrap();
        let plus =
            PureState::qubit(Label::A, c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap();
        assert!((fidelity_pure(&zero, &zero).unwrap() - 1.0).abs() < 1e-15);
        assert!((fidelity_pure(&zero, &plus).unwrap() - 0.5).abs() < 1e-15);
        let rotated = plus.scaled(Complex64::from_polar(1.0, 1.234));
        assert!(rotated.is_normalized());
        assert!((fidelity_pure(&plus, &rotated).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn partial_trace_of_ghz_is_half_identity() {
        let h = FRAC_1_SQRT_2;
        let mut amps = vec![c(0.0, 0.0); 8];
        amps[0] = c(h, 0.0);
        amps[7] = c(h, 0.0);
        let ghz = PureState::new(vec![Label::One, Label::Two, Label::Three], amps).unwrap();
        let rho = partial_trace(&ghz, &[Label::Three]).unwrap();
        assert_eq!(rho.dim(), 2);
        assert!((rho.get(0, 0) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((rho.get(1, 1) - c(0.5, 0.0)).norm() < 1e-15);
        assert!(rho.get(0, 1).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_is_projector() {
        let x = PureState::qubit(Label::One, c(0.6, 0.0), c(0.0, 0.8)).unwrap();
        let y =
            PureState::qubit(Label::Two, c(FRAC_1_SQRT_2, 0.0), c(0.0, -FRAC_1_SQRT_2)).unwrap();
        let xy = tensor_product(&x, &y).unwrap();
        let rho = partial_trace(&xy, &[Label::One]).unwrap();
        for r in 0..2 {
            for col in 0..2 {
                let expected = x.amps()[r] * x.amps()[col].conj();
                assert!((rho.get(r, col) - expected).norm() < 1e-15);
            }
        }
        let rho = partial_trace(&xy, &[Label::Two]).unwrap();
        assert!((rho.get(0, 1) - y.amps()[0] * y.amps()[1].conj()).norm() < 1e-15);
    }

    #[test]
    fn partial_trace_errors() {
        let x = PureState::basis_state(vec![Label::One, Label::Two], 0).unwrap();
        assert!(matches!(
            partial_trace(&x, &[Label::A]),
            Err(Error::LabelMismatch(_))
        ));
        assert!(matches!(
            partial_trace(&x, &[]),
            Err(Error::LabelMismatch(_))
        ));
    }
}
