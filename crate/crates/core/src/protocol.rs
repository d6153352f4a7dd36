//! End-to-end teleportation: Alice measures `(1, 2, a)`, sends the outcome,
//! Bob applies `(σⁱ)†`.
//!
//! Every session draws from its own `ChaCha8Rng` seeded with a `u64`; batch
//! runs use `seed.wrapping_add(session_index)` so results do not depend on
//! whether the batch runs sequentially or in parallel.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::bases::{MeasurementBasis, BASIS_SIZE};
use crate::error::{Error, Result};
use crate::extractor::{extract_operators, ExtractionResult, PerfectVerdict};
use crate::par::Execution;
use crate::qmath::{c, fidelity_pure, Label, Matrix2, PureState};
use crate::record::Complex64Record;

/// Outcomes below this probability are removed from the sampling support.
pub const ZERO_PROBABILITY_GUARD: f64 = 1e-15;

/// Alice's classical message. Perfect channels need two bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassicalMessage {
    /// 1-based basis index
    pub outcome_index: usize,
    pub encoded_bits: u8,
    pub bit_width: u8,
}

impl ClassicalMessage {
    /// Perfect verdicts map their sorted unitary indices to `00, 01, 10, 11`;
    /// anything else sends `index − 1` in three bits.
    pub fn encode(outcome_index: usize, verdict: &PerfectVerdict) -> Self {
        if verdict.perfect {
            if let Some(pos) = verdict
                .unitary_indices
                .iter()
                .position(|&i| i == outcome_index)
            {
                return Self {
                    outcome_index,
                    encoded_bits: pos as u8,
                    bit_width: 2,
                };
            }
        }
        Self {
            outcome_index,
            encoded_bits: (outcome_index - 1) as u8,
            bit_width: 3,
        }
    }

    /// Bob's side: recover the outcome index from the bits.
    pub fn decode(encoded_bits: u8, bit_width: u8, verdict: &PerfectVerdict) -> Option<usize> {
        match bit_width {
            2 if verdict.perfect => verdict.unitary_indices.get(encoded_bits as usize).copied(),
            3 if (encoded_bits as usize) < BASIS_SIZE => Some(encoded_bits as usize + 1),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TeleportTrace {
    pub input: [Complex64Record; 2],
    pub outcome: ClassicalMessage,
    pub probability: f64,
    /// `½ σⁱ χ`, Bob's qubit before correction
    pub bob_premeasure: [Complex64Record; 2],
    pub correction: [[Complex64Record; 2]; 2],
    pub final_state: [Complex64Record; 2],
    pub fidelity: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FidelityStats {
    pub sessions: usize,
    pub min_fidelity: f64,
    pub mean_fidelity: f64,
}

/// `pᵢ = ¼ ‖σⁱ χ‖²`
pub fn outcome_distribution(
    channel: &PureState,
    basis: &MeasurementBasis,
    input: &PureState,
) -> Result<[f64; BASIS_SIZE]> {
    let ex = extract_operators(channel, basis)?;
    let chi = input_amps(input)?;
    Ok(distribution_from(&ex, chi))
}

fn distribution_from(ex: &ExtractionResult, chi: [Complex64; 2]) -> [f64; BASIS_SIZE] {
    let mut p = [0.0; BASIS_SIZE];
    for (pi, s) in p.iter_mut().zip(ex.sigmas()) {
        let out = s.apply(chi);
        *pi = 0.25 * (out[0].norm_sqr() + out[1].norm_sqr());
    }
    p
}

fn input_amps(input: &PureState) -> Result<[Complex64; 2]> {
    if input.labels() != [Label::A] {
        return Err(Error::LabelMismatch(format!(
            "input must be a single qubit labelled a, got {:?}",
            input.labels()
        )));
    }
    let norm_sqr = input.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-10 {
        return Err(Error::NotNormalized { norm_sqr });
    }
    Ok([input.amps()[0], input.amps()[1]])
}

/// Haar-uniform qubit on `a`: two complex standard normals, normalized.
pub fn haar_qubit<R: Rng + ?Sized>(rng: &mut R) -> PureState {
    loop {
        let alpha = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let beta = c(rng.sample(StandardNormal), rng.sample(StandardNormal));
        if let Ok(s) = PureState::unnormalized(vec![Label::A], vec![alpha, beta])
            .and_then(PureState::normalize)
        {
            return s;
        }
    }
}

/// Channel, basis and verdict with the operators computed once, for repeated sessions.
#[derive(Debug, Clone)]
pub struct Teleporter {
    extraction: ExtractionResult,
    verdict: PerfectVerdict,
}

impl Teleporter {
    pub fn new(
        channel: &PureState,
        basis: &MeasurementBasis,
        verdict: PerfectVerdict,
    ) -> Result<Self> {
        Ok(Self {
            extraction: extract_operators(channel, basis)?,
            verdict,
        })
    }

    pub fn verdict(&self) -> &PerfectVerdict {
        &self.verdict
    }

    pub fn extraction(&self) -> &ExtractionResult {
        &self.extraction
    }

    pub fn distribution(&self, input: &PureState) -> Result<[f64; BASIS_SIZE]> {
        Ok(distribution_from(&self.extraction, input_amps(input)?))
    }

    /// Born-rule sample of Alice's outcome, 1-based.
    pub fn sample_outcome<R: Rng + ?Sized>(&self, input: &PureState, rng: &mut R) -> Result<usize> {
        let p = self.distribution(input)?;
        Ok(sample_index(&p, rng))
    }

    pub fn session(&self, input: &PureState, seed: u64) -> Result<TeleportTrace> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.session_with(input, &mut rng)
    }

    fn session_with<R: Rng + ?Sized>(
        &self,
        input: &PureState,
        rng: &mut R,
    ) -> Result<TeleportTrace> {
        let chi = input_amps(input)?;
        let p = distribution_from(&self.extraction, chi);
        let outcome = sample_index(&p, rng);
        if self.verdict.zero_indices.contains(&outcome) {
            return Err(Error::SampledZeroOutcome(outcome));
        }
        let correction = *self.verdict.corrections.get(&outcome).ok_or_else(|| {
            Error::NotPerfect(format!(
                "outcome {outcome} has a non-unitary transformation operator"
            ))
        })?;

        let sigma = self.extraction.sigma(outcome);
        let premeasure = sigma.apply(chi).map(|z| 0.5 * z);
        let corrected = (correction * *sigma).apply(chi);
        let final_state =
            PureState::unnormalized(vec![Label::Three], corrected.to_vec())?.normalize()?;
        let target = input.relabel(vec![Label::Three])?;
        let fidelity = fidelity_pure(&target, &final_state)?;

        Ok(TeleportTrace {
            input: chi.map(Into::into),
            outcome: ClassicalMessage::encode(outcome, &self.verdict),
            probability: p[outcome - 1],
            bob_premeasure: premeasure.map(Into::into),
            correction: correction.0.map(|row| row.map(Into::into)),
            final_state: [final_state.amps()[0].into(), final_state.amps()[1].into()],
            fidelity,
        })
    }

    /// `n` sessions on one input, seeds `seed + i`.
    pub fn run_shots(
        &self,
        input: &PureState,
        n: usize,
        seed: u64,
        exec: Execution,
    ) -> Result<Vec<TeleportTrace>> {
        exec.map(n, |i| self.session(input, seed.wrapping_add(i as u64)))
            .into_iter()
            .collect()
    }

    /// Outcome histogram of `n` shots, seeds `seed + i`; entry `i − 1` counts outcome `i`.
    pub fn outcome_counts(
        &self,
        input: &PureState,
        n: usize,
        seed: u64,
        exec: Execution,
    ) -> Result<[u64; BASIS_SIZE]> {
        let p = self.distribution(input)?;
        let outcomes = exec.map(n, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            sample_index(&p, &mut rng)
        });
        let mut counts = [0u64; BASIS_SIZE];
        for o in outcomes {
            counts[o - 1] += 1;
        }
        Ok(counts)
    }

    /// Sessions on `n` Haar-random inputs; session `i` uses seed `seed + i`
    /// for both its input and its outcome.
    pub fn batch_sessions(
        &self,
        n_inputs: usize,
        seed: u64,
        exec: Execution,
    ) -> Result<Vec<TeleportTrace>> {
        if !self.verdict.perfect {
            return Err(Error::NotPerfect(
                "batch runs need a perfect verdict".into(),
            ));
        }
        if n_inputs == 0 {
            return Err(Error::EmptyBatch);
        }
        exec.map(n_inputs, |i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
            let input = haar_qubit(&mut rng);
            self.session_with(&input, &mut rng)
        })
        .into_iter()
        .collect()
    }

    pub fn batch_fidelity(
        &self,
        n_inputs: usize,
        seed: u64,
        exec: Execution,
    ) -> Result<FidelityStats> {
        FidelityStats::from_traces(&self.batch_sessions(n_inputs, seed, exec)?)
    }
}

impl FidelityStats {
    pub fn from_traces(traces: &[TeleportTrace]) -> Result<Self> {
        if traces.is_empty() {
            return Err(Error::EmptyBatch);
        }
        Ok(Self {
            sessions: traces.len(),
            min_fidelity: traces
                .iter()
                .map(|t| t.fidelity)
                .fold(f64::INFINITY, f64::min),
            mean_fidelity: traces.iter().map(|t| t.fidelity).sum::<f64>() / traces.len() as f64,
        })
    }
}

fn sample_index<R: Rng + ?Sized>(p: &[f64; BASIS_SIZE], rng: &mut R) -> usize {
    let total: f64 = p.iter().filter(|&&x| x >= ZERO_PROBABILITY_GUARD).sum();
    let r = rng.random::<f64>() * total;
    let mut acc = 0.0;
    let mut last = 0;
    for (k, &pk) in p.iter().enumerate() {
        if pk < ZERO_PROBABILITY_GUARD {
            continue;
        }
        acc += pk;
        last = k;
        if r < acc {
            return k + 1;
        }
    }
    last + 1
}

pub fn run_session(
    channel: &PureState,
    basis: &MeasurementBasis,
    verdict: &PerfectVerdict,
    input: &PureState,
    rng_seed: u64,
) -> Result<TeleportTrace> {
    Teleporter::new(channel, basis, verdict.clone())?.session(input, rng_seed)
}

pub fn batch_fidelity(
    channel: &PureState,
    basis: &MeasurementBasis,
    verdict: &PerfectVerdict,
    n_inputs: usize,
    rng_seed: u64,
) -> Result<FidelityStats> {
    Teleporter::new(channel, basis, verdict.clone())?.batch_fidelity(
        n_inputs,
        rng_seed,
        Execution::default(),
    )
}

impl TeleportTrace {
    pub fn final_amps(&self) -> [Complex64; 2] {
        self.final_state.map(Into::into)
    }

    pub fn correction_matrix(&self) -> Matrix2 {
        Matrix2(self.correction.map(|row| row.map(Into::into)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{build_basis_form1, build_basis_form2};
    use crate::channels::{build_named, NamedChannel, CHANNEL_LABELS};
    use crate::extractor::classify;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn ghz_setup() -> (PureState, MeasurementBasis, PerfectVerdict) {
        let ch = build_named(&NamedChannel::Ghz { gamma: 0.0 });
        let basis = build_basis_form1(&crate::channels::CanonicalParams1::new(
            FRAC_1_SQRT_2,
            0.0,
            0.0,
            0.0,
            0.0,
        ))
        .unwrap();
        let v = classify(&extract_operators(&ch, &basis).unwrap(), 1e-10);
        (ch, basis, v)
    }

    fn w1_setup() -> (PureState, MeasurementBasis, PerfectVerdict) {
        let ch = build_named(&NamedChannel::W1);
        let basis = build_basis_form2(&crate::channels::CanonicalParams2::new(
            FRAC_1_SQRT_2,
            0.5,
            0.0,
            0.0,
            0.0,
        ))
        .unwrap();
        let v = classify(&extract_operators(&ch, &basis).unwrap(), 1e-10);
        (ch, basis, v)
    }

    #[test]
    fn ghz_session_has_unit_fidelity() {
        let (ch, basis, v) = ghz_setup();
        let input = PureState::qubit(Label::A, c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        for seed in 0..20 {
            let t = run_session(&ch, &basis, &v, &input, seed).unwrap();
            assert!((t.fidelity - 1.0).abs() < 1e-12);
            assert_eq!(t.outcome.bit_width, 2);
            assert!((t.probability - 0.25).abs() < 1e-12);
        }
    }

    #[test]
    fn basis_input_comes_out_unchanged() {
        let (ch, basis, v) = w1_setup();
        let input = PureState::basis_state(vec![Label::A], 0).unwrap();
        let t = run_session(&ch, &basis, &v, &input, 3).unwrap();
        let out = t.final_amps();
        assert!((out[0].norm() - 1.0).abs() < 1e-12);
        assert!(out[1].norm() < 1e-12);
        assert!((t.fidelity - 1.0).abs() < 1e-12);
    }

    #[test]
    fn perfect_distribution_is_flat_quarter() {
        let (ch, basis, _) = w1_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let input = haar_qubit(&mut rng);
        let p = outcome_distribution(&ch, &basis, &input).unwrap();
        for (i, pi) in p.iter().enumerate() {
            let want = if i < 4 { 0.25 } else { 0.0 };
            assert!((pi - want).abs() < 1e-12, "p[{i}] = {pi}");
        }
    }

    #[test]
    fn product_channel_outcome_is_certain() {
        let ch = PureState::basis_state(CHANNEL_LABELS.to_vec(), 0).unwrap();
        let input = PureState::basis_state(vec![Label::A], 0).unwrap();
        let p = outcome_distribution(&ch, &MeasurementBasis::computational(), &input).unwrap();
        assert!((p[0] - 1.0).abs() < 1e-15);
        assert!(p[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn non_unitary_outcome_is_refused() {
        let ch = PureState::basis_state(CHANNEL_LABELS.to_vec(), 0).unwrap();
        let basis = MeasurementBasis::computational();
        let v = classify(&extract_operators(&ch, &basis).unwrap(), 1e-10);
        let input = PureState::basis_state(vec![Label::A], 0).unwrap();
        assert!(matches!(
            run_session(&ch, &basis, &v, &input, 0),
            Err(Error::NotPerfect(_))
        ));
        assert!(matches!(
            batch_fidelity(&ch, &basis, &v, 10, 0),
            Err(Error::NotPerfect(_))
        ));
    }

    #[test]
    fn deterministic_given_seed() {
        let (ch, basis, v) = w1_setup();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let input = haar_qubit(&mut rng);
        let a = run_session(&ch, &basis, &v, &input, 1234).unwrap();
        let b = run_session(&ch, &basis, &v, &input, 1234).unwrap();
        assert_eq!(a, b);
        let t = Teleporter::new(&ch, &basis, v).unwrap();
        assert_eq!(
            t.run_shots(&input, 200, 77, Execution::Sequential).unwrap(),
            t.run_shots(&input, 200, 77, Execution::Parallel).unwrap()
        );
    }

    #[test]
    fn empty_batch() {
        let (ch, basis, v) = ghz_setup();
        assert_eq!(
            batch_fidelity(&ch, &basis, &v, 0, 1),
            Err(Error::EmptyBatch)
        );
    }

    #[test]
    fn message_round_trip() {
        let (_, _, v) = ghz_setup();
        for i in 1..=4 {
            let m = ClassicalMessage::encode(i, &v);
            assert_eq!(m.bit_width, 2);
            assert_eq!(m.encoded_bits as usize, i - 1);
            assert_eq!(
                ClassicalMessage::decode(m.encoded_bits, m.bit_width, &v),
                Some(i)
            );
        }
        let mut imperfect = v.clone();
        imperfect.perfect = false;
        for i in 1..=8 {
            let m = ClassicalMessage::encode(i, &imperfect);
            assert_eq!(m.bit_width, 3);
            assert_eq!(
                ClassicalMessage::decode(m.encoded_bits, m.bit_width, &imperfect),
                Some(i)
            );
        }
    }

    #[test]
    fn input_must_be_qubit_a() {
        let (ch, basis, _) = ghz_setup();
        let wrong = PureState::basis_state(vec![Label::Three], 0).unwrap();
        assert!(matches!(
            outcome_distribution(&ch, &basis, &wrong),
            Err(Error::LabelMismatch(_))
        ));
    }

    #[test]
    fn haar_inputs_spread_over_sphere() {
        // ⟨|α|²⟩ = 1/2 for Haar qubits
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let n = 20_000;
        let mean: f64 = (0..n)
            .map(|_| haar_qubit(&mut rng).amps()[0].norm_sqr())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.01);
    }
}
