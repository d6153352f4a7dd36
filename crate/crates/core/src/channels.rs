//! Three-qubit channel states shared between Alice (qubits 1, 2) and Bob (qubit 3).

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmath::{c, phase, Label, PureState, Tolerances};

pub const CHANNEL_LABELS: [Label; 3] = [Label::One, Label::Two, Label::Three];

// Slack on the square-root arguments so boundary points survive rounding.
const PARAM_SLACK: f64 = 1e-12;

/// `a|000⟩ + b e^{iδ}|010⟩ + √(½−a²−b²) e^{iλ}|100⟩ + (√2/2) e^{iγ}|111⟩`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams1 {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub lambda: f64,
    pub gamma: f64,
}

/// `a|001⟩ + b e^{iδ}|010⟩ + √(½−b²) e^{iλ}|100⟩ + √(½−a²) e^{iγ}|111⟩`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CanonicalParams2 {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub lambda: f64,
    pub gamma: f64,
}

fn check_finite(values: &[f64]) -> Result<()> {
    if values.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::InvalidParams("parameters must be finite".into()))
    }
}

fn sqrt_clamped(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

impl CanonicalParams1 {
    pub fn new(a: f64, b: f64, delta: f64, lambda: f64, gamma: f64) -> Self {
        Self {
            a,
            b,
            delta,
            lambda,
            gamma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_finite(&[self.a, self.b, self.delta, self.lambda, self.gamma])?;
        let r = self.a * self.a + self.b * self.b;
        if r > 0.5 + PARAM_SLACK {
            return Err(Error::InvalidParams(format!(
                "form 1 needs a² + b² ≤ 1/2, got {r}"
            )));
        }
        Ok(())
    }

    /// `√(½ − a² − b²)`, the weight on `|100⟩`.
    pub fn third(&self) -> f64 {
        sqrt_clamped(0.5 - self.a * self.a - self.b * self.b)
    }
}

impl CanonicalParams2 {
    pub fn new(a: f64, b: f64, delta: f64, lambda: f64, gamma: f64) -> Self {
        Self {
            a,
            b,
            delta,
            lambda,
            gamma,
        }
    }

    pub fn validate(&self) -> Result<()> {
        check_finite(&[self.a, self.b, self.delta, self.lambda, self.gamma])?;
        if self.a * self.a > 0.5 + PARAM_SLACK || self.b * self.b > 0.5 + PARAM_SLACK {
            return Err(Error::InvalidParams(format!(
                "form 2 needs a² ≤ 1/2 and b² ≤ 1/2, got a² = {}, b² = {}",
                self.a * self.a,
                self.b * self.b
            )));
        }
        Ok(())
    }

    /// `√(½ − a²)`, the weight on `|111⟩`.
    pub fn sa(&self) -> f64 {
        sqrt_clamped(0.5 - self.a * self.a)
    }

    /// `√(½ − b²)`, the weight on `|100⟩`.
    pub fn sb(&self) -> f64 {
        sqrt_clamped(0.5 - self.b * self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum NamedChannel {
    /// `(|000⟩ + e^{iγ}|111⟩)/√2`
    Ghz { gamma: f64 },
    /// `(|100⟩ + |010⟩ + √2|001⟩)/2`
    W1,
    /// `(|001⟩ + |100⟩)/√2 = |0⟩₂ ⊗ Bell₁₃`
    BellEmbedded,
}

impl NamedChannel {
    /// Parameters of the canonical family this channel belongs to.
    pub fn family(&self) -> ChannelSpec {
        match *self {
            NamedChannel::Ghz { gamma } => {
                ChannelSpec::Form1(CanonicalParams1::new(FRAC_1_SQRT_2, 0.0, 0.0, 0.0, gamma))
            }
            NamedChannel::W1 => {
                ChannelSpec::Form2(CanonicalParams2::new(FRAC_1_SQRT_2, 0.5, 0.0, 0.0, 0.0))
            }
            NamedChannel::BellEmbedded => {
                ChannelSpec::Form2(CanonicalParams2::new(FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelSpec {
    General { amps: Vec<[f64; 2]> },
    Form1(CanonicalParams1),
    Form2(CanonicalParams2),
    Named(NamedChannel),
}

impl ChannelSpec {
    pub fn general(amps: [Complex64; 8]) -> Self {
        ChannelSpec::General {
            amps: amps.iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn realize(&self) -> Result<PureState> {
        match self {
            ChannelSpec::General { amps } => {
                let amps: [Complex64; 8] = amps
                    .iter()
                    .map(|p| c(p[0], p[1]))
                    .collect::<Vec<_>>()
                    .try_into()
                    .map_err(|v: Vec<_>| {
                        Error::InvalidParams(format!(
                            "general channel needs 8 amplitudes, got {}",
                            v.len()
                        ))
                    })?;
                build_general(amps)
            }
            ChannelSpec::Form1(p) => build_form1(p),
            ChannelSpec::Form2(p) => build_form2(p),
            ChannelSpec::Named(n) => Ok(build_named(n)),
        }
    }
}

/// Channel with amplitude `amps[k]` on `|q1 q2 q3⟩`, `k = 4q1 + 2q2 + q3`.
pub fn build_general(amps: [Complex64; 8]) -> Result<PureState> {
    PureState::with_tolerance(
        CHANNEL_LABELS.to_vec(),
        amps.to_vec(),
        Tolerances::default().norm,
    )
}

fn from_sparse(entries: [(usize, Complex64); 4]) -> Result<PureState> {
    let mut amps = vec![Complex64::ZERO; 8];
    for (k, z) in entries {
        amps[k] = z;
    }
    PureState::new(CHANNEL_LABELS.to_vec(), amps)
}

pub fn build_form1(p: &CanonicalParams1) -> Result<PureState> {
    p.validate()?;
    from_sparse([
        (0b000, c(p.a, 0.0)),
        (0b010, p.b * phase(p.delta)),
        (0b100, p.third() * phase(p.lambda)),
        (0b111, FRAC_1_SQRT_2 * phase(p.gamma)),
    ])
}

pub fn build_form2(p: &CanonicalParams2) -> Result<PureState> {
    p.validate()?;
    from_sparse([
        (0b001, c(p.a, 0.0)),
        (0b010, p.b * phase(p.delta)),
        (0b100, p.sb() * phase(p.lambda)),
        (0b111, p.sa() * phase(p.gamma)),
    ])
}

pub fn build_named(name: &NamedChannel) -> PureState {
    name.family()
        .realize()
        .expect("named channels sit inside their parameter regions")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expect_amps(state: &PureState, expected: &[(usize, Complex64)], tol: f64) {
        for k in 0..8 {
            let want = expected
                .iter()
                .find(|(i, _)| *i == k)
                .map_or(Complex64::ZERO, |(_, z)| *z);
            assert!(
                (state.amps()[k] - want).norm() <= tol,
                "index {k:03b}: {} vs {want}",
                state.amps()[k]
            );
        }
    }

    #[test]
    fn general_basis_state() {
        let mut amps = [Complex64::ZERO; 8];
        amps[0] = Complex64::ONE;
        let s = build_general(amps).unwrap();
        assert_eq!(s.labels(), &CHANNEL_LABELS);
        expect_amps(&s, &[(0, Complex64::ONE)], 0.0);
    }

    #[test]
    fn general_ghz() {
        let mut amps = [Complex64::ZERO; 8];
        amps[0] = c(FRAC_1_SQRT_2, 0.0);
        amps[7] = c(FRAC_1_SQRT_2, 0.0);
        let s = build_general(amps).unwrap();
        assert_eq!(s, build_named(&NamedChannel::Ghz { gamma: 0.0 }));
    }

    #[test]
    fn general_not_normalized() {
        let mut amps = [Complex64::ZERO; 8];
        amps[3] = c(0.9f64.sqrt(), 0.0);
        assert!(matches!(
            build_general(amps),
            Err(Error::NotNormalized { .. })
        ));
    }

    #[test]
    fn form1_formula() {
        let s = build_form1(&CanonicalParams1::new(0.3, 0.4, 0.0, 0.0, 0.0)).unwrap();
        expect_amps(
            &s,
            &[
                (0, c(0.3, 0.0)),
                (2, c(0.4, 0.0)),
                (4, c(0.5, 0.0)),
                (7, c(FRAC_1_SQRT_2, 0.0)),
            ],
            1e-15,
        );
    }

    #[test]
    fn form1_ghz_limit() {
        let gamma = 0.9;
        let s = build_form1(&CanonicalParams1::new(FRAC_1_SQRT_2, 0.0, 0.3, 1.7, gamma)).unwrap();
        expect_amps(
            &s,
            &[
                (0, c(FRAC_1_SQRT_2, 0.0)),
                (7, FRAC_1_SQRT_2 * phase(gamma)),
            ],
            1e-15,
        );
    }

    #[test]
    fn form1_rejects_outside_disc() {
        let r = build_form1(&CanonicalParams1::new(0.6, 0.5, 0.0, 0.0, 0.0));
        assert!(matches!(r, Err(Error::InvalidParams(_))));
        let r = build_form1(&CanonicalParams1::new(0.1, 0.1, f64::NAN, 0.0, 0.0));
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn form1_boundary_has_empty_third_term() {
        let s = build_form1(&CanonicalParams1::new(
            0.6,
            (0.5f64 - 0.36).sqrt(),
            0.0,
            0.4,
            0.0,
        ))
        .unwrap();
        assert_eq!(s.amps()[4].norm(), 0.0);
    }

    #[test]
    fn form2_w1_and_bell() {
        let w = build_form2(&CanonicalParams2::new(FRAC_1_SQRT_2, 0.5, 0.0, 0.0, 0.0)).unwrap();
        expect_amps(
            &w,
            &[
                (1, c(FRAC_1_SQRT_2, 0.0)),
                (2, c(0.5, 0.0)),
                (4, c(0.5, 0.0)),
            ],
            1e-15,
        );
        assert_eq!(w, build_named(&NamedChannel::W1));

        let bell = build_form2(&CanonicalParams2::new(FRAC_1_SQRT_2, 0.0, 0.0, 0.0, 0.0)).unwrap();
        expect_amps(
            &bell,
            &[(1, c(FRAC_1_SQRT_2, 0.0)), (4, c(FRAC_1_SQRT_2, 0.0))],
            1e-15,
        );
        // qubit 2 is |0⟩: every amplitude with q2 = 1 vanishes
        for k in [2, 3, 6, 7] {
            assert_eq!(bell.amps()[k], Complex64::ZERO);
        }
    }

    #[test]
    fn form2_rejects() {
        let r = build_form2(&CanonicalParams2::new(0.8, 0.0, 0.0, 0.0, 0.0));
        assert!(matches!(r, Err(Error::InvalidParams(_))));
        let r = build_form2(&CanonicalParams2::new(0.0, -0.75, 0.0, 0.0, 0.0));
        assert!(matches!(r, Err(Error::InvalidParams(_))));
    }

    #[test]
    fn spec_round_trips_through_serde() {
        let spec = ChannelSpec::Named(NamedChannel::Ghz { gamma: 0.25 });
        let json = serde_json::to_string(&spec).unwrap();
        let back: ChannelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(spec, back);
        assert_eq!(
            back.realize().unwrap(),
            build_named(&NamedChannel::Ghz { gamma: 0.25 })
        );
    }
}
