#![allow(dead_code)]

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use telecanon_core::channels::{CanonicalParams1, CanonicalParams2, CHANNEL_LABELS};
use telecanon_core::qmath::{Label, Matrix2, PureState};

pub fn normal_c<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_state<R: Rng>(rng: &mut R, labels: Vec<Label>) -> PureState {
    let dim = 1 << labels.len();
    let amps: Vec<Complex64> = (0..dim).map(|_| normal_c(rng)).collect();
    PureState::unnormalized(labels, amps)
        .unwrap()
        .normalize()
        .unwrap()
}

pub fn random_channel<R: Rng>(rng: &mut R) -> PureState {
    random_state(rng, CHANNEL_LABELS.to_vec())
}

pub fn random_params1<R: Rng>(rng: &mut R) -> CanonicalParams1 {
    let r = FRAC_1_SQRT_2 * rng.random::<f64>().sqrt();
    let t = rng.random::<f64>() * TAU;
    CanonicalParams1::new(
        r * t.cos(),
        r * t.sin(),
        rng.random::<f64>() * TAU,
        rng.random::<f64>() * TAU,
        rng.random::<f64>() * TAU,
    )
}

pub fn random_params2<R: Rng>(rng: &mut R) -> CanonicalParams2 {
    let lim = FRAC_1_SQRT_2;
    CanonicalParams2::new(
        rng.random_range(-lim..=lim),
        rng.random_range(-lim..=lim),
        rng.random::<f64>() * TAU,
        rng.random::<f64>() * TAU,
        rng.random::<f64>() * TAU,
    )
}

/// Boundary points of form 1: a² + b² = 1/2, a = b = 0, pure GHZ limit.
pub fn boundary_params1() -> Vec<CanonicalParams1> {
    let h = FRAC_1_SQRT_2;
    vec![
        CanonicalParams1::new(h, 0.0, 0.0, 0.0, 0.0),
        CanonicalParams1::new(0.0, h, 0.0, 0.0, 0.0),
        CanonicalParams1::new(-h, 0.0, 1.0, 2.0, 3.0),
        CanonicalParams1::new(0.5, 0.5, 0.3, 0.2, 0.1),
        CanonicalParams1::new(0.0, 0.0, 0.0, 0.0, 0.0),
        CanonicalParams1::new(0.0, 0.0, 1.1, -0.4, 2.7),
    ]
}

pub fn boundary_params2() -> Vec<CanonicalParams2> {
    let h = FRAC_1_SQRT_2;
    vec![
        CanonicalParams2::new(h, 0.5, 0.0, 0.0, 0.0),
        CanonicalParams2::new(h, 0.0, 0.0, 0.0, 0.0),
        CanonicalParams2::new(0.0, h, 0.0, 0.0, 0.0),
        CanonicalParams2::new(h, h, 0.4, 0.5, 0.6),
        CanonicalParams2::new(-h, -h, 0.0, 0.0, 0.0),
        CanonicalParams2::new(0.0, 0.0, 0.0, 0.0, 0.0),
    ]
}

/// Haar-ish random 2×2 unitary `e^{iφ} [[α, −β̄], [β, ᾱ]]`.
pub fn random_unitary<R: Rng>(rng: &mut R) -> Matrix2 {
    let (a, b) = (normal_c(rng), normal_c(rng));
    let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / n, b / n);
    let ph = Complex64::from_polar(1.0, rng.random::<f64>() * TAU);
    Matrix2([[a * ph, -b.conj() * ph], [b * ph, a.conj() * ph]])
}

/// Apply a single-qubit operator to qubit `pos` (0 = most significant) of a 3-qubit vector.
pub fn apply_local(amps: &[Complex64], u: &Matrix2, pos: usize) -> Vec<Complex64> {
    let shift = 2 - pos;
    let mut out = vec![Complex64::ZERO; 8];
    for (idx, z) in amps.iter().enumerate() {
        let bit = (idx >> shift) & 1;
        for row in 0..2 {
            let target = (idx & !(1 << shift)) | (row << shift);
            out[target] += u.get(row, bit) * z;
        }
    }
    out
}
