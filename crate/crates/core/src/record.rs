//! Serializable mirrors of the numeric types: complex numbers as `{re, im}`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::qmath::{DensityMatrix, Matrix2, PureState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Complex64Record {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for Complex64Record {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

impl From<Complex64Record> for Complex64 {
    fn from(r: Complex64Record) -> Self {
        Complex64::new(r.re, r.im)
    }
}

pub fn amplitudes(state: &PureState) -> Vec<Complex64Record> {
    state.amps().iter().copied().map(Into::into).collect()
}

pub fn matrix2(m: &Matrix2) -> [[Complex64Record; 2]; 2] {
    m.0.map(|row| row.map(Into::into))
}

pub fn density(rho: &DensityMatrix) -> Vec<Vec<Complex64Record>> {
    rho.rows()
        .into_iter()
        .map(|row| row.into_iter().map(Into::into).collect())
        .collect()
}
