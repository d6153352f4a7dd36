use std::ops::{Add, Mul};

use num_complex::Complex64;

use super::c;

/// 2×2 complex operator on one qubit; `entries[row][col]` with row = output bit, col = input bit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Matrix2(pub [[Complex64; 2]; 2]);

/// Outcome of a numeric predicate together with the quantity that was thresholded.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub residual: f64,
}

impl Matrix2 {
    pub const ZERO: Matrix2 = Matrix2([[Complex64::ZERO; 2]; 2]);
    pub const IDENTITY: Matrix2 = Matrix2([
        [Complex64::ONE, Complex64::ZERO],
        [Complex64::ZERO, Complex64::ONE],
    ]);

    pub fn from_real(m: [[f64; 2]; 2]) -> Self {
        Matrix2([
            [c(m[0][0], 0.0), c(m[0][1], 0.0)],
            [c(m[1][0], 0.0), c(m[1][1], 0.0)],
        ])
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Matrix2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    pub fn scale(&self, z: Complex64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|e| *e *= z);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Matrix2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Frobenius inner product `tr(self† other)`.
    pub fn frobenius_inner(&self, other: &Matrix2) -> Complex64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(x, y)| x.conj() * y)
            .sum()
    }

    /// `min_θ max|self − e^{iθ} target|`, with θ taken from the Frobenius overlap.
    pub fn phase_aligned_residual(&self, target: &Matrix2) -> f64 {
        let overlap = target.frobenius_inner(self);
        let phase = if overlap.norm() > 0.0 {
            overlap / overlap.norm()
        } else {
            Complex64::ONE
        };
        self.max_abs_diff(&target.scale(phase))
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, rhs: Matrix2) -> Matrix2 {
        let (a, b) = (&self.0, &rhs.0);
        Matrix2(std::array::from_fn(|r| {
            std::array::from_fn(|col| a[r][0] * b[0][col] + a[r][1] * b[1][col])
        }))
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, rhs: Matrix2) -> Matrix2 {
        let mut out = self;
        out.0
            .iter_mut()
            .flatten()
            .zip(rhs.0.iter().flatten())
            .for_each(|(x, y)| *x += y);
        out
    }
}

/// Residual is the max-abs entry of `m†m − I`.
pub fn is_unitary(m: &Matrix2, tol: f64) -> Verdict {
    let residual = (m.adjoint() * *m).max_abs_diff(&Matrix2::IDENTITY);
    Verdict {
        holds: residual <= tol,
        residual,
    }
}

/// Residual is the max-abs entry of `m`.
pub fn is_zero(m: &Matrix2, tol: f64) -> Verdict {
    let residual = m.max_abs();
    Verdict {
        holds: residual <= tol,
        residual,
    }
}
