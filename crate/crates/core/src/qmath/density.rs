use nalgebra::DMatrix;
use num_complex::Complex64;

use super::Tolerances;
use crate::error::{Error, Result};

/// Hermitian, unit-trace, positive semidefinite matrix of power-of-two dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    /// row-major
    entries: Vec<Complex64>,
}

impl DensityMatrix {
    pub fn from_entries(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        Self::from_entries_with(dim, entries, &Tolerances::default())
    }

    pub fn from_entries_with(
        dim: usize,
        entries: Vec<Complex64>,
        tol: &Tolerances,
    ) -> Result<Self> {
        if dim == 0 || !dim.is_power_of_two() || entries.len() != dim * dim {
            return Err(Error::InvalidDensityMatrix(format!(
                "{} entries for dimension {dim}",
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidDensityMatrix("non-finite entry".into()));
        }
        let rho = Self { dim, entries };
        let herm = rho.hermiticity_deviation();
        if herm > tol.hermitian {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let trace = rho.trace();
        if (trace.re - 1.0).abs() > tol.norm || trace.im.abs() > tol.norm {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace} ≠ 1")));
        }
        let min_eig = rho.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min_eig < -tol.predicate {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:e}"
            )));
        }
        Ok(rho)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        self.entries.chunks(self.dim).map(<[_]>::to_vec).collect()
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|k| self.get(k, k)).sum()
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let mut dev = 0.0f64;
        for r in 0..self.dim {
            for col in r..self.dim {
                dev = dev.max((self.get(r, col) - self.get(col, r).conj()).norm());
            }
        }
        dev
    }

    /// Largest entrywise modulus of `ρ − I/dim`.
    pub fn max_deviation_from_maximally_mixed(&self) -> f64 {
        let diag = 1.0 / self.dim as f64;
        let mut dev = 0.0f64;
        for r in 0..self.dim {
            for col in 0..self.dim {
                let target = if r == col { diag } else { 0.0 };
                dev = dev.max((self.get(r, col) - target).norm());
            }
        }
        dev
    }

    /// Real eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let m = DMatrix::from_row_slice(self.dim, self.dim, &self.entries);
        let mut eig: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        eig.sort_by(f64::total_cmp);
        eig
    }
}

/// Entropy in bits, `−Σ λ log₂ λ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<f64> {
    von_neumann_entropy_with(rho, &Tolerances::default())
}

pub fn von_neumann_entropy_with(rho: &DensityMatrix, tol: &Tolerances) -> Result<f64> {
    let herm = rho.hermiticity_deviation();
    let trace = rho.trace();
    if herm > tol.hermitian || (trace.re - 1.0).abs() > tol.norm || trace.im.abs() > tol.norm {
        return Err(Error::InvalidDensityMatrix(format!(
            "hermiticity deviation {herm:e}, trace {trace}"
        )));
    }
    let mut entropy = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < -tol.predicate || lambda > 1.0 + tol.predicate {
            return Err(Error::InvalidDensityMatrix(format!(
                "eigenvalue {lambda} outside [0, 1]"
            )));
        }
        let lambda = lambda.clamp(0.0, 1.0);
        // 0·log 0 := 0
        if lambda > 0.0 {
            entropy -= lambda * lambda.log2();
        }
    }
    Ok(entropy.clamp(0.0, (rho.dim as f64).log2()))
}
