//! Grid sweeps over the `(a, b)` region of either canonical family.
//!
//! Points are evaluated independently, so the sweep is a data-parallel map;
//! results come back in grid order regardless of [`Execution`].

use std::f64::consts::{FRAC_1_SQRT_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bases::{build_basis_form1, build_basis_form2, verify_basis};
use crate::channels::{build_form1, build_form2, CanonicalParams1, CanonicalParams2};
use crate::diagnostics::bob_reduced_state;
use crate::error::{Error, Result};
use crate::extractor::{classify, extract_operators};
use crate::par::Execution;
use crate::qmath::von_neumann_entropy;

/// Distance kept from the constraint boundaries.
pub const BOUNDARY_MARGIN: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "1")]
    Form1,
    #[serde(rename = "2")]
    Form2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub family: Family,
    /// grid points per axis, at least 2
    pub grid: usize,
    pub random_phases: bool,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub lambda: f64,
    pub gamma: f64,
    pub perfect: bool,
    pub canonical_corrections: bool,
    pub max_unitary_residual: f64,
    pub max_zero_residual: f64,
    pub canonical_residual: f64,
    pub gram_deviation: f64,
    pub completeness_deviation: f64,
    pub operator_completeness_deviation: f64,
    pub rho3_deviation: f64,
    pub entropy_bits: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepSummary {
    pub points: usize,
    pub perfect_points: usize,
    pub max_unitary_residual: f64,
    pub max_zero_residual: f64,
    pub max_canonical_residual: f64,
    pub max_gram_deviation: f64,
    pub max_completeness_deviation: f64,
    pub max_operator_completeness_deviation: f64,
    pub max_rho3_deviation: f64,
    pub max_entropy_error: f64,
}

impl SweepSummary {
    pub fn all_perfect(&self) -> bool {
        self.points > 0 && self.perfect_points == self.points
    }
}

/// `(a, b)` pairs of the uniform `grid × grid` lattice inside the family's region.
pub fn grid_points(family: Family, grid: usize) -> Result<Vec<(f64, f64)>> {
    if grid < 2 {
        return Err(Error::InvalidParams(format!(
            "grid needs at least 2 points per axis, got {grid}"
        )));
    }
    let lim = FRAC_1_SQRT_2 - BOUNDARY_MARGIN;
    let step = 2.0 * lim / (grid - 1) as f64;
    let axis: Vec<f64> = (0..grid).map(|k| -lim + step * k as f64).collect();
    let mut points = Vec::with_capacity(grid * grid);
    for &a in &axis {
        for &b in &axis {
            let inside = match family {
                Family::Form1 => a * a + b * b <= 0.5 - BOUNDARY_MARGIN,
                Family::Form2 => true,
            };
            if inside {
                points.push((a, b));
            }
        }
    }
    Ok(points)
}

fn evaluate(family: Family, a: f64, b: f64, phases: [f64; 3], tol: f64) -> Result<SweepPoint> {
    let [delta, lambda, gamma] = phases;
    let (channel, basis) = match family {
        Family::Form1 => {
            let p = CanonicalParams1::new(a, b, delta, lambda, gamma);
            (build_form1(&p)?, build_basis_form1(&p)?)
        }
        Family::Form2 => {
            let p = CanonicalParams2::new(a, b, delta, lambda, gamma);
            (build_form2(&p)?, build_basis_form2(&p)?)
        }
    };
    let basis_report = verify_basis(&basis, tol)?;
    let ex = extract_operators(&channel, &basis)?;
    let verdict = classify(&ex, tol);
    let canonical_residual = if verdict.perfect {
        verdict.canonical_correction_residual()?
    } else {
        f64::INFINITY
    };
    let rho = bob_reduced_state(&channel)?;
    Ok(SweepPoint {
        a,
        b,
        delta,
        lambda,
        gamma,
        perfect: verdict.perfect,
        canonical_corrections: canonical_residual <= tol,
        max_unitary_residual: verdict.max_unitary_residual,
        max_zero_residual: verdict.max_zero_residual,
        canonical_residual,
        gram_deviation: basis_report.max_gram_deviation,
        completeness_deviation: basis_report.max_completeness_deviation,
        operator_completeness_deviation: ex.completeness_deviation(),
        rho3_deviation: rho.max_deviation_from_maximally_mixed(),
        entropy_bits: von_neumann_entropy(&rho)?,
    })
}

/// Evaluate every grid point. Random phases for point `k` come from seed `seed + k`.
pub fn run_sweep(cfg: &SweepConfig, exec: Execution) -> Result<Vec<SweepPoint>> {
    let points = grid_points(cfg.family, cfg.grid)?;
    exec.map(points.len(), |k| {
        let (a, b) = points[k];
        let phases = if cfg.random_phases {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(k as u64));
            [0; 3].map(|_| rng.random::<f64>() * TAU)
        } else {
            [0.0; 3]
        };
        evaluate(cfg.family, a, b, phases, cfg.tol)
    })
    .into_iter()
    .collect()
}

pub fn summarize(points: &[SweepPoint]) -> SweepSummary {
    let max = |f: fn(&SweepPoint) -> f64| points.iter().map(f).fold(0.0, f64::max);
    SweepSummary {
        points: points.len(),
        perfect_points: points.iter().filter(|p| p.perfect).count(),
        max_unitary_residual: max(|p| p.max_unitary_residual),
        max_zero_residual: max(|p| p.max_zero_residual),
        max_canonical_residual: max(|p| p.canonical_residual),
        max_gram_deviation: max(|p| p.gram_deviation),
        max_completeness_deviation: max(|p| p.completeness_deviation),
        max_operator_completeness_deviation: max(|p| p.operator_completeness_deviation),
        max_rho3_deviation: max(|p| p.rho3_deviation),
        max_entropy_error: max(|p| (p.entropy_bits - 1.0).abs()),
    }
}
