//! Time-stepping schemes assembled from the quadrature, Caputo and spectral
//! building blocks: the Kelvin-Voigt toy transport problem on [-1,1] and the
//! fractionally dampened wave equation on the unit disk, plus the
//! almost-banded solve and the static-memory accounting they rely on.

mod toy;
mod wave;

pub use toy::{solve_toy_interval, toy_reference, ToyProblemParams};
pub use wave::{disk_wave_lhs, sensor_readout, sensor_ring, solve_disk_wave, DiskWaveParams};

use crate::banded::{BandedOp, SolveError};
use crate::caputo::CaputoError;
use crate::quadrature::QuadError;
use crate::specialfns::SpecialFnError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("quadrature construction failed: {0}")]
    Quadrature(#[from] QuadError),
    #[error("linear solve failed at step {step}: {source}")]
    Linear { step: u64, source: SolveError },
    #[error("reference solution evaluation failed: {0}")]
    SpecialFn(#[from] SpecialFnError),
    #[error("state update failed: {0}")]
    Caputo(#[from] CaputoError),
    #[error("initial condition has boundary trace {0:e} above 1e-10")]
    BoundaryTrace(f64),
    #[error("sensor at ({x}, {y}) is not strictly inside the disk")]
    SensorOutside { x: f64, y: f64 },
}

/// Decimated record of a simulation: sampled times, coefficient snapshots
/// and per-sample scalar diagnostics.
#[derive(Debug, Clone)]
pub struct SimulationOutput<C> {
    pub times: Vec<f64>,
    pub snapshots: Vec<C>,
    pub max_abs_coeff: Vec<f64>,
    pub boundary_residual: Vec<f64>,
    pub sensors: Option<SensorTrace>,
}

/// Point-probe traces: one row of readouts per sampled time.
#[derive(Debug, Clone, PartialEq)]
pub struct SensorTrace {
    pub positions: Vec<(f64, f64)>,
    pub times: Vec<f64>,
    pub rows: Vec<Vec<f64>>,
}

/// Which state a memory figure describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// the Caputo engine alone: ψ (L·K) + rule (2L) + f^{n-1} and f^n (2K)
    CaputoOnly,
    /// a second-order-in-time scheme sharing f^{n-1} with the engine:
    /// one extra solution vector
    Wave,
}

/// Float count of the live solver state for K coefficients and L quadrature
/// points; independent of the number of steps taken.
pub fn memory_report(k: usize, l: usize, scheme: SchemeKind) -> usize {
    match scheme {
        SchemeKind::CaputoOnly => l * (2 + k) + 2 * k,
        SchemeKind::Wave => l * (2 + k) + 3 * k,
    }
}

/// Solve a banded system with optional dense border rows replacing its top
/// rows; banded LU with partial pivoting plus a Schur complement over the
/// border-resolved columns.
pub fn bordered_banded_solve(op: &BandedOp, rhs: &[f64]) -> Result<Vec<f64>, SolverError> {
    op.solve(rhs).map_err(|source| SolverError::Linear { step: 0, source })
}
