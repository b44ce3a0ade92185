//! Static-memory ("history-free") solvers for time-fractional PDEs with
//! Caputo derivatives of order α ∈ (0,1).
//!
//! The Caputo derivative is replaced by a finite sum of exponentially
//! decaying auxiliary functions induced by Gaussian quadrature, so that
//! advancing a fractional PDE needs a fixed amount of state regardless of
//! the number of time steps. Space is discretized with sparse spectral
//! methods: banded Jacobi-polynomial operators on the interval and
//! generalized Zernike bases on the unit disk.

pub mod banded;
pub mod caputo;
pub mod disk;
pub mod orthopoly1d;
pub mod quadrature;
pub mod solvers;
pub mod specialfns;

pub use banded::{AlmostBandedLu, BandedOp, SolveError};
pub use caputo::{caputo_direct_oracle, caputo_scalar_coeff, em1_ratio, psi_fulldomain_oracle, AuxState, CaputoError};
pub use disk::{disk_analyze, disk_conversion_op, disk_laplacian_op, disk_synth, zernike_radial_eval, DiskBasis, DiskCoeffs, DiskError, DiskLayout};
pub use orthopoly1d::{analyze, conversion_op, diff_op, eval_row, jacobi_eval, synth, BasisError, CoeffVec, Jacobi};
pub use quadrature::{
    alpha_bar, build_rule, gauss_jacobi, gauss_laguerre, CaputoRule, GaussRule, QuadError,
    QuadMethod, WeightFamily,
};
pub use solvers::{bordered_banded_solve, memory_report, sensor_readout, solve_disk_wave, solve_toy_interval, toy_reference, DiskWaveParams, SchemeKind, SensorTrace, SimulationOutput, SolverError, ToyProblemParams};
pub use specialfns::{erf, lgamma, mittag_leffler, MlParams, SpecialFnError};
