//! FE-DVR solver for the one-dimensional scattering Schrödinger equation
//! `(d^2/dr^2 + k^2) psi = V psi` (or with a nonlocal kernel in place of `V psi`),
//! plus a Numerov comparator and simple round-off/cost models.
//!
//! Units: distances in fm, wave numbers in fm^-1, potentials in fm^-2.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

mod dd;
pub mod error;
pub mod errormodel;
pub mod gausslobatto;
pub mod numerov;
pub mod potentials;
pub mod scattering;
pub mod solver;

pub use error::{FedvrError, Result};
pub use gausslobatto::{AffineMap, LobattoGrid};
pub use numerov::{numerov_phase_shift, numerov_sweep, numerov_with_intervals, NumerovRun};
pub use potentials::{KernelSpec, Potential, TabulatedPotential};
pub use scattering::{
    fedvr_phase_shift, local_phase_shift, nonlocal_phase_shift, normalize_asymptotic,
    PhaseShiftResult,
};
pub use solver::{solve_mesh, solve_nonlocal, EdgeValues, Mesh, Partition, WaveSolution};

/// Reference `tan(delta)` at k = 0.5 fm^-1 for the default Morse potential on [0, 100] fm.
pub const TAN_DELTA_MORSE: f64 = 2.6994702502;
/// Reference `tan(delta)` at k = 0.5 fm^-1 for the default Woods-Saxon potential on [0, 20] fm.
pub const TAN_DELTA_WOODS_SAXON: f64 = -1.7107344227;
