//! Dissipative dynamics of two coupled qubits with counter-rotating
//! interaction, each damped by its own bosonic thermal reservoir.
//!
//! The system Hamiltonian is diagonalized in closed form into the dressed
//! basis `|a>, |b>, |c>, |d>`. All dissipative transitions happen between
//! dressed states at one of two Bohr frequencies, which gives a Markovian
//! master equation with eight scalar coefficients ([`LindbladRates`]).
//!
//! The crate provides:
//! - [`model`]: Hamiltonian, dressed basis, basis change.
//! - [`rates`]: bath spectra, KMS excitation rates, Lindblad coefficients.
//! - [`dynamics`]: the generator, an adaptive Runge-Kutta integrator, the
//!   analytic zero-temperature solution and the stationary state.
//! - [`entanglement`]: initial states and the Wootters concurrence.
//! - [`cli`]: JSON scenarios, sweeps and CSV output.

// `!(x > 0.0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod dynamics;
pub mod eigen;
pub mod entanglement;
mod error;
pub mod model;
pub mod rates;
pub mod state;

pub use dynamics::{
    analytic_preconditions, analytic_zero_t, generator_apply, integrate, stationary_state,
    uniform_grid, Frame, IntegratorOptions, Observables, Trajectory,
};
pub use eigen::brute_force_eigensystem;
pub use entanglement::{
    build_initial, concurrence, concurrence_series, wootters_roots, InitialFamily,
    InitialStateSpec,
};
pub use error::{Error, Result};
pub use model::{
    computational_to_dressed, diagonalize, dressed_to_computational, hamiltonian_matrix,
    DressedBasis, ModelParams,
};
pub use rates::{kms_rate, lindblad_rates, BathSpectrum, LindbladRates};
pub use state::{Basis, DensityMatrix};

/// Complex scalar used for density-matrix entries.
pub type C64 = num_complex::Complex64;
