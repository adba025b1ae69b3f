//! # nlslab
//!
//! A numerical laboratory for the discretized stochastic nonlinear
//! Schrödinger channel in normalized units. The crate provides
//!
//! - mode grids, unitary frequency/time transforms and seeded Gaussian
//!   input sampling ([`grid`], [`transform`], [`sampling`]),
//! - two cross-validating integrators for the deterministic flow, a
//!   noise-injecting stochastic flow, and Hamiltonian/Jacobian probes
//!   ([`propagator`]),
//! - differential- and discrete-entropy estimators, entropy-power and
//!   sumset inequality checks, and the `log(1+SNR)` capacity bound
//!   ([`infotheory`]),
//! - reproducible experiment suites with JSON configs and CSV raw tables
//!   ([`harness`]).
//!
//! Start with the `examples/` directory: each runnable example exercises
//! one capability end to end.

pub mod grid;
pub mod harness;
pub mod infotheory;
pub mod propagator;
pub mod sampling;
pub mod transform;

pub use grid::{Ensemble, ModeGrid, Spectrum, SpectrumError, TimeSignal};
pub use propagator::{
    dispersion_step, nonlinear_step, propagate_deterministic, propagate_stochastic, ChannelParams,
    PropagatorError, Scheme,
};
pub use sampling::{sample_gaussian_input, sample_gaussian_spectrum, NoiseStream};
