//! Decoherence of two-component Schrödinger-cat states in a lossy,
//! zero-temperature cavity.
//!
//! The crate evaluates quadrature squeezing, photon-number statistics and
//! the Wigner function of a decaying cat from closed-form expressions, and
//! carries an independent number-basis oracle for each of them (RK4
//! integration of the damping master equation, Fock-matrix traces, and a
//! displaced-parity Wigner evaluation). [`battery`] runs all cross-checks.

pub mod battery;
pub mod cat;
pub mod decay;
pub mod error;
pub mod format;
pub mod observables;
pub mod specfun;
pub mod wigner;

pub use cat::CatState;
pub use decay::{
    density_matrix, frobenius_distance, lindblad_evolve, mixture_reference, phase_factor, truncation_n_max,
    DecayedCat, FockDensityMatrix,
};
pub use error::{Error, Result};
pub use observables::{
    decoherence_threshold_alpha, interference_decay_factor, mean_photon_number, normally_ordered_moment,
    photon_number_distribution, squeezing_ecs_closed, squeezing_factors, PhotonNumberDistribution,
    SqueezingFactors,
};
pub use wigner::{
    grid_integral, interference_contrast, negativity_volume, wigner_closed, wigner_grid, wigner_parity_oracle,
    wigner_series, GridSpec, PhasePoint, WignerGrid,
};

pub use num_complex::Complex64;
