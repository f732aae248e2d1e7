//! Quantum spin tunneling in easy-axis molecular magnets such as Fe8.
//!
//! Two solution routes are provided for the Hamiltonian
//! `A H Jz − D Jz² + (E/2)(J₊² + J₋²)`:
//!
//! * [`spin`]: exact diagonalization in the |S, m⟩ basis (the reference);
//! * [`angle`]: an angle-variable Hamiltonian with position-dependent mass,
//!   solved in a Fourier basis.
//!
//! [`semiclassics`] holds the harmonic, WKB, KHW/MG and parabolic estimates
//! and the longitudinal-field formulas, and [`analysis`] lines all of them
//! up against the reference. Energies are in Kelvin and fields in Tesla.

pub mod analysis;
pub mod angle;
pub mod check;
pub mod error;
pub mod model;
pub mod numerics;
pub mod semiclassics;
pub mod spectrum;
pub mod spin;

pub use error::{Error, Result};
pub use model::{derive_coefficients, inverse_mass, potential, ClusterParams, EffectiveCoefficients};
pub use spectrum::{pair_doublets, BlockTag, DoubletRow, DoubletTable, Level, Method, Parity, Spectrum};
