//! Closed-form spectra and wavefunctions of the generalized MICZ-Kepler
//! system in flat space, on the sphere S³ and on the hyperboloid H³, with
//! independent numerical oracles (adaptive quadrature and a finite-difference
//! Sturm-Liouville eigen-solver) for checking every analytic formula.

pub mod angular;
pub mod error;
pub mod flat;
pub mod geometry;
pub mod hyperboloid;
pub mod oracle;
pub mod params;
pub mod specfun;
pub mod sphere;
pub mod state;
pub mod verify;

pub use error::{Error, Result};
pub use params::{
    derive_notation, validate, DerivedNotation, Geometry, HalfInt, PhysParams, QuantumNumbers, Violation,
};
