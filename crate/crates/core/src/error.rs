use thiserror::Error;

use crate::params::Violation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain where the function is defined.
    #[error("{function}: argument outside domain ({detail})")]
    Domain { function: &'static str, detail: String },

    #[error("invalid state: {}", format_violations(.0))]
    Invalid(Vec<Violation>),

    /// The hyperboloid quasi-radial function is not normalizable for this level.
    #[error("no bound state on the hyperboloid: n + delta = {n_eff}, sigma = {sigma} (need sigma > n + delta)")]
    NoBoundState { n: f64, delta: f64, n_eff: f64, sigma: f64 },

    /// The complex hypergeometric evaluation of a real quantity left a
    /// non-negligible imaginary part.
    #[error("numeric instability: |Im|/|Re| = {imag_ratio:e}, series condition number {condition:e}")]
    NumericInstability { imag_ratio: f64, condition: f64 },

    #[error("{what} overflows double precision")]
    Range { what: &'static str },

    #[error("potential is singular at this point: {0}")]
    Singularity(String),

    /// The projective chart does not cover the antipode of the sphere.
    #[error("point is the pole of the projective chart (chi = pi)")]
    ProjectivePole,

    #[error("adaptive quadrature did not converge: estimate {estimate:e} +/- {error:e} after {intervals} intervals")]
    QuadratureFailed {
        estimate: f64,
        error: f64,
        intervals: usize,
        /// Worst remaining subintervals as `(a, b, error)`.
        trace: Vec<(f64, f64, f64)>,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("operation requires {expected:?} geometry, got {actual:?}")]
    WrongGeometry {
        expected: crate::params::Geometry,
        actual: crate::params::Geometry,
    },
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl Error {
    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}
