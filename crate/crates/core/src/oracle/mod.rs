//! Independent numerical oracles: adaptive quadrature, a finite-difference
//! Sturm-Liouville eigen-solver, high-order ODE residuals and flat-limit
//! studies. Nothing here evaluates the closed-form spectra or wavefunctions.

pub mod eigen;
pub mod limits;
pub mod quadrature;
pub mod stencil;

pub use eigen::{
    angular_problem, count_bound_levels, solve, solve_angular, solve_quasi_radial, EigenResult, GridOptions,
    QuasiRadialChannel, SolveOptions, SturmLiouvilleProblem, Tridiagonal,
};
pub use limits::{limit_study, wavefunction_limit, LimitReport, LimitRow};
pub use quadrature::{gauss_legendre, integrate, integrate_pieces, integrate_semi_infinite, QuadResult, Tolerance};
pub use stencil::{ode_residual, OdeResidual, Spacing};
