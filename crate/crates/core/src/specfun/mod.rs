//! Special functions: real and complex log-gamma, Pochhammer symbols,
//! terminating hypergeometric series and Jacobi polynomials. No external
//! math library is used.

pub mod gamma;
pub mod integrals;
pub mod jacobi;
pub mod series;

pub use gamma::{
    abs_gamma_complex, ln_abs_gamma_complex, ln_factorial, log_gamma, log_gamma_complex, log_gamma_signed, pochhammer,
    pochhammer_complex, recip_gamma, sin_pi,
};
pub use integrals::sine_power_integral;
pub use jacobi::jacobi_p;
pub use series::{
    hyp1f1_terminating, hyp2f1_terminating, hyp2f1_terminating_real, hyp3f2_unit_terminating, CompensatedComplexSum,
    CompensatedSum, SeriesSum, CONDITION_LIMIT,
};
