use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::{log_gamma, log_gamma_signed};
use crate::error::{Error, Result};

/// Closed form of `∫_0^π sin^α(t) e^{iβt} dt` for α > 0:
/// `π Γ(1+α) e^{iπβ/2} / (2^α Γ(1+(α+β)/2) Γ(1+(α-β)/2))`.
pub fn sine_power_integral(alpha: f64, beta: f64) -> Result<Complex64> {
    if !(alpha > 0.0) || !beta.is_finite() {
        return Err(Error::domain(
            "sine_power_integral",
            format!("alpha = {alpha} must be positive"),
        ));
    }
    let den1 = log_gamma_signed(1.0 + 0.5 * (alpha + beta));
    let den2 = log_gamma_signed(1.0 + 0.5 * (alpha - beta));
    let (Ok((l1, s1)), Ok((l2, s2))) = (den1, den2) else {
        // 1/Γ vanishes at a pole
        return Ok(Complex64::new(0.0, 0.0));
    };
    let modulus = (PI.ln() + log_gamma(1.0 + alpha)? - alpha * 2f64.ln() - l1 - l2).exp() * s1 * s2;
    Ok(Complex64::from_polar(1.0, 0.5 * PI * beta) * modulus)
}
