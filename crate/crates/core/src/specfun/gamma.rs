use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

// Lanczos approximation, g = 7, n = 9 (Godfrey's coefficients).
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(z) for z ≥ 1/2 via the Lanczos sum.
fn lanczos_ln_gamma(z: f64) -> f64 {
    let x = z - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    LN_SQRT_2PI + (x + 0.5) * t.ln() - t + acc.ln()
}

fn lanczos_ln_gamma_complex(z: Complex64) -> Complex64 {
    let x = z - 1.0;
    let mut acc = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (i, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (x + 0.5) * t.ln() - t + acc.ln() + LN_SQRT_2PI
}

/// ln Γ(x) for x > 0.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(
            "log_gamma",
            format!("x = {x} must be positive and finite"),
        ));
    }
    if x < 0.5 {
        Ok(lanczos_ln_gamma(x + 1.0) - x.ln())
    } else {
        Ok(lanczos_ln_gamma(x))
    }
}

/// `(ln|Γ(x)|, sign Γ(x))` for any real x that is not a pole.
pub fn log_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if !x.is_finite() || (x <= 0.0 && x.fract() == 0.0) {
        return Err(Error::domain("log_gamma_signed", format!("x = {x} is a pole of Γ")));
    }
    if x > 0.0 {
        return Ok((log_gamma(x)?, 1.0));
    }
    // Γ(x) Γ(1-x) = π / sin(πx)
    let s = sin_pi(x);
    Ok((PI.ln() - s.abs().ln() - log_gamma(1.0 - x)?, s.signum()))
}

/// 1/Γ(x), entire; zero at the poles of Γ.
pub fn recip_gamma(x: f64) -> f64 {
    match log_gamma_signed(x) {
        Ok((l, sign)) => sign * (-l).exp(),
        Err(_) => 0.0,
    }
}

/// sin(πx) with exact argument reduction.
pub fn sin_pi(x: f64) -> f64 {
    let mut r = x - 2.0 * (0.5 * x).round();
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// Principal-sheet-agnostic ln Γ(z) for Re z > 0. Only `exp` of the result
/// and its real part are branch independent.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if !(z.re > 0.0) || !z.is_finite() {
        return Err(Error::domain(
            "log_gamma_complex",
            format!("Re z = {} must be positive", z.re),
        ));
    }
    if z.re < 0.5 {
        Ok(lanczos_ln_gamma_complex(z + 1.0) - z.ln())
    } else {
        Ok(lanczos_ln_gamma_complex(z))
    }
}

/// ln |Γ(x + iy)| for x > 0.
pub fn ln_abs_gamma_complex(x: f64, y: f64) -> Result<f64> {
    if y == 0.0 {
        return log_gamma(x).map_err(|_| Error::domain("abs_gamma_complex", format!("x = {x} must be positive")));
    }
    log_gamma_complex(Complex64::new(x, y))
        .map(|l| l.re)
        .map_err(|_| Error::domain("abs_gamma_complex", format!("x = {x} must be positive")))
}

/// |Γ(x + iy)| for x > 0.
pub fn abs_gamma_complex(x: f64, y: f64) -> Result<f64> {
    ln_abs_gamma_complex(x, y).map(f64::exp)
}

/// ln k!
pub fn ln_factorial(k: usize) -> f64 {
    if k < 2 {
        0.0
    } else {
        lanczos_ln_gamma(k as f64 + 1.0)
    }
}

pub fn pochhammer(a: f64, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (a + i as f64))
}

pub fn pochhammer_complex(a: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, i| acc * (a + i as f64))
}
