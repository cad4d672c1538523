//! Terminating hypergeometric series summed with Neumaier compensation.
//!
//! Every series here has a numerator parameter `-N`, `N` a nonnegative
//! integer, so it is a polynomial of degree `N` in its argument. Besides the
//! value each sum reports `Σ|term|`; the ratio of the two is the
//! cancellation (condition) number of the evaluation.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Condition numbers above this are flagged as ill-conditioned.
pub const CONDITION_LIMIT: f64 = 1e8;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    abs: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
        self.abs += x.abs();
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
    abs: f64,
}

impl CompensatedComplexSum {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
        self.abs += z.norm();
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }

    pub fn abs_sum(&self) -> f64 {
        self.abs
    }
}

/// A finite sum together with its cancellation diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SeriesSum<T> {
    pub value: T,
    /// Σ |term|.
    pub abs_sum: f64,
    pub terms: usize,
}

impl SeriesSum<f64> {
    pub fn condition(&self) -> f64 {
        self.abs_sum / self.value.abs()
    }

    pub fn is_ill_conditioned(&self) -> bool {
        !(self.condition() <= CONDITION_LIMIT)
    }
}

impl SeriesSum<Complex64> {
    pub fn condition(&self) -> f64 {
        self.abs_sum / self.value.norm()
    }

    pub fn is_ill_conditioned(&self) -> bool {
        !(self.condition() <= CONDITION_LIMIT)
    }
}

fn check_denominator(function: &'static str, c: Complex64, degree: usize) -> Result<()> {
    for k in 0..degree {
        let d = c + k as f64;
        if d.re == 0.0 && d.im == 0.0 {
            return Err(Error::domain(
                function,
                format!("denominator parameter {c} hits zero at term {}", k + 1),
            ));
        }
    }
    Ok(())
}

/// `1F1(-N; c; x)`.
pub fn hyp1f1_terminating(degree: usize, c: f64, x: f64) -> Result<SeriesSum<f64>> {
    if c <= 0.0 && c.fract() == 0.0 {
        return Err(Error::domain(
            "hyp1f1_terminating",
            format!("c = {c} is a nonpositive integer"),
        ));
    }
    let a = -(degree as f64);
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    acc.add(term);
    for k in 0..degree {
        let kf = k as f64;
        term *= (a + kf) / (c + kf) * x / (kf + 1.0);
        acc.add(term);
    }
    Ok(SeriesSum {
        value: acc.value(),
        abs_sum: acc.abs_sum(),
        terms: degree + 1,
    })
}

/// `2F1(-N, b; c; z)` in complex arithmetic.
pub fn hyp2f1_terminating(degree: usize, b: Complex64, c: Complex64, z: Complex64) -> Result<SeriesSum<Complex64>> {
    check_denominator("hyp2f1_terminating", c, degree)?;
    let a = -(degree as f64);
    let mut acc = CompensatedComplexSum::default();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    for k in 0..degree {
        let kf = k as f64;
        term = term * (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        acc.add(term);
    }
    Ok(SeriesSum {
        value: acc.value(),
        abs_sum: acc.abs_sum(),
        terms: degree + 1,
    })
}

/// `2F1(-N, b; c; z)` for real parameters.
pub fn hyp2f1_terminating_real(degree: usize, b: f64, c: f64, z: f64) -> Result<SeriesSum<f64>> {
    check_denominator("hyp2f1_terminating", Complex64::new(c, 0.0), degree)?;
    let a = -(degree as f64);
    let mut acc = CompensatedSum::new();
    let mut term = 1.0;
    acc.add(term);
    for k in 0..degree {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        acc.add(term);
    }
    Ok(SeriesSum {
        value: acc.value(),
        abs_sum: acc.abs_sum(),
        terms: degree + 1,
    })
}

/// `3F2(a1, a2, -N; b1, b2; 1)`.
pub fn hyp3f2_unit_terminating(
    a1: Complex64,
    a2: Complex64,
    degree: usize,
    b1: Complex64,
    b2: Complex64,
) -> Result<SeriesSum<Complex64>> {
    check_denominator("hyp3f2_unit_terminating", b1, degree)?;
    check_denominator("hyp3f2_unit_terminating", b2, degree)?;
    let a3 = -(degree as f64);
    let mut acc = CompensatedComplexSum::default();
    let mut term = Complex64::new(1.0, 0.0);
    acc.add(term);
    for k in 0..degree {
        let kf = k as f64;
        term = term * (a1 + kf) * (a2 + kf) * (a3 + kf) / ((b1 + kf) * (b2 + kf) * (kf + 1.0));
        acc.add(term);
    }
    Ok(SeriesSum {
        value: acc.value(),
        abs_sum: acc.abs_sum(),
        terms: degree + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// Exact rational arithmetic for the 1F1 oracle.
    #[derive(Clone, Copy, Debug, PartialEq)]
    struct Rational(i128, i128);

    impl Rational {
        fn new(n: i128, d: i128) -> Self {
            fn gcd(a: i128, b: i128) -> i128 {
                if b == 0 {
                    a.abs()
                } else {
                    gcd(b, a % b)
                }
            }
            let g = gcd(n, d).max(1) * d.signum();
            Rational(n / g, d / g)
        }
        fn add(self, o: Self) -> Self {
            Rational::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
        }
        fn mul(self, o: Self) -> Self {
            Rational::new(self.0 * o.0, self.1 * o.1)
        }
        fn to_f64(self) -> f64 {
            self.0 as f64 / self.1 as f64
        }
    }

    #[test]
    fn hyp1f1_trivial_cases() {
        assert_eq!(hyp1f1_terminating(0, 3.3, 17.0).unwrap().value, 1.0);
        for &x in &[0.0, 1.0, -2.5, 7.0] {
            let v = hyp1f1_terminating(1, 2.0, x).unwrap().value;
            assert!((v - (1.0 - x / 2.0)).abs() < 1e-15);
        }
        assert!(hyp1f1_terminating(2, -1.0, 1.0).is_err());
        assert!(hyp1f1_terminating(2, 0.0, 1.0).is_err());
    }

    #[test]
    fn hyp1f1_matches_exact_rational_series() {
        // 1F1(-3; 5/2; 4) with every term an exact rational
        let (a, c, x) = (Rational::new(-3, 1), Rational::new(5, 2), Rational::new(4, 1));
        let mut term = Rational::new(1, 1);
        let mut sum = term;
        for k in 0..3 {
            let kr = Rational::new(k, 1);
            term = term
                .mul(a.add(kr))
                .mul(Rational::new(c.1, c.0 + k * c.1))
                .mul(x)
                .mul(Rational::new(1, k + 1));
            sum = sum.add(term);
        }
        // sum = 1 - 24/5 + 192/35 - 512/315 = 19/315
        assert_eq!(sum, Rational::new(19, 315));
        let v = hyp1f1_terminating(3, 2.5, 4.0).unwrap();
        assert!(((v.value - sum.to_f64()) / sum.to_f64()).abs() < 1e-12);
        assert!(v.condition() > 100.0);
    }

    #[test]
    fn hyp2f1_small_cases() {
        let b = c(1.5, 2.0);
        let cc = c(3.0, -1.0);
        let z = c(0.3, -0.7);
        assert_eq!(hyp2f1_terminating(0, b, cc, z).unwrap().value, c(1.0, 0.0));
        let v = hyp2f1_terminating(1, b, cc, z).unwrap().value;
        assert!((v - (1.0 - b * z / cc)).norm() < 1e-15);
        // 2F1(-2, 3; 4; 1/2) = 1 - 3/4 + 3/20 = 0.4
        let v = hyp2f1_terminating_real(2, 3.0, 4.0, 0.5).unwrap();
        assert!((v.value - 0.4).abs() < 1e-15);
        assert!(hyp2f1_terminating_real(3, 1.0, -1.0, 0.5).is_err());
        // a denominator zero past the last term is harmless
        assert!(hyp2f1_terminating_real(2, 1.0, -2.0, 0.5).is_ok());
    }

    #[test]
    fn hyp3f2_small_cases() {
        let (a1, a2, b1, b2) = (c(0.7, 1.0), c(-1.2, 0.0), c(2.5, 0.3), c(1.1, -2.0));
        assert_eq!(hyp3f2_unit_terminating(a1, a2, 0, b1, b2).unwrap().value, c(1.0, 0.0));
        let v = hyp3f2_unit_terminating(a1, a2, 1, b1, b2).unwrap().value;
        assert!((v - (1.0 - a1 * a2 / (b1 * b2))).norm() < 1e-15);
    }

    #[test]
    fn compensation_recovers_cancelled_bits() {
        let mut s = CompensatedSum::new();
        for x in [1e16, 1.0, -1e16, 1.0] {
            s.add(x);
        }
        assert_eq!(s.value(), 2.0);
        assert_eq!(s.abs_sum(), 2e16 + 2.0);
    }
}
