//! The generalized MICZ-Kepler system on the three-sphere.
//!
//! The quasi-radial function is a terminating `2F1` in `1 - e^{2iχ}` with a
//! complex parameter; it is summed in complex arithmetic and the (real)
//! result is returned only after checking that the imaginary part is at
//! rounding level.

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::angular::AngularState;
use crate::error::{Error, Result};
use crate::params::{self, DerivedNotation, Geometry, PhysParams, QuantumNumbers};
use crate::specfun::{hyp2f1_terminating, ln_abs_gamma_complex, ln_factorial, log_gamma};

/// Relative size of the imaginary part tolerated by the reality check.
pub const REALITY_TOLERANCE: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SphereBoundState {
    pub params: PhysParams,
    pub q: QuantumNumbers,
    pub notation: DerivedNotation,
    pub energy: f64,
    #[serde(skip)]
    ln_norm: f64,
}

/// A quasi-radial value with its diagnostics.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexEvaluation {
    pub value: Complex64,
    /// Magnitude scale of the summed terms (prefactor times `Σ|term|`).
    pub scale: f64,
    pub condition: f64,
}

impl ComplexEvaluation {
    /// `|Im|` relative to `|Re|`.
    pub fn imag_ratio(&self) -> f64 {
        self.value.im.abs() / self.value.re.abs()
    }

    /// The real part, if the imaginary part is below
    /// `1e-10 |Re|` or within rounding of the summed terms.
    pub fn real(&self) -> Result<f64> {
        let im = self.value.im.abs();
        if im <= REALITY_TOLERANCE * self.value.re.abs() || im <= 64.0 * f64::EPSILON * self.scale {
            Ok(self.value.re)
        } else {
            Err(Error::NumericInstability {
                imag_ratio: self.imag_ratio(),
                condition: self.condition,
            })
        }
    }
}

fn check_geometry(p: &PhysParams) -> Result<()> {
    if p.geometry != Geometry::Sphere {
        return Err(Error::WrongGeometry {
            expected: Geometry::Sphere,
            actual: p.geometry,
        });
    }
    Ok(())
}

/// `ħ²((n+δ)² - 1)/(2μR0²) - μe⁴/(2ħ²(n+δ)²)`.
pub fn energy_for(p: &PhysParams, n_eff: f64) -> f64 {
    let kinetic = p.hbar * p.hbar / (2.0 * p.mu * p.r_curv * p.r_curv);
    kinetic * (n_eff * n_eff - 1.0) - p.mu * p.e2 * p.e2 / (2.0 * p.hbar * p.hbar * n_eff * n_eff)
}

pub fn sphere_energy(p: &PhysParams, q: &QuantumNumbers) -> Result<f64> {
    check_geometry(p)?;
    let d = params::derive_notation(p, q)?;
    Ok(energy_for(p, d.n_eff))
}

/// `ln C` for the normalization constant, assembled term by term so that
/// `e^{πσ/2}` and `|Γ(j~+1-iσ)|` never overflow separately.
fn ln_norm_constant(p: &PhysParams, q: &QuantumNumbers, d: &DerivedNotation) -> Result<f64> {
    let sigma = d.sigma.expect("curved notation carries sigma");
    let jt = d.j_tilde;
    let n = d.n_eff;
    let k = q.radial_degree().expect("validated");
    let ln_c = (jt + 1.0) * LN_2 - log_gamma(2.0 * jt + 2.0)?
        + 0.5 * PI * sigma
        + ln_abs_gamma_complex(jt + 1.0, -sigma)?
        + 0.5
            * ((n * n + sigma * sigma).ln() + log_gamma((q.n + q.j).to_f64() + 1.0 + 2.0 * d.delta)?
                - PI.ln()
                - 3.0 * p.r_curv.ln()
                - (2.0 * n).ln()
                - ln_factorial(k));
    if !ln_c.is_finite() {
        return Err(Error::Range {
            what: "sphere normalization constant",
        });
    }
    Ok(ln_c)
}

impl SphereBoundState {
    pub fn new(p: &PhysParams, q: &QuantumNumbers) -> Result<Self> {
        check_geometry(p)?;
        let d = params::derive_notation(p, q)?;
        let ln_norm = ln_norm_constant(p, q, &d)?;
        Ok(SphereBoundState {
            params: *p,
            q: *q,
            notation: d,
            energy: energy_for(p, d.n_eff),
            ln_norm,
        })
    }

    pub fn sigma(&self) -> f64 {
        self.notation.sigma.expect("curved notation carries sigma")
    }

    pub fn radial_degree(&self) -> usize {
        self.q.radial_degree().expect("validated")
    }

    pub fn ln_norm_constant(&self) -> f64 {
        self.ln_norm
    }

    /// `C`; a range error if it does not fit in a double.
    pub fn norm_constant(&self) -> Result<f64> {
        let c = self.ln_norm.exp();
        if c.is_finite() {
            Ok(c)
        } else {
            Err(Error::Range {
                what: "sphere normalization constant",
            })
        }
    }

    fn prefactor(&self, chi: f64) -> (f64, f64) {
        // C sin^{j~}χ e^{-σχ} in log form, and the phase -kχ
        let jt = self.notation.j_tilde;
        let power = if jt == 0.0 { 0.0 } else { jt * chi.sin().ln() };
        (
            self.ln_norm + power - self.sigma() * chi,
            -(self.radial_degree() as f64) * chi,
        )
    }

    /// The complex sum of the primary representation with diagnostics.
    pub fn quasi_radial_complex(&self, chi: f64) -> Result<ComplexEvaluation> {
        let jt = self.notation.j_tilde;
        let sigma = self.sigma();
        let z = Complex64::new(1.0, 0.0) - Complex64::from_polar(1.0, 2.0 * chi);
        let f = hyp2f1_terminating(
            self.radial_degree(),
            Complex64::new(jt + 1.0, sigma),
            Complex64::new(2.0 * jt + 2.0, 0.0),
            z,
        )?;
        let (ln_mag, phase) = self.prefactor(chi);
        let pre = Complex64::from_polar(ln_mag.exp(), phase);
        Ok(ComplexEvaluation {
            value: pre * f.value,
            scale: pre.norm() * f.abs_sum,
            condition: f.condition(),
        })
    }

    /// The same function through the transformed series in `e^{2iχ}`:
    /// `(j~+1-iσ)_k/(2j~+2)_k · 2F1(-k, j~+1+iσ; 1-n-δ+iσ; e^{2iχ})`.
    pub fn quasi_radial_alternative(&self, chi: f64) -> Result<ComplexEvaluation> {
        let jt = self.notation.j_tilde;
        let sigma = self.sigma();
        let k = self.radial_degree();
        let mut ratio = Complex64::new(1.0, 0.0);
        for i in 0..k {
            let fi = i as f64;
            ratio *= Complex64::new(jt + 1.0 + fi, -sigma) / (2.0 * jt + 2.0 + fi);
        }
        let f = hyp2f1_terminating(
            k,
            Complex64::new(jt + 1.0, sigma),
            Complex64::new(1.0 - self.notation.n_eff, sigma),
            Complex64::from_polar(1.0, 2.0 * chi),
        )?;
        let (ln_mag, phase) = self.prefactor(chi);
        let pre = Complex64::from_polar(ln_mag.exp(), phase) * ratio;
        Ok(ComplexEvaluation {
            value: pre * f.value,
            scale: pre.norm() * f.abs_sum,
            condition: f.condition(),
        })
    }

    /// `R(χ)`, normalized so that `R0³ ∫ sin²χ R² dχ = 1`.
    pub fn quasi_radial(&self, chi: f64) -> Result<f64> {
        if !(chi > 0.0 && chi < PI) {
            return Err(Error::domain(
                "sphere quasi_radial",
                format!("chi = {chi} outside (0, pi)"),
            ));
        }
        self.quasi_radial_complex(chi)?.real()
    }

    pub fn wavefunction(&self, chi: f64, theta: f64, phi: f64) -> Result<Complex64> {
        let z = AngularState::new(&self.params, &self.q)?.eval(theta, phi);
        Ok(z * self.quasi_radial(chi)?)
    }
}

pub fn quasi_radial_eval(state: &SphereBoundState, chi: f64) -> Result<f64> {
    state.quasi_radial(chi)
}

pub fn sphere_norm_constant(state: &SphereBoundState) -> Result<f64> {
    state.norm_constant()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::HalfInt;

    fn qn(n2: i64, j2: i64, m2: i64) -> QuantumNumbers {
        QuantumNumbers::new(
            HalfInt::from_twice(n2),
            HalfInt::from_twice(j2),
            HalfInt::from_twice(m2),
        )
    }

    #[test]
    fn spectrum_values() {
        let p = PhysParams::atomic(Geometry::Sphere);
        assert_eq!(sphere_energy(&p, &qn(2, 0, 0)).unwrap(), -0.5);
        assert_eq!(sphere_energy(&p, &qn(4, 2, 0)).unwrap(), 1.375);
        assert!(matches!(
            sphere_energy(&PhysParams::atomic(Geometry::Flat), &qn(2, 0, 0)),
            Err(Error::WrongGeometry { .. })
        ));
    }

    #[test]
    fn ground_state_is_pure_exponential() {
        let p = PhysParams::atomic(Geometry::Sphere).with_radius(2.5);
        let st = SphereBoundState::new(&p, &qn(2, 0, 0)).unwrap();
        let c = st.norm_constant().unwrap();
        let sigma = st.sigma();
        assert_eq!(sigma, 2.5);
        assert!((st.quasi_radial(1.0).unwrap() - c * (-sigma).exp()).abs() < 1e-15 * c);
    }

    /// `R0³ C² ∫ sin²χ e^{-2σχ} dχ = 1` in closed form, with
    /// `|Γ(1-iσ)|² = πσ/sinh(πσ)` and `∫ = (1 - e^{-2πσ})/(4σ(1+σ²))`.
    #[test]
    fn ground_state_constant_closed_form() {
        for &r0 in &[0.3, 1.0, 7.0, 40.0] {
            let p = PhysParams::atomic(Geometry::Sphere).with_radius(r0);
            let st = SphereBoundState::new(&p, &qn(2, 0, 0)).unwrap();
            let sigma = st.sigma();
            // C² = 4 e^{πσ} |Γ(1-iσ)|² (1+σ²) / (2π R0³)
            let ln_c2 = 2.0 * st.ln_norm_constant();
            let ln_closed =
                (4.0 * (1.0 + sigma * sigma) / (2.0 * PI * r0.powi(3))).ln() + PI * sigma + (PI * sigma).ln()
                    - crate::geometry::ln_sinh(PI * sigma);
            assert!((ln_c2 - ln_closed).abs() < 1e-12, "r0={r0}");
            let integral = -(-2.0 * PI * sigma).exp_m1() / (4.0 * sigma * (1.0 + sigma * sigma));
            let total = (ln_c2 + 3.0 * r0.ln()).exp() * integral;
            assert!((total - 1.0).abs() < 1e-12, "r0={r0}: {total}");
        }
    }

    #[test]
    fn representations_agree() {
        let p = PhysParams::atomic(Geometry::Sphere)
            .with_radius(1.7)
            .with_monopole(HalfInt::HALF)
            .with_lambdas(0.3, 0.6);
        let st = SphereBoundState::new(&p, &qn(11, 3, 1)).unwrap();
        for i in 1..30 {
            let chi = 0.1 + i as f64 * 0.1;
            let a = st.quasi_radial_complex(chi).unwrap().real().unwrap();
            let b = st.quasi_radial_alternative(chi).unwrap().real().unwrap();
            assert!((a - b).abs() < 1e-11 * (1.0 + a.abs()), "chi={chi}: {a} vs {b}");
        }
    }

    #[test]
    fn large_sigma_stays_finite() {
        // e^{πσ/2} alone would overflow here
        let p = PhysParams::atomic(Geometry::Sphere).with_radius(1500.0);
        let st = SphereBoundState::new(&p, &qn(6, 2, 0)).unwrap();
        assert!(st.sigma() * PI / 2.0 > 709.0);
        assert!(st.norm_constant().unwrap().is_finite());
        let v = st.quasi_radial(0.001).unwrap();
        assert!(v.is_finite() && v != 0.0);
    }

    #[test]
    fn overflowing_constant_is_a_range_error() {
        let p = PhysParams::atomic(Geometry::Sphere).with_radius(1e-220);
        let st = SphereBoundState::new(&p, &qn(2, 0, 0)).unwrap();
        assert!(st.ln_norm_constant() > 709.0);
        assert!(matches!(sphere_norm_constant(&st), Err(Error::Range { .. })));
    }
}
