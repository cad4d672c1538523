//! The generalized MICZ-Kepler system on the upper sheet of the
//! two-sheeted hyperboloid. Only finitely many levels are bound: the
//! quasi-radial function decays like `e^{(n+δ-σ)τ}`, so a level exists iff
//! `σ > n + δ`, i.e. `(n+δ)² < R0/r0`.

use std::f64::consts::LN_2;

use num_complex::Complex64;
use serde::Serialize;

use crate::angular::AngularState;
use crate::error::{Error, Result};
use crate::geometry::ln_sinh;
use crate::params::{
    self, channel_exponents, DerivedNotation, Geometry, HalfInt, PhysParams, QuantumNumbers, Violation,
};
use crate::specfun::{hyp2f1_terminating_real, ln_factorial, log_gamma};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperBoundState {
    pub params: PhysParams,
    pub q: QuantumNumbers,
    pub notation: DerivedNotation,
    pub energy: f64,
    #[serde(skip)]
    ln_norm: f64,
}

fn check_geometry(p: &PhysParams) -> Result<()> {
    if p.geometry != Geometry::Hyperboloid {
        return Err(Error::WrongGeometry {
            expected: Geometry::Hyperboloid,
            actual: p.geometry,
        });
    }
    Ok(())
}

/// `-ħ²((n+δ)² - 1)/(2μR0²) - μe⁴/(2ħ²(n+δ)²) + e²/R0`.
pub fn energy_for(p: &PhysParams, n_eff: f64) -> f64 {
    let kinetic = p.hbar * p.hbar / (2.0 * p.mu * p.r_curv * p.r_curv);
    -kinetic * (n_eff * n_eff - 1.0) - p.mu * p.e2 * p.e2 / (2.0 * p.hbar * p.hbar * n_eff * n_eff) + p.e2 / p.r_curv
}

/// Converts a normalizability violation into the dedicated error.
fn notation(p: &PhysParams, q: &QuantumNumbers) -> Result<DerivedNotation> {
    match params::derive_notation(p, q) {
        Ok(d) => Ok(d),
        Err(Error::Invalid(v)) if v.len() == 1 && matches!(v[0], Violation::NoBoundState { .. }) => {
            let d = params::notation_unchecked(p, q);
            Err(Error::NoBoundState {
                n: q.n.to_f64(),
                delta: d.delta,
                n_eff: d.n_eff,
                sigma: d.sigma.unwrap_or(0.0),
            })
        }
        Err(e) => Err(e),
    }
}

pub fn hyper_energy(p: &PhysParams, q: &QuantumNumbers) -> Result<f64> {
    check_geometry(p)?;
    let d = notation(p, q)?;
    Ok(energy_for(p, d.n_eff))
}

/// Principal numbers admissible in the `(m, j)` channel, smallest first.
fn channel_principal_numbers(s: HalfInt, j: HalfInt) -> impl Iterator<Item = HalfInt> {
    // n ≥ j + 1 and n - |s| a positive integer; j - |s| is an integer
    let first = (j + HalfInt::ONE).max(s.abs() + HalfInt::ONE);
    (0..).map(move |i| first + HalfInt::from_int(i))
}

/// Number of bound levels in the `(m, j)` channel by normalizability,
/// `(n+δ)² < R0/r0`.
pub fn bound_state_count(p: &PhysParams, m: HalfInt, j: HalfInt) -> usize {
    let (_, _, _, delta) = channel_exponents(p, m);
    let beta = p.coulomb_strength();
    channel_principal_numbers(p.s, j)
        .take_while(|n| {
            let n_eff = n.to_f64() + delta;
            n_eff * n_eff < beta
        })
        .count()
}

/// The count admitted by the bracket condition `n ≤ [σ - δ - 1]` with
/// `σ = R0/(r0(n+δ))`, reported alongside `bound_state_count`.
pub fn bracket_condition_count(p: &PhysParams, m: HalfInt, j: HalfInt) -> usize {
    let (_, _, _, delta) = channel_exponents(p, m);
    let beta = p.coulomb_strength();
    channel_principal_numbers(p.s, j)
        .take_while(|n| {
            let nf = n.to_f64();
            let sigma = beta / (nf + delta);
            nf <= (sigma - delta - 1.0).floor()
        })
        .count()
}

/// Whether `n` passes the bracket condition.
pub fn bracket_condition(p: &PhysParams, q: &QuantumNumbers) -> bool {
    let (_, _, _, delta) = channel_exponents(p, q.m);
    let nf = q.n.to_f64();
    let sigma = p.coulomb_strength() / (nf + delta);
    nf <= (sigma - delta - 1.0).floor()
}

impl HyperBoundState {
    pub fn new(p: &PhysParams, q: &QuantumNumbers) -> Result<Self> {
        check_geometry(p)?;
        let d = notation(p, q)?;
        let sigma = d.sigma.expect("curved notation carries sigma");
        let jt = d.j_tilde;
        let n = d.n_eff;
        let k = q.radial_degree().expect("validated");
        let ln_norm = (jt + 1.0) * LN_2 - log_gamma(2.0 * jt + 2.0)?
            + 0.5
                * (((sigma - n) * (sigma + n)).ln()
                    + log_gamma((q.n + q.j).to_f64() + 1.0 + 2.0 * d.delta)?
                    + log_gamma(jt + sigma + 1.0)?
                    - 3.0 * p.r_curv.ln()
                    - n.ln()
                    - ln_factorial(k)
                    - log_gamma(sigma - jt)?);
        if !ln_norm.is_finite() {
            return Err(Error::Range {
                what: "hyperboloid normalization constant",
            });
        }
        Ok(HyperBoundState {
            params: *p,
            q: *q,
            notation: d,
            energy: energy_for(p, n),
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

    pub fn norm_constant(&self) -> Result<f64> {
        let a = self.ln_norm.exp();
        if a.is_finite() {
            Ok(a)
        } else {
            Err(Error::Range {
                what: "hyperboloid normalization constant",
            })
        }
    }

    /// Asymptotic decay rate `σ - n - δ` of `R(τ)`.
    pub fn decay_rate(&self) -> f64 {
        self.sigma() - self.notation.n_eff
    }

    /// `R(τ)`, normalized so that `R0³ ∫ sinh²τ R² dτ = 1`.
    pub fn quasi_radial(&self, tau: f64) -> Result<f64> {
        if !(tau > 0.0) || !tau.is_finite() {
            return Err(Error::domain(
                "hyperboloid quasi_radial",
                format!("tau = {tau} must be positive"),
            ));
        }
        let jt = self.notation.j_tilde;
        let k = self.radial_degree();
        let sigma = self.sigma();
        let f = hyp2f1_terminating_real(k, jt + sigma + 1.0, 2.0 * jt + 2.0, -(-2.0 * tau).exp_m1())?;
        let power = if jt == 0.0 { 0.0 } else { jt * ln_sinh(tau) };
        Ok((self.ln_norm + power + tau * (k as f64 - sigma)).exp() * f.value)
    }

    pub fn wavefunction(&self, tau: f64, theta: f64, phi: f64) -> Result<Complex64> {
        let z = AngularState::new(&self.params, &self.q)?.eval(theta, phi);
        Ok(z * self.quasi_radial(tau)?)
    }
}

pub fn quasi_radial_eval(state: &HyperBoundState, tau: f64) -> Result<f64> {
    state.quasi_radial(tau)
}

pub fn hyper_norm_constant(state: &HyperBoundState) -> Result<f64> {
    state.norm_constant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(n2: i64, j2: i64, m2: i64) -> QuantumNumbers {
        QuantumNumbers::new(
            HalfInt::from_twice(n2),
            HalfInt::from_twice(j2),
            HalfInt::from_twice(m2),
        )
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-15 * b.abs().max(1.0)
    }

    #[test]
    fn spectrum_values() {
        let p = PhysParams::atomic(Geometry::Hyperboloid).with_radius(10.0);
        assert!(close(hyper_energy(&p, &qn(2, 0, 0)).unwrap(), -0.4));
        assert!(close(hyper_energy(&p, &qn(4, 0, 0)).unwrap(), -0.04));
        match hyper_energy(&p, &qn(8, 0, 0)) {
            Err(Error::NoBoundState { n, n_eff, sigma, .. }) => {
                assert_eq!(n, 4.0);
                assert_eq!(n_eff, 4.0);
                assert_eq!(sigma, 2.5);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn counts() {
        let p = PhysParams::atomic(Geometry::Hyperboloid);
        let zero = HalfInt::ZERO;
        assert_eq!(bound_state_count(&p.with_radius(10.0), zero, zero), 3);
        assert_eq!(bracket_condition_count(&p.with_radius(10.0), zero, zero), 2);
        assert_eq!(bound_state_count(&p.with_radius(0.5), zero, zero), 0);
        assert_eq!(bound_state_count(&p.with_radius(4.0 + 1e-9), zero, zero), 2);
        assert_eq!(bound_state_count(&p.with_radius(4.0), zero, zero), 1);
        assert_eq!(bound_state_count(&p.with_radius(10.0), zero, HalfInt::ONE), 2);
    }

    #[test]
    fn ground_state_closed_form() {
        let p = PhysParams::atomic(Geometry::Hyperboloid).with_radius(3.0);
        let st = HyperBoundState::new(&p, &qn(2, 0, 0)).unwrap();
        let sigma = st.sigma();
        assert_eq!(sigma, 3.0);
        // A = 2 √(σ(σ²-1)/R0³)
        let a = 2.0 * (sigma * (sigma * sigma - 1.0) / 27.0).sqrt();
        assert!((st.norm_constant().unwrap() / a - 1.0).abs() < 1e-13);
        // R0³ A² / (4σ(σ²-1)) = 1
        assert!((27.0 * a * a / (4.0 * sigma * (sigma * sigma - 1.0)) - 1.0).abs() < 1e-15);
        for &t in &[0.1, 1.0, 5.0] {
            let r = st.quasi_radial(t).unwrap();
            assert!((r - a * (-sigma * t).exp()).abs() < 1e-13 * r);
        }
    }

    #[test]
    fn far_tail_does_not_overflow() {
        let p = PhysParams::atomic(Geometry::Hyperboloid).with_radius(50.0);
        let st = HyperBoundState::new(&p, &qn(8, 4, 2)).unwrap();
        let v = st.quasi_radial(300.0).unwrap();
        assert!(v.is_finite());
    }
}
