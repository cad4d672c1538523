//! The generalized MICZ-Kepler system in Euclidean space.

use num_complex::Complex64;
use serde::Serialize;

use crate::angular::AngularState;
use crate::error::{Error, Result};
use crate::params::{self, DerivedNotation, Geometry, PhysParams, QuantumNumbers, Violation};
use crate::specfun::{hyp1f1_terminating, ln_factorial, log_gamma};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FlatBoundState {
    pub params: PhysParams,
    pub q: QuantumNumbers,
    pub notation: DerivedNotation,
    pub energy: f64,
    pub kappa: f64,
    #[serde(skip)]
    ln_norm: f64,
}

fn check_geometry(p: &PhysParams) -> Result<()> {
    if p.geometry != Geometry::Flat {
        return Err(Error::WrongGeometry {
            expected: Geometry::Flat,
            actual: p.geometry,
        });
    }
    Ok(())
}

/// `-μe⁴ / (2ħ²(n+δ)²)`.
pub fn energy_for(p: &PhysParams, n_eff: f64) -> f64 {
    -p.mu * p.e2 * p.e2 / (2.0 * p.hbar * p.hbar * n_eff * n_eff)
}

pub fn flat_energy(p: &PhysParams, q: &QuantumNumbers) -> Result<f64> {
    check_geometry(p)?;
    let d = params::derive_notation(p, q)?;
    Ok(energy_for(p, d.n_eff))
}

impl FlatBoundState {
    pub fn new(p: &PhysParams, q: &QuantumNumbers) -> Result<Self> {
        check_geometry(p)?;
        let d = params::derive_notation(p, q)?;
        if p.e2 == 0.0 {
            return Err(Error::Invalid(vec![Violation::NoCoulombCoupling]));
        }
        let kappa = d.kappa.expect("flat notation carries kappa");
        let k = q.radial_degree().expect("validated");
        let ln_norm = std::f64::consts::LN_2 + 2.0 * kappa.ln() + 0.5 * p.bohr_radius().ln()
            - log_gamma(2.0 * d.j_tilde + 2.0)?
            + 0.5 * (log_gamma((q.n + q.j).to_f64() + 1.0 + 2.0 * d.delta)? - ln_factorial(k));
        Ok(FlatBoundState {
            params: *p,
            q: *q,
            notation: d,
            energy: energy_for(p, d.n_eff),
            kappa,
            ln_norm,
        })
    }

    pub fn radial_degree(&self) -> usize {
        self.q.radial_degree().expect("validated")
    }

    pub fn norm_constant(&self) -> f64 {
        self.ln_norm.exp()
    }

    /// `R(r)`, normalized so that `∫ R² r² dr = 1`.
    pub fn radial(&self, r: f64) -> f64 {
        let jt = self.notation.j_tilde;
        let x = 2.0 * self.kappa * r;
        let f = hyp1f1_terminating(self.radial_degree(), 2.0 * jt + 2.0, x)
            .expect("c = 2j~+2 is positive")
            .value;
        let power = if jt == 0.0 { 0.0 } else { jt * x.ln() };
        (self.ln_norm + power - self.kappa * r).exp() * f
    }

    pub fn wavefunction(&self, r: f64, theta: f64, phi: f64) -> Complex64 {
        let z = AngularState::new(&self.params, &self.q)
            .expect("validated")
            .eval(theta, phi);
        z * self.radial(r)
    }
}

pub fn radial_eval(state: &FlatBoundState, r: f64) -> f64 {
    state.radial(r)
}

pub fn wavefunction_eval(p: &PhysParams, q: &QuantumNumbers, r: f64, theta: f64, phi: f64) -> Result<Complex64> {
    Ok(FlatBoundState::new(p, q)?.wavefunction(r, theta, phi))
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
    fn hydrogen_values() {
        let p = PhysParams::atomic(Geometry::Flat);
        assert_eq!(flat_energy(&p, &qn(2, 0, 0)).unwrap(), -0.5);
        let st = FlatBoundState::new(&p, &qn(2, 0, 0)).unwrap();
        assert!((st.radial(1.0) - 2.0 * (-1.0f64).exp()).abs() < 1e-15);
        let psi = st.wavefunction(1.0, std::f64::consts::FRAC_PI_3, 0.4);
        let expected = 2.0 * (-1.0f64).exp() / (4.0 * std::f64::consts::PI).sqrt();
        assert!((psi.re - expected).abs() < 1e-15 && psi.im.abs() < 1e-16);
        // R_20 = (1/√2)(1 - r/2) e^{-r/2}
        let st = FlatBoundState::new(&p, &qn(4, 0, 0)).unwrap();
        let r: f64 = 1.7;
        assert!((st.radial(r) - (1.0 - r / 2.0) * (-r / 2.0).exp() / 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn perturbed_energy() {
        let p = PhysParams::atomic(Geometry::Flat).with_lambdas(0.75, 0.0);
        let e = flat_energy(&p, &qn(4, 2, 2)).unwrap();
        assert!((e + 0.08).abs() < 1e-16);
        // j-independent
        let p = p.with_monopole(HalfInt::ONE);
        let a = flat_energy(&p, &qn(8, 2, 2)).unwrap();
        let b = flat_energy(&p, &qn(8, 6, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn geometry_and_coupling_errors() {
        let q = qn(2, 0, 0);
        assert!(matches!(
            flat_energy(&PhysParams::atomic(Geometry::Sphere), &q),
            Err(Error::WrongGeometry { .. })
        ));
        let free = PhysParams::atomic(Geometry::Flat).with_units(1.0, 1.0, 0.0);
        assert!(matches!(FlatBoundState::new(&free, &q), Err(Error::Invalid(_))));
    }
}
