//! A bound state of any of the three geometries behind one interface.

use num_complex::Complex64;
use serde::Serialize;

use crate::angular::AngularState;
use crate::error::Result;
use crate::flat::FlatBoundState;
use crate::geometry;
use crate::hyperboloid::HyperBoundState;
use crate::params::{DerivedNotation, Geometry, PhysParams, QuantumNumbers};
use crate::sphere::SphereBoundState;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundState {
    Flat(FlatBoundState),
    Sphere(SphereBoundState),
    Hyperboloid(HyperBoundState),
}

impl BoundState {
    pub fn new(p: &PhysParams, q: &QuantumNumbers) -> Result<Self> {
        Ok(match p.geometry {
            Geometry::Flat => BoundState::Flat(FlatBoundState::new(p, q)?),
            Geometry::Sphere => BoundState::Sphere(SphereBoundState::new(p, q)?),
            Geometry::Hyperboloid => BoundState::Hyperboloid(HyperBoundState::new(p, q)?),
        })
    }

    pub fn params(&self) -> &PhysParams {
        match self {
            BoundState::Flat(s) => &s.params,
            BoundState::Sphere(s) => &s.params,
            BoundState::Hyperboloid(s) => &s.params,
        }
    }

    pub fn quantum_numbers(&self) -> &QuantumNumbers {
        match self {
            BoundState::Flat(s) => &s.q,
            BoundState::Sphere(s) => &s.q,
            BoundState::Hyperboloid(s) => &s.q,
        }
    }

    pub fn notation(&self) -> &DerivedNotation {
        match self {
            BoundState::Flat(s) => &s.notation,
            BoundState::Sphere(s) => &s.notation,
            BoundState::Hyperboloid(s) => &s.notation,
        }
    }

    pub fn geometry(&self) -> Geometry {
        self.params().geometry
    }

    pub fn energy(&self) -> f64 {
        match self {
            BoundState::Flat(s) => s.energy,
            BoundState::Sphere(s) => s.energy,
            BoundState::Hyperboloid(s) => s.energy,
        }
    }

    /// Name of the radial variable: `r`, `chi` or `tau`.
    pub fn coordinate(&self) -> &'static str {
        match self {
            BoundState::Flat(_) => "r",
            BoundState::Sphere(_) => "chi",
            BoundState::Hyperboloid(_) => "tau",
        }
    }

    /// The (quasi-)radial function in its natural variable.
    pub fn radial(&self, x: f64) -> Result<f64> {
        match self {
            BoundState::Flat(s) => Ok(s.radial(x)),
            BoundState::Sphere(s) => s.quasi_radial(x),
            BoundState::Hyperboloid(s) => s.quasi_radial(x),
        }
    }

    /// Radial volume density: `r²`, `R0³ sin²χ` or `R0³ sinh²τ`.
    pub fn measure(&self, x: f64) -> f64 {
        let p = self.params();
        let r3 = match p.geometry {
            Geometry::Flat => 0.0,
            _ => 3.0 * p.r_curv.ln(),
        };
        (r3 + 2.0 * geometry::ln_radial_scale(p.geometry, x)).exp()
    }

    pub fn angular(&self) -> Result<AngularState> {
        AngularState::new(self.params(), self.quantum_numbers())
    }

    pub fn wavefunction(&self, x: f64, theta: f64, phi: f64) -> Result<Complex64> {
        Ok(self.angular()?.eval(theta, phi) * self.radial(x)?)
    }

    /// Scale over which the radial density decays at large `x`; `None`
    /// on the compact sphere.
    pub fn decay_length(&self) -> Option<f64> {
        match self {
            BoundState::Flat(s) => Some(1.0 / s.kappa),
            BoundState::Sphere(_) => None,
            BoundState::Hyperboloid(s) => Some(1.0 / s.decay_rate()),
        }
    }

    /// Right end of the region carrying the state: `π` on the sphere,
    /// otherwise the point past the density peak where `measure·R²` has
    /// dropped below `1e-30` of its largest sampled value.
    pub fn extent(&self) -> Result<f64> {
        let Some(length) = self.decay_length() else {
            return Ok(std::f64::consts::PI);
        };
        let step = match self.geometry() {
            Geometry::Flat => 0.25 * length,
            _ => 0.25 * length.min(1.0),
        };
        let mut peak = 0.0f64;
        let mut quiet = 0;
        let mut x = step;
        for _ in 0..1_000_000 {
            let v = self.measure(x) * self.radial(x)?.powi(2);
            peak = peak.max(v);
            if v < 1e-30 * peak {
                quiet += 1;
                if quiet == 2 {
                    return Ok(x);
                }
            } else {
                quiet = 0;
            }
            x += step;
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::HalfInt;

    fn ground() -> QuantumNumbers {
        QuantumNumbers::new(HalfInt::ONE, HalfInt::ZERO, HalfInt::ZERO)
    }

    #[test]
    fn dispatch_matches_geometry() {
        for g in [Geometry::Flat, Geometry::Sphere, Geometry::Hyperboloid] {
            let p = PhysParams::atomic(g).with_radius(5.0);
            let st = BoundState::new(&p, &ground()).unwrap();
            assert_eq!(st.geometry(), g);
            assert!(st.radial(0.5).unwrap() > 0.0);
        }
    }

    #[test]
    fn measures() {
        let p = PhysParams::atomic(Geometry::Sphere).with_radius(2.0);
        let st = BoundState::new(&p, &ground()).unwrap();
        assert!((st.measure(1.0) - 8.0 * 1f64.sin().powi(2)).abs() < 1e-14);
        let flat = BoundState::new(&PhysParams::atomic(Geometry::Flat), &ground()).unwrap();
        assert!((flat.measure(3.0) - 9.0).abs() < 1e-13);
        assert_eq!(st.extent().unwrap(), std::f64::consts::PI);
    }

    #[test]
    fn extent_covers_the_density() {
        // 4 r² e^{-2r} < 1e-30 · 4e^{-2} needs r ≳ 38
        let flat = BoundState::new(&PhysParams::atomic(Geometry::Flat), &ground()).unwrap();
        let t = flat.extent().unwrap();
        assert!(t > 35.0 && t < 60.0, "{t}");
    }
}
