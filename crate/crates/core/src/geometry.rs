//! Coordinate charts, conformal factors and potentials for flat space, the
//! sphere S³ and the upper sheet of the hyperboloid H³.
//!
//! Projective coordinates `r = (x1, x2, x3)` make the metric conformally flat,
//! `ds² = g(r) dr·dr` with `g(r) = (1 + ε r²/4R0²)^-2`, ε = +1 on the sphere
//! and −1 on the hyperboloid. Hyperspherical coordinates `(χ, θ, φ)` (sphere)
//! and `(τ, θ, φ)` (hyperboloid) are related by `|r| = 2R0 tan(χ/2)` and
//! `|r| = 2R0 tanh(τ/2)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{Geometry, PhysParams};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ProjectivePoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl ProjectivePoint {
    pub fn new(x1: f64, x2: f64, x3: f64) -> Self {
        ProjectivePoint { x1, x2, x3 }
    }

    pub fn radius(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    fn scaled(&self, f: f64) -> [f64; 3] {
        [f * self.x1, f * self.x2, f * self.x3]
    }
}

/// `radial` is χ ∈ [0, π] on the sphere, τ ≥ 0 on the hyperboloid and the
/// Euclidean radius in flat space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HyperAngles {
    pub radial: f64,
    pub theta: f64,
    pub phi: f64,
}

/// A point of the embedding space: `spatial = (y1, y2, y3)` and `extra` is
/// `y4` (sphere) or `y0` (hyperboloid).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EmbeddedPoint {
    pub spatial: [f64; 3],
    pub extra: f64,
}

fn check_domain(p: &PhysParams, r: f64) -> Result<()> {
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::domain(
            "geometry",
            format!("radius {r} must be finite and nonnegative"),
        ));
    }
    if p.geometry == Geometry::Hyperboloid && r >= 2.0 * p.r_curv {
        return Err(Error::domain(
            "geometry",
            format!("hyperboloid chart requires |r| < 2R0 = {}, got {r}", 2.0 * p.r_curv),
        ));
    }
    Ok(())
}

/// `1 + ε r²/4R0²` and `1 - ε r²/4R0²`.
fn chart_factors(p: &PhysParams, r: f64) -> (f64, f64) {
    let q = p.geometry.curvature_sign() * r * r / (4.0 * p.r_curv * p.r_curv);
    (1.0 + q, 1.0 - q)
}

/// `g(r)`; identically 1 in flat space.
pub fn conformal_factor(p: &PhysParams, r: f64) -> Result<f64> {
    check_domain(p, r)?;
    if p.geometry == Geometry::Flat {
        return Ok(1.0);
    }
    let (plus, _) = chart_factors(p, r);
    Ok(1.0 / (plus * plus))
}

fn azimuth(x1: f64, x2: f64) -> f64 {
    let phi = x2.atan2(x1);
    if phi < 0.0 {
        phi + 2.0 * PI
    } else {
        phi
    }
}

pub fn projective_to_angles(p: &PhysParams, pt: &ProjectivePoint) -> Result<HyperAngles> {
    let r = pt.radius();
    check_domain(p, r)?;
    let rho = pt.x1.hypot(pt.x2);
    let theta = rho.atan2(pt.x3);
    let phi = azimuth(pt.x1, pt.x2);
    let u = r / (2.0 * p.r_curv);
    let radial = match p.geometry {
        Geometry::Flat => r,
        Geometry::Sphere => 2.0 * u.atan(),
        Geometry::Hyperboloid => 2.0 * u.atanh(),
    };
    Ok(HyperAngles { radial, theta, phi })
}

pub fn angles_to_projective(p: &PhysParams, a: &HyperAngles) -> Result<ProjectivePoint> {
    if !(a.radial >= 0.0) || !a.radial.is_finite() {
        return Err(Error::domain(
            "angles_to_projective",
            format!("radial coordinate {}", a.radial),
        ));
    }
    let r = match p.geometry {
        Geometry::Flat => a.radial,
        Geometry::Sphere => {
            if a.radial > PI {
                return Err(Error::domain(
                    "angles_to_projective",
                    format!("chi = {} > pi", a.radial),
                ));
            }
            if a.radial == PI {
                return Err(Error::ProjectivePole);
            }
            // 2R0 sinχ / (1 + cosχ)
            2.0 * p.r_curv * (0.5 * a.radial).tan()
        }
        // 2R0 sinhτ / (1 + coshτ)
        Geometry::Hyperboloid => 2.0 * p.r_curv * (0.5 * a.radial).tanh(),
    };
    let (st, ct) = a.theta.sin_cos();
    let (sp, cp) = a.phi.sin_cos();
    Ok(ProjectivePoint::new(r * st * cp, r * st * sp, r * ct))
}

/// Embedding of a projective point into R⁴ (sphere) or Minkowski space
/// (hyperboloid).
pub fn embed(p: &PhysParams, pt: &ProjectivePoint) -> Result<EmbeddedPoint> {
    let r = pt.radius();
    check_domain(p, r)?;
    let (plus, minus) = chart_factors(p, r);
    match p.geometry {
        Geometry::Flat => Err(Error::Config("flat space has no embedding".into())),
        Geometry::Sphere | Geometry::Hyperboloid => Ok(EmbeddedPoint {
            spatial: pt.scaled(1.0 / plus),
            extra: p.r_curv * minus / plus,
        }),
    }
}

/// Embedding from hyperspherical coordinates.
pub fn embed_angles(p: &PhysParams, a: &HyperAngles) -> Result<EmbeddedPoint> {
    let (st, ct) = a.theta.sin_cos();
    let (sp, cp) = a.phi.sin_cos();
    let (radial_sin, extra) = match p.geometry {
        Geometry::Flat => return Err(Error::Config("flat space has no embedding".into())),
        Geometry::Sphere => (a.radial.sin(), a.radial.cos()),
        Geometry::Hyperboloid => (a.radial.sinh(), a.radial.cosh()),
    };
    let r0 = p.r_curv;
    Ok(EmbeddedPoint {
        spatial: [
            r0 * radial_sin * st * cp,
            r0 * radial_sin * st * sp,
            r0 * radial_sin * ct,
        ],
        extra: r0 * extra,
    })
}

/// The central potential `V(r)` in projective radius:
/// `-(1 - ε r²/4R0²) e²/r + (1 - ε)/2 · e²/R0` (and `-e²/r` in flat space).
pub fn coulomb_potential(p: &PhysParams, r: f64) -> Result<f64> {
    check_domain(p, r)?;
    if r == 0.0 {
        return Err(Error::Singularity("Coulomb centre r = 0".into()));
    }
    Ok(match p.geometry {
        Geometry::Flat => -p.e2 / r,
        Geometry::Sphere => {
            let (_, minus) = chart_factors(p, r);
            -minus * p.e2 / r
        }
        Geometry::Hyperboloid => {
            let (_, minus) = chart_factors(p, r);
            -minus * p.e2 / r + p.e2 / p.r_curv
        }
    })
}

/// The same Coulomb potential expressed in the natural radial variable:
/// `-e²/r`, `-(e²/R0) cot χ`, `-(e²/R0)(coth τ - 1)`.
pub fn quasi_radial_coulomb(p: &PhysParams, x: f64) -> f64 {
    match p.geometry {
        Geometry::Flat => -p.e2 / x,
        Geometry::Sphere => -p.e2 / p.r_curv / x.tan(),
        // coth τ - 1 = 2 / (e^{2τ} - 1)
        Geometry::Hyperboloid => -p.e2 / p.r_curv * 2.0 / (2.0 * x).exp_m1(),
    }
}

/// Full generalized MICZ-Kepler potential at a projective point:
/// `g(r)^-1 [ħ²s²/(2μr²) + λ1/(r(r+x3)) + λ2/(r(r-x3))] + V(r)`.
pub fn potential_gmicz(p: &PhysParams, pt: &ProjectivePoint) -> Result<f64> {
    let r = pt.radius();
    check_domain(p, r)?;
    if r == 0.0 {
        return Err(Error::Singularity("origin".into()));
    }
    let mut axial = 0.0;
    let s = p.s.to_f64();
    if s != 0.0 {
        axial += p.hbar * p.hbar * s * s / (2.0 * p.mu * r * r);
    }
    if p.lambda1 != 0.0 {
        let d = r + pt.x3;
        if d <= 0.0 {
            return Err(Error::Singularity("negative x3 axis with lambda1 != 0".into()));
        }
        axial += p.lambda1 / (r * d);
    }
    if p.lambda2 != 0.0 {
        let d = r - pt.x3;
        if d <= 0.0 {
            return Err(Error::Singularity("positive x3 axis with lambda2 != 0".into()));
        }
        axial += p.lambda2 / (r * d);
    }
    Ok(axial / conformal_factor(p, r)? + coulomb_potential(p, r)?)
}

/// `ln sinh x` without overflow for large x.
pub fn ln_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp_m1()).ln() - std::f64::consts::LN_2
}

/// The radial scale `h(x)` of the metric `R0²(dx² + h(x)² dΩ²)`: `x`, `sin x`
/// or `sinh x`, returned as `ln h`.
pub fn ln_radial_scale(geometry: Geometry, x: f64) -> f64 {
    match geometry {
        Geometry::Flat => x.ln(),
        Geometry::Sphere => x.sin().ln(),
        Geometry::Hyperboloid => ln_sinh(x),
    }
}

/// `h'(x) / h(x)`: `1/x`, `cot x`, `coth x`.
pub fn radial_scale_log_derivative(geometry: Geometry, x: f64) -> f64 {
    match geometry {
        Geometry::Flat => 1.0 / x,
        Geometry::Sphere => 1.0 / x.tan(),
        Geometry::Hyperboloid => 1.0 / x.tanh(),
    }
}

/// Upper end of the natural radial coordinate: π on the sphere, unbounded
/// otherwise.
pub fn radial_extent(geometry: Geometry) -> f64 {
    match geometry {
        Geometry::Sphere => PI,
        _ => f64::INFINITY,
    }
}
