//! Angular eigenfunctions `Z(θ, φ)` of the monopole operator `M`, the
//! operator itself as a finite-difference stencil, and `J3`.
//!
//! `Z = N cos(θ/2)^{m1} sin(θ/2)^{m2} P_{j-m+}^{(m2, m1)}(cos θ) e^{i(m-s)φ}`
//! with eigenvalue `ĵ(ĵ+1)`, `ĵ = j + δ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::{self, DerivedNotation, Geometry, PhysParams, QuantumNumbers, Violation};
use crate::specfun::{jacobi_p, ln_factorial, log_gamma};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AngularState {
    pub params: PhysParams,
    pub q: QuantumNumbers,
    pub notation: DerivedNotation,
    ln_norm: f64,
}

impl AngularState {
    /// Angular functions do not depend on the geometry, so only the
    /// kinematic rules are checked here.
    pub fn new(p: &PhysParams, q: &QuantumNumbers) -> Result<Self> {
        let kinematic = p.with_geometry(Geometry::Flat);
        let violations: Vec<Violation> = params::validate(&kinematic, q);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        let notation = params::notation_unchecked(p, q);
        let k = notation_degree(&notation, q);
        let (m1, m2) = (notation.m1, notation.m2);
        let kf = k as f64;
        let ln_norm = 0.5
            * ((2.0 * notation.j_tilde + 1.0).ln() + ln_factorial(k) + log_gamma(kf + m1 + m2 + 1.0)?
                - (4.0 * std::f64::consts::PI).ln()
                - log_gamma(kf + m1 + 1.0)?
                - log_gamma(kf + m2 + 1.0)?);
        Ok(AngularState {
            params: *p,
            q: *q,
            notation,
            ln_norm,
        })
    }

    /// Degree `j - m+` of the Jacobi polynomial.
    pub fn degree(&self) -> usize {
        notation_degree(&self.notation, &self.q)
    }

    /// The azimuthal mode `m - s`.
    pub fn mode(&self) -> i64 {
        (self.q.m - self.params.s).as_integer().expect("validated")
    }

    /// `ĵ(ĵ+1)`.
    pub fn eigenvalue(&self) -> f64 {
        let jt = self.notation.j_tilde;
        jt * (jt + 1.0)
    }

    pub fn normalization(&self) -> f64 {
        self.ln_norm.exp()
    }

    /// The real θ-profile, normalization included.
    pub fn theta_part(&self, theta: f64) -> f64 {
        let (s, c) = (0.5 * theta).sin_cos();
        let d = &self.notation;
        let poly = jacobi_p(self.degree(), d.m2, d.m1, theta.cos().clamp(-1.0, 1.0)).expect("valid Jacobi parameters");
        self.ln_norm.exp() * c.abs().powf(d.m1) * s.abs().powf(d.m2) * poly
    }

    pub fn eval(&self, theta: f64, phi: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.mode() as f64 * phi) * self.theta_part(theta)
    }
}

fn notation_degree(d: &DerivedNotation, q: &QuantumNumbers) -> usize {
    usize::try_from((q.j - d.m_plus).as_integer().expect("validated")).expect("validated")
}

/// `Z(θ, φ)`.
pub fn z_eval(state: &AngularState, theta: f64, phi: f64) -> Complex64 {
    state.eval(theta, phi)
}

/// Applies `M` to a single φ-mode `F(θ) e^{i·mode·φ}` sampled on the uniform
/// grid `θ_i = theta0 + i·step`. Returns `(M F)` at the interior points
/// `i = 2 .. len-2` (fourth-order central differences).
pub fn apply_m_operator(
    p: &PhysParams,
    mode: i64,
    theta0: f64,
    step: f64,
    values: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = values.len();
    if n < 5 {
        return Err(Error::Config(format!(
            "M stencil needs at least 5 grid points, got {n}"
        )));
    }
    if !(step > 0.0) {
        return Err(Error::Config(format!("grid step {step} must be positive")));
    }
    let first = theta0 + 2.0 * step;
    let last = theta0 + (n - 3) as f64 * step;
    if !(first > 0.0 && last < std::f64::consts::PI) {
        return Err(Error::Config("stencil centres must lie strictly inside (0, pi)".into()));
    }
    let (c1, c2) = p.reduced_couplings();
    let k = mode as f64;
    let k2 = k + p.s.to_f64() * 2.0;
    let north = k * k + c1;
    let south = k2 * k2 + c2;
    let h = step;
    let mut out = Vec::with_capacity(n - 4);
    for i in 2..n - 2 {
        let theta = theta0 + i as f64 * h;
        let (fm2, fm1, f0, fp1, fp2) = (values[i - 2], values[i - 1], values[i], values[i + 1], values[i + 2]);
        let d1 = (fm2 - fm1 * 8.0 + fp1 * 8.0 - fp2) / (12.0 * h);
        let d2 = (-fm2 + fm1 * 16.0 - f0 * 30.0 + fp1 * 16.0 - fp2) / (12.0 * h * h);
        let (sh, ch) = (0.5 * theta).sin_cos();
        let lap = d2 + d1 / theta.tan();
        out.push(-(lap - f0 * (north / (4.0 * ch * ch)) - f0 * (south / (4.0 * sh * sh))));
    }
    Ok(out)
}

/// `J3 = -i ∂φ + s` acting on a single φ-mode: multiplication by `mode + s`.
pub fn apply_j3(p: &PhysParams, mode: i64, values: &[Complex64]) -> Vec<Complex64> {
    let factor = mode as f64 + p.s.to_f64();
    values.iter().map(|v| v * factor).collect()
}

/// Pointwise eigenvalue estimates `(M Z)/Z` from two grids (spacing `h` and
/// `h/2`) and their fourth-order Richardson combination.
#[derive(Clone, Debug, PartialEq)]
pub struct MOperatorCheck {
    pub eigenvalue: f64,
    pub points: usize,
    /// Max relative error of `(M Z)/Z` on the coarse grid.
    pub coarse_error: f64,
    pub fine_error: f64,
    pub extrapolated_error: f64,
}

/// Checks `M Z = ĵ(ĵ+1) Z` on `[margin, π - margin]` with `n_points` grid
/// points (and twice as many for the extrapolation). Points where `|Z|` is
/// below `1e-3 max|Z|` (near nodes) are skipped.
pub fn check_m_operator(state: &AngularState, n_points: usize, margin: f64) -> Result<MOperatorCheck> {
    if n_points < 5 {
        return Err(Error::Config(format!("need at least 5 grid points, got {n_points}")));
    }
    let span = std::f64::consts::PI - 2.0 * margin;
    let run = |cells: usize| -> Result<(f64, Vec<f64>, Vec<f64>)> {
        let h = span / (cells - 1) as f64;
        let theta0 = margin - 2.0 * h;
        let samples: Vec<Complex64> = (0..cells + 4)
            .map(|i| Complex64::new(state.theta_part(theta0 + i as f64 * h), 0.0))
            .collect();
        let mz = apply_m_operator(&state.params, state.mode(), theta0, h, &samples)?;
        let z: Vec<f64> = samples[2..samples.len() - 2].iter().map(|c| c.re).collect();
        let ratio = mz.iter().zip(&z).map(|(a, b)| a.re / b).collect();
        Ok((h, z, ratio))
    };
    let (_, z, coarse) = run(n_points)?;
    let (_, _, fine) = run(2 * n_points - 1)?;
    let zmax = z.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let lambda = state.eigenvalue();
    let scale = lambda.max(1.0);
    let (mut ec, mut ef, mut ex) = (0.0f64, 0.0f64, 0.0f64);
    let mut used = 0;
    for i in 0..z.len() {
        if z[i].abs() < 1e-3 * zmax {
            continue;
        }
        used += 1;
        let c = coarse[i];
        let f = fine[2 * i];
        let x = (16.0 * f - c) / 15.0;
        ec = ec.max((c - lambda).abs() / scale);
        ef = ef.max((f - lambda).abs() / scale);
        ex = ex.max((x - lambda).abs() / scale);
    }
    Ok(MOperatorCheck {
        eigenvalue: lambda,
        points: used,
        coarse_error: ec,
        fine_error: ef,
        extrapolated_error: ex,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::HalfInt;
    use std::f64::consts::PI;

    fn qn(n2: i64, j2: i64, m2: i64) -> QuantumNumbers {
        QuantumNumbers::new(
            HalfInt::from_twice(n2),
            HalfInt::from_twice(j2),
            HalfInt::from_twice(m2),
        )
    }

    #[test]
    fn y00_constant() {
        let st = AngularState::new(&PhysParams::atomic(Geometry::Flat), &qn(2, 0, 0)).unwrap();
        for &(t, f) in &[(0.3, 0.0), (2.0, 4.0)] {
            let z = z_eval(&st, t, f);
            assert!((z.re - 0.282_094_791_773_878_1).abs() < 1e-15);
            assert!(z.im.abs() < 1e-15);
        }
    }

    #[test]
    fn y10_matches_spherical_harmonic() {
        let st = AngularState::new(&PhysParams::atomic(Geometry::Flat), &qn(4, 2, 0)).unwrap();
        for &t in &[0.1, 1.0, 2.5] {
            let y = (3.0 / (4.0 * PI)).sqrt() * f64::cos(t);
            assert!((st.theta_part(t) - y).abs() < 1e-14);
        }
        let h = PI / 400.0;
        let theta0 = 0.5;
        let vals: Vec<Complex64> = (0..50)
            .map(|i| Complex64::new(st.theta_part(theta0 + i as f64 * h), 0.0))
            .collect();
        let m = apply_m_operator(&st.params, 0, theta0, h, &vals).unwrap();
        for (i, v) in m.iter().enumerate() {
            assert!((v.re - 2.0 * vals[i + 2].re).abs() < 1e-7);
        }
    }

    #[test]
    fn phase_and_j3() {
        let p = PhysParams::atomic(Geometry::Sphere)
            .with_monopole(HalfInt::HALF)
            .with_lambdas(0.2, 0.4);
        let st = AngularState::new(&p, &qn(9, 5, -3)).unwrap();
        assert_eq!(st.mode(), -2);
        let d = 0.77;
        let a = z_eval(&st, 1.1, 0.4);
        let b = z_eval(&st, 1.1, 0.4 + d);
        assert!((b - a * Complex64::from_polar(1.0, -2.0 * d)).norm() < 1e-15);
        let j3 = apply_j3(&p, st.mode(), &[a]);
        assert_eq!(j3[0], a * -1.5);
    }

    #[test]
    fn stencil_rejects_coarse_grids() {
        let p = PhysParams::atomic(Geometry::Flat);
        let v = vec![Complex64::new(1.0, 0.0); 4];
        assert!(matches!(apply_m_operator(&p, 0, 0.5, 0.1, &v), Err(Error::Config(_))));
        let v = vec![Complex64::new(1.0, 0.0); 6];
        assert!(matches!(apply_m_operator(&p, 0, -0.2, 0.05, &v), Err(Error::Config(_))));
    }

    #[test]
    fn eigenvalue_with_noninteger_exponents() {
        let p = PhysParams::atomic(Geometry::Flat)
            .with_monopole(HalfInt::ONE)
            .with_lambdas(0.75, 0.3);
        for j in 1..=4 {
            for m in -j..=j {
                let st = AngularState::new(&p, &qn(12, 2 * j, 2 * m)).unwrap();
                let c = check_m_operator(&st, 2000, 0.05).unwrap();
                assert!(c.extrapolated_error < 1e-6, "j={j} m={m}: {c:?}");
            }
        }
    }

    #[test]
    fn endpoint_log_slopes() {
        let p = PhysParams::atomic(Geometry::Flat)
            .with_monopole(HalfInt::HALF)
            .with_lambdas(0.5, 0.9);
        let st = AngularState::new(&p, &qn(9, 3, 1)).unwrap();
        let d = st.notation;
        let slope =
            |t1: f64, t2: f64, f: &dyn Fn(f64) -> f64| (f(t2).abs().ln() - f(t1).abs().ln()) / (t2.ln() - t1.ln());
        let near0 = slope(1e-6, 2e-6, &|t| st.theta_part(t));
        assert!((near0 - d.m2).abs() < 1e-5, "{near0} vs {}", d.m2);
        let near_pi = slope(1e-6, 2e-6, &|u| st.theta_part(PI - u));
        assert!((near_pi - d.m1).abs() < 1e-5, "{near_pi} vs {}", d.m1);
    }

    #[test]
    fn invalid_states_rejected() {
        let p = PhysParams::atomic(Geometry::Flat).with_monopole(HalfInt::HALF);
        assert!(matches!(AngularState::new(&p, &qn(4, 0, 0)), Err(Error::Invalid(_))));
    }
}
