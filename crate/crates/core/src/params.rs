//! Physical parameters, exact half-integer quantum numbers and the derived
//! notation block (m1, m2, m+, delta, j~, sigma, kappa) shared by every
//! geometry.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A half-integer stored as twice its value, so `s`, `m`, `j` and `n`
/// add and compare exactly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn from_int(k: i64) -> Self {
        HalfInt { twice: 2 * k }
    }

    /// `None` unless `2x` is an integer.
    pub fn from_f64(x: f64) -> Option<Self> {
        let t = 2.0 * x;
        if t.is_finite() && t.fract() == 0.0 && t.abs() < 9.0e15 {
            Some(HalfInt { twice: t as i64 })
        } else {
            None
        }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn to_f64(self) -> f64 {
        self.twice as f64 * 0.5
    }

    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    pub const fn abs(self) -> Self {
        HalfInt {
            twice: self.twice.abs(),
        }
    }

    /// The integer value, if this is an integer.
    pub const fn as_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for HalfInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HalfInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.twice.cmp(&other.twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: Self) -> Self {
        HalfInt {
            twice: self.twice + rhs.twice,
        }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: Self) -> Self {
        HalfInt {
            twice: self.twice - rhs.twice,
        }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> Self {
        HalfInt { twice: -self.twice }
    }
}

impl From<i64> for HalfInt {
    fn from(k: i64) -> Self {
        HalfInt::from_int(k)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not a half-integer: {0:?}")]
pub struct ParseHalfIntError(String);

impl FromStr for HalfInt {
    type Err = ParseHalfIntError;

    /// Accepts `"3"`, `"-1/2"`, `"1.5"`; anything that is not an exact
    /// half-integer is rejected.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseHalfIntError(s.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let num: i64 = num.trim().parse().map_err(|_| err())?;
            match den.trim() {
                "1" => Ok(HalfInt::from_int(num)),
                "2" => Ok(HalfInt::from_twice(num)),
                _ => Err(err()),
            }
        } else if let Ok(k) = t.parse::<i64>() {
            Ok(HalfInt::from_int(k))
        } else {
            let x: f64 = t.parse().map_err(|_| err())?;
            HalfInt::from_f64(x).ok_or_else(err)
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_f64(self.to_f64())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Geometry {
    Flat,
    Sphere,
    Hyperboloid,
}

impl Geometry {
    /// The sign in `g(r) = (1 + eps r^2 / 4R0^2)^-2`; zero for flat space.
    pub fn curvature_sign(self) -> f64 {
        match self {
            Geometry::Flat => 0.0,
            Geometry::Sphere => 1.0,
            Geometry::Hyperboloid => -1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Geometry::Flat => "flat",
            Geometry::Sphere => "sphere",
            Geometry::Hyperboloid => "hyperboloid",
        }
    }
}

impl FromStr for Geometry {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "flat" | "euclidean" => Ok(Geometry::Flat),
            "sphere" | "s3" => Ok(Geometry::Sphere),
            "hyperboloid" | "pseudosphere" | "h3" => Ok(Geometry::Hyperboloid),
            other => Err(Error::Config(format!("unknown geometry {other:?}"))),
        }
    }
}

impl fmt::Display for Geometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Physical constants and couplings. Defaults are atomic units
/// (`mu = hbar = e2 = 1`).
///
/// `lambda1`, `lambda2` multiply `1/(r(r+x3))` and `1/(r(r-x3))` and carry
/// units of energy times length squared.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhysParams {
    pub mu: f64,
    pub hbar: f64,
    pub e2: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub s: HalfInt,
    pub geometry: Geometry,
    /// Curvature radius R0; ignored in flat space.
    pub r_curv: f64,
}

impl PhysParams {
    pub fn atomic(geometry: Geometry) -> Self {
        PhysParams {
            mu: 1.0,
            hbar: 1.0,
            e2: 1.0,
            lambda1: 0.0,
            lambda2: 0.0,
            s: HalfInt::ZERO,
            geometry,
            r_curv: 1.0,
        }
    }

    pub fn with_monopole(mut self, s: HalfInt) -> Self {
        self.s = s;
        self
    }

    pub fn with_lambdas(mut self, lambda1: f64, lambda2: f64) -> Self {
        self.lambda1 = lambda1;
        self.lambda2 = lambda2;
        self
    }

    pub fn with_radius(mut self, r_curv: f64) -> Self {
        self.r_curv = r_curv;
        self
    }

    pub fn with_geometry(mut self, geometry: Geometry) -> Self {
        self.geometry = geometry;
        self
    }

    pub fn with_units(mut self, mu: f64, hbar: f64, e2: f64) -> Self {
        self.mu = mu;
        self.hbar = hbar;
        self.e2 = e2;
        self
    }

    /// Bohr radius `hbar^2 / (mu e2)`; infinite when `e2 = 0`.
    pub fn bohr_radius(&self) -> f64 {
        self.hbar * self.hbar / (self.mu * self.e2)
    }

    /// The dimensionless couplings `4 mu lambda_i / hbar^2`.
    pub fn reduced_couplings(&self) -> (f64, f64) {
        let k = 4.0 * self.mu / (self.hbar * self.hbar);
        (k * self.lambda1, k * self.lambda2)
    }

    /// `R0 / r0`, the Coulomb strength measured in curvature units.
    pub fn coulomb_strength(&self) -> f64 {
        self.r_curv / self.bohr_radius()
    }

    /// Kinetic energy unit `hbar^2 / (2 mu L^2)` with `L = R0` (curved) or 1.
    pub fn kinetic_unit(&self) -> f64 {
        let l2 = match self.geometry {
            Geometry::Flat => 1.0,
            _ => self.r_curv * self.r_curv,
        };
        self.hbar * self.hbar / (2.0 * self.mu * l2)
    }

    /// Violated parameter rules, independent of any state.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        self.parameter_violations(&mut out);
        out
    }

    fn parameter_violations(&self, out: &mut Vec<Violation>) {
        let mut check = |name: &'static str, value: f64, ok: bool| {
            if !ok {
                out.push(Violation::Parameter { name, value });
            }
        };
        check("mu", self.mu, self.mu.is_finite() && self.mu > 0.0);
        check("hbar", self.hbar, self.hbar.is_finite() && self.hbar > 0.0);
        check("e2", self.e2, self.e2.is_finite() && self.e2 >= 0.0);
        check("lambda1", self.lambda1, self.lambda1.is_finite() && self.lambda1 >= 0.0);
        check("lambda2", self.lambda2, self.lambda2.is_finite() && self.lambda2 >= 0.0);
        if self.geometry != Geometry::Flat {
            check("r_curv", self.r_curv, self.r_curv.is_finite() && self.r_curv > 0.0);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QuantumNumbers {
    pub n: HalfInt,
    pub j: HalfInt,
    pub m: HalfInt,
}

impl QuantumNumbers {
    pub fn new(n: HalfInt, j: HalfInt, m: HalfInt) -> Self {
        QuantumNumbers { n, j, m }
    }

    /// Degree `n - j - 1` of every terminating series; `None` if negative or
    /// fractional.
    pub fn radial_degree(&self) -> Option<usize> {
        (self.n - self.j - HalfInt::ONE)
            .as_integer()
            .and_then(|k| usize::try_from(k).ok())
    }
}

impl fmt::Display for QuantumNumbers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(n={}, j={}, m={})", self.n, self.j, self.m)
    }
}

/// A violated validity rule.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Violation {
    Parameter {
        name: &'static str,
        value: f64,
    },
    /// `m - s` must be an integer for `exp(i(m-s)phi)` to be single valued.
    MonopoleParity {
        m: HalfInt,
        s: HalfInt,
    },
    /// `n - |s|` must be a positive integer.
    PrincipalRange {
        n: HalfInt,
        s: HalfInt,
    },
    JBelowMPlus {
        j: HalfInt,
        m_plus: HalfInt,
    },
    JOffLattice {
        j: HalfInt,
        m_plus: HalfInt,
    },
    JAboveNMinusOne {
        j: HalfInt,
        n: HalfInt,
    },
    MOutOfRange {
        m: HalfInt,
        j: HalfInt,
    },
    /// Hyperboloid only: the quasi-radial function is not normalizable.
    NoBoundState {
        n_eff: f64,
        sigma: f64,
    },
    /// Bound states need an attractive Coulomb term.
    NoCoulombCoupling,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Parameter { name, value } => write!(f, "parameter {name} = {value} out of range"),
            Violation::MonopoleParity { m, s } => write!(f, "m - s = {} is not an integer", *m - *s),
            Violation::PrincipalRange { n, s } => {
                write!(f, "n - |s| = {} is not a positive integer", *n - s.abs())
            }
            Violation::JBelowMPlus { j, m_plus } => write!(f, "j = {j} is below m+ = {m_plus}"),
            Violation::JOffLattice { j, m_plus } => {
                write!(f, "j - m+ = {} is not an integer", *j - *m_plus)
            }
            Violation::JAboveNMinusOne { j, n } => write!(f, "j = {j} exceeds n - 1 = {}", *n - HalfInt::ONE),
            Violation::MOutOfRange { m, j } => write!(f, "m = {m} is not in -j..=j for j = {j}"),
            Violation::NoBoundState { n_eff, sigma } => {
                write!(f, "not normalizable: sigma = {sigma} <= n + delta = {n_eff}")
            }
            Violation::NoCoulombCoupling => f.write_str("e2 = 0 admits no bound states"),
        }
    }
}

/// The notation block computed from parameters and quantum numbers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DerivedNotation {
    pub m1: f64,
    pub m2: f64,
    pub m_plus: HalfInt,
    pub delta: f64,
    /// `j + delta`.
    pub j_tilde: f64,
    /// `n + delta`.
    pub n_eff: f64,
    /// `R0 / (r0 (n + delta))`, curved geometries only.
    pub sigma: Option<f64>,
    /// `1 / (r0 (n + delta))`, flat space only.
    pub kappa: Option<f64>,
}

impl DerivedNotation {
    /// `x + c * delta` with `x` an exact half-integer, adding the irrational
    /// part last.
    pub fn shifted(&self, x: HalfInt, c: f64) -> f64 {
        x.to_f64() + c * self.delta
    }
}

/// `(m1, m2, m+, delta)` for a channel. These depend on `m` and `s` only.
pub fn channel_exponents(p: &PhysParams, m: HalfInt) -> (f64, f64, HalfInt, f64) {
    let (c1, c2) = p.reduced_couplings();
    let dm = (m - p.s).to_f64();
    let sm = (m + p.s).to_f64();
    let m1 = (dm * dm + c1).sqrt();
    let m2 = (sm * sm + c2).sqrt();
    // (|m+s| + |m-s|)/2 == max(|m|, |s|)
    let m_plus = m.abs().max(p.s.abs());
    let delta = 0.5 * (m1 + m2) - m_plus.to_f64();
    (m1, m2, m_plus, delta)
}

/// Every violated rule; empty when `(p, q)` is a valid state.
pub fn validate(p: &PhysParams, q: &QuantumNumbers) -> Vec<Violation> {
    let mut out = Vec::new();
    p.parameter_violations(&mut out);
    let s = p.s;
    if !(q.m - s).is_integer() {
        out.push(Violation::MonopoleParity { m: q.m, s });
    }
    let n_rel = q.n - s.abs();
    if !n_rel.is_integer() || n_rel < HalfInt::ONE {
        out.push(Violation::PrincipalRange { n: q.n, s });
    }
    let m_plus = q.m.abs().max(s.abs());
    if q.j < m_plus {
        out.push(Violation::JBelowMPlus { j: q.j, m_plus });
    } else if !(q.j - m_plus).is_integer() {
        out.push(Violation::JOffLattice { j: q.j, m_plus });
    }
    if q.j > q.n - HalfInt::ONE {
        out.push(Violation::JAboveNMinusOne { j: q.j, n: q.n });
    }
    if q.m.abs() > q.j || !(q.j - q.m).is_integer() {
        out.push(Violation::MOutOfRange { m: q.m, j: q.j });
    }
    if out.is_empty() && p.geometry == Geometry::Hyperboloid {
        if p.e2 == 0.0 {
            out.push(Violation::NoCoulombCoupling);
        } else {
            let (_, _, _, delta) = channel_exponents(p, q.m);
            let n_eff = q.n.to_f64() + delta;
            let sigma = p.coulomb_strength() / n_eff;
            if sigma <= n_eff {
                out.push(Violation::NoBoundState { n_eff, sigma });
            }
        }
    }
    out
}

/// Validates, then computes the notation block.
pub fn derive_notation(p: &PhysParams, q: &QuantumNumbers) -> Result<DerivedNotation> {
    let violations = validate(p, q);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    Ok(notation_unchecked(p, q))
}

/// The notation block without validity checks; `sigma` is still defined for
/// hyperboloid levels that are not bound.
pub fn notation_unchecked(p: &PhysParams, q: &QuantumNumbers) -> DerivedNotation {
    let (m1, m2, m_plus, delta) = channel_exponents(p, q.m);
    let n_eff = q.n.to_f64() + delta;
    let (sigma, kappa) = match p.geometry {
        Geometry::Flat => (None, Some(1.0 / (p.bohr_radius() * n_eff))),
        Geometry::Sphere | Geometry::Hyperboloid => (Some(p.coulomb_strength() / n_eff), None),
    };
    DerivedNotation {
        m1,
        m2,
        m_plus,
        delta,
        j_tilde: q.j.to_f64() + delta,
        n_eff,
        sigma,
        kappa,
    }
}

/// All kinematically valid `(j, m)` at principal number `n`, in
/// lexicographic `(j, m)` order. Curvature-dependent admission (hyperboloid
/// normalizability) is not applied here.
pub fn level_states(s: HalfInt, n: HalfInt) -> Vec<QuantumNumbers> {
    let mut out = Vec::new();
    let n_rel = n - s.abs();
    if !n_rel.is_integer() || n_rel < HalfInt::ONE {
        return out;
    }
    let mut j = s.abs();
    while j <= n - HalfInt::ONE {
        let mut m = -j;
        while m <= j {
            out.push(QuantumNumbers::new(n, j, m));
            m = m + HalfInt::ONE;
        }
        j = j + HalfInt::ONE;
    }
    out
}

/// Principal numbers `|s|+1, |s|+2, ...` not exceeding `n_max`.
pub fn principal_numbers(s: HalfInt, n_max: HalfInt) -> Vec<HalfInt> {
    let mut out = Vec::new();
    let mut n = s.abs() + HalfInt::ONE;
    while n <= n_max {
        out.push(n);
        n = n + HalfInt::ONE;
    }
    out
}
