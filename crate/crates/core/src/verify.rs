//! Verification suites: the closed forms checked against the quadrature,
//! ODE-residual and eigen-solver oracles, flat-limit behaviour, exact
//! reductions to hydrogen, and the special-function identities the
//! normalization constants rest on.

use std::cell::RefCell;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::angular::{apply_j3, check_m_operator, AngularState};
use crate::error::{Error, Result};
use crate::flat::FlatBoundState;
use crate::geometry;
use crate::hyperboloid;
use crate::oracle::{
    count_bound_levels, integrate_pieces, limit_study, ode_residual, solve_angular, solve_quasi_radial,
    wavefunction_limit, GridOptions, QuasiRadialChannel, SolveOptions, Spacing, Tolerance,
};
use crate::params::{channel_exponents, level_states, Geometry, HalfInt, PhysParams, QuantumNumbers};
use crate::specfun::{hyp3f2_unit_terminating, log_gamma_signed, pochhammer_complex, sine_power_integral};
use crate::sphere::SphereBoundState;
use crate::state::BoundState;

pub const NORMALIZATION_TOL: f64 = 1e-8;
pub const ORTHOGONALITY_TOL: f64 = 1e-8;
pub const RESIDUAL_TOL: f64 = 1e-6;
pub const ANGULAR_TOL: f64 = 1e-6;
pub const ORACLE_TOL: f64 = 1e-6;
pub const LIMIT_EXACT_TOL: f64 = 1e-10;
pub const LIMIT_RATIO_TOL: f64 = 0.2;
pub const REDUCTION_ULPS: f64 = 4.0;
pub const IDENTITY_TOL: f64 = 1e-11;
pub const REALITY_TOL: f64 = 1e-10;
pub const REPRESENTATION_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Normalization,
    Orthogonality,
    OdeResidual,
    Oracle,
    Limits,
    Reductions,
    Identities,
}

impl Suite {
    pub const ALL: [Suite; 7] = [
        Suite::Normalization,
        Suite::Orthogonality,
        Suite::OdeResidual,
        Suite::Oracle,
        Suite::Limits,
        Suite::Reductions,
        Suite::Identities,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Normalization => "normalization",
            Suite::Orthogonality => "orthogonality",
            Suite::OdeResidual => "ode-residual",
            Suite::Oracle => "oracle",
            Suite::Limits => "limits",
            Suite::Reductions => "reductions",
            Suite::Identities => "identities",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown suite {s:?}")))
    }
}

/// One measured quantity against its tolerance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Check {
    pub fn new(suite: Suite, name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Check {
            suite,
            name: name.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
            note: None,
        }
    }

    fn from_result(suite: Suite, name: impl Into<String>, measured: Result<f64>, tolerance: f64) -> Self {
        match measured {
            Ok(m) => Check::new(suite, name, m, tolerance),
            Err(e) => Check::new(suite, name, f64::NAN, tolerance).with_note(e.to_string()),
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VerifyConfig {
    /// Restrict geometry-dependent checks to one geometry.
    pub geometry: Option<Geometry>,
    /// Randomized states per geometry.
    pub states: usize,
    pub seed: u64,
    /// Multiplies every tolerance.
    pub tolerance_scale: f64,
    pub n_max: HalfInt,
    /// Coarsest eigen-solver grid.
    pub cells: usize,
    /// Randomized instances per identity.
    pub instances: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            geometry: None,
            states: 60,
            seed: 20_240_601,
            tolerance_scale: 1.0,
            n_max: HalfInt::from_int(6),
            cells: 4000,
            instances: 100,
        }
    }
}

impl VerifyConfig {
    fn tol(&self, t: f64) -> f64 {
        t * self.tolerance_scale
    }

    fn geometries(&self) -> Vec<Geometry> {
        match self.geometry {
            Some(g) => vec![g],
            None => vec![Geometry::Flat, Geometry::Sphere, Geometry::Hyperboloid],
        }
    }

    fn includes(&self, g: Geometry) -> bool {
        self.geometry.map_or(true, |x| x == g)
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Check> {
    let mut checks = match suite {
        Suite::Normalization => normalization_checks(cfg),
        Suite::Orthogonality => orthogonality_checks(cfg),
        Suite::OdeResidual => radial_residual_checks(cfg),
        Suite::Oracle => oracle_level_checks(cfg),
        Suite::Limits => flat_limit_checks(cfg),
        Suite::Reductions => hydrogen_reduction_checks(cfg),
        Suite::Identities => identity_checks(cfg),
    };
    checks.extend(match suite {
        Suite::OdeResidual => angular_operator_checks(cfg),
        Suite::Oracle => bound_count_checks(cfg),
        Suite::Reductions => degeneracy_checks(cfg),
        Suite::Identities => sphere_reality_checks(cfg),
        _ => Vec::new(),
    });
    checks
}

pub fn run_all(cfg: &VerifyConfig) -> Vec<Check> {
    Suite::ALL.iter().flat_map(|&s| run_suite(s, cfg)).collect()
}

/// A parameter set and quantum numbers.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Sample {
    pub params: PhysParams,
    pub q: QuantumNumbers,
}

impl fmt::Display for Sample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.params;
        write!(
            f,
            "{} s={} l=({:.3},{:.3}) R0={:.3} {}",
            p.geometry, p.s, p.lambda1, p.lambda2, p.r_curv, self.q
        )
    }
}

/// Random valid states with `n ≤ n_max`: monopole numbers up to `3/2`,
/// couplings in `[0, 1.5)` (each zero a third of the time), units within a
/// factor two of atomic. Hyperboloid radii put `σ - n - δ` in `[0.5, 3)`.
pub fn random_states(geometry: Geometry, count: usize, seed: u64, n_max: HalfInt) -> Vec<Sample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (geometry as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let s = HalfInt::from_twice(rng.gen_range(0..4) * if rng.gen_bool(0.5) { 1 } else { -1 });
        let top = (n_max - s.abs()).to_f64().floor() as i64;
        if top < 1 {
            continue;
        }
        let n = s.abs() + HalfInt::from_int(rng.gen_range(1..=top));
        let j = s.abs() + HalfInt::from_int(rng.gen_range(0..(n - s.abs()).to_f64() as i64));
        let m = -j + HalfInt::from_int(rng.gen_range(0..=j.twice()));
        let mut coupling = || {
            if rng.gen_range(0..3) == 0 {
                0.0
            } else {
                rng.gen_range(0.0..1.5)
            }
        };
        let (l1, l2) = (coupling(), coupling());
        let (mu, hbar, e2) = (
            rng.gen_range(0.5..2.0),
            rng.gen_range(0.8..1.25),
            rng.gen_range(0.5..2.0),
        );
        let mut p = PhysParams::atomic(geometry)
            .with_units(mu, hbar, e2)
            .with_monopole(s)
            .with_lambdas(l1, l2);
        let q = QuantumNumbers::new(n, j, m);
        let r0 = p.bohr_radius();
        p = match geometry {
            Geometry::Flat => p,
            Geometry::Sphere => p.with_radius(r0 * rng.gen_range(0.5..8.0)),
            Geometry::Hyperboloid => {
                let (_, _, _, delta) = channel_exponents(&p, m);
                let n_eff = n.to_f64() + delta;
                p.with_radius(r0 * n_eff * (n_eff + rng.gen_range(0.5..3.0)))
            }
        };
        if crate::params::validate(&p, &q).is_empty() {
            out.push(Sample { params: p, q });
        }
    }
    out
}

/// Runs `f` under an integral, turning the first evaluation error into the
/// result.
fn guarded_integral<F>(f: F, a: f64, b: f64, pieces: usize, tol: Tolerance) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let g = |x: f64| match f(x) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let result = integrate_pieces(g, a, b, pieces, tol);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(result?.value)
}

/// Quadrature tolerance for overlaps of normalized functions: relative for
/// norms, absolute for the (vanishing) cross terms.
fn overlap_tolerance(same: bool) -> Tolerance {
    if same {
        Tolerance::new(1e-15, 1e-12)
    } else {
        Tolerance::new(1e-12, 1e-12)
    }
}

/// `∫ measure · R_a R_b` over the radial domain.
pub fn radial_overlap(a: &BoundState, b: &BoundState) -> Result<f64> {
    let end = a.extent()?.max(b.extent()?);
    let tol = overlap_tolerance(a == b);
    guarded_integral(|x| Ok(a.measure(x) * a.radial(x)? * b.radial(x)?), 0.0, end, 32, tol)
}

/// `2π ∫ Θ_a Θ_b sinθ dθ`.
pub fn angular_overlap(a: &AngularState, b: &AngularState) -> Result<f64> {
    let tol = overlap_tolerance(a == b);
    let v = guarded_integral(|t| Ok(a.theta_part(t) * b.theta_part(t) * t.sin()), 0.0, PI, 16, tol)?;
    Ok(2.0 * PI * v)
}

/// Radial and angular norms of random states.
pub fn normalization_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Normalization;
    cfg.geometries()
        .into_iter()
        .flat_map(|g| random_states(g, cfg.states, cfg.seed, cfg.n_max))
        .collect::<Vec<_>>()
        .par_iter()
        .flat_map_iter(|sample| {
            let radial = BoundState::new(&sample.params, &sample.q).and_then(|st| Ok(radial_overlap(&st, &st)? - 1.0));
            let angular = AngularState::new(&sample.params, &sample.q).and_then(|z| Ok(angular_overlap(&z, &z)? - 1.0));
            [
                Check::from_result(
                    suite,
                    format!("radial norm {sample}"),
                    radial.map(f64::abs),
                    cfg.tol(NORMALIZATION_TOL),
                ),
                Check::from_result(
                    suite,
                    format!("angular norm {sample}"),
                    angular.map(f64::abs),
                    cfg.tol(NORMALIZATION_TOL),
                ),
            ]
        })
        .collect()
}

/// Radial overlaps within random `(j, m)` channels and angular overlaps at
/// different `j`.
pub fn orthogonality_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Orthogonality;
    let mut jobs = Vec::new();
    for g in cfg.geometries() {
        for sample in random_states(g, cfg.states.min(12), cfg.seed.wrapping_add(1), cfg.n_max) {
            // every bound n in the sample's (j, m) channel
            let channel: Vec<BoundState> = (0..)
                .map(|i| sample.q.j + HalfInt::from_int(i + 1))
                .take_while(|&n| n <= cfg.n_max)
                .filter_map(|n| BoundState::new(&sample.params, &QuantumNumbers::new(n, sample.q.j, sample.q.m)).ok())
                .collect();
            for i in 0..channel.len() {
                for k in i + 1..channel.len() {
                    jobs.push((sample, channel[i], channel[k]));
                }
            }
        }
    }
    let mut checks: Vec<Check> = jobs
        .par_iter()
        .map(|(sample, a, b)| {
            Check::from_result(
                suite,
                format!(
                    "radial n={} vs n={} {sample}",
                    a.quantum_numbers().n,
                    b.quantum_numbers().n
                ),
                radial_overlap(a, b).map(f64::abs),
                cfg.tol(ORTHOGONALITY_TOL),
            )
        })
        .collect();
    // angular functions of one (s, λ, m) with different j
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(2));
    let mut angular_jobs = Vec::new();
    for s2 in 0..4 {
        let s = HalfInt::from_twice(s2);
        let p = PhysParams::atomic(Geometry::Flat)
            .with_monopole(s)
            .with_lambdas(rng.gen_range(0.0..1.5), rng.gen_range(0.0..1.5));
        let m = s - HalfInt::from_int(rng.gen_range(-1..=1));
        let m_plus = m.abs().max(s.abs());
        let js: Vec<HalfInt> = (0..5).map(|i| m_plus + HalfInt::from_int(i)).collect();
        for (i, &ja) in js.iter().enumerate() {
            for &jb in &js[i + 1..] {
                let n = jb + HalfInt::ONE;
                angular_jobs.push((p, QuantumNumbers::new(n, ja, m), QuantumNumbers::new(n, jb, m)));
            }
        }
    }
    let angular: Vec<Check> = angular_jobs
        .par_iter()
        .map(|(p, qa, qb)| {
            let v = AngularState::new(p, qa).and_then(|a| angular_overlap(&a, &AngularState::new(p, qb)?));
            Check::from_result(
                suite,
                format!("angular j={} vs j={} s={} m={}", qa.j, qb.j, p.s, qa.m),
                v.map(f64::abs),
                cfg.tol(ORTHOGONALITY_TOL),
            )
        })
        .collect();
    checks.extend(angular);
    checks
}

/// Relative residual of the quasi-radial equation
/// `R'' + 2(h'/h) R' + [(E - V)/K - ĵ(ĵ+1)/h²] R = 0` for `h = r, sinχ, sinhτ`.
pub fn radial_residual(st: &BoundState) -> Result<f64> {
    let p = *st.params();
    let g = p.geometry;
    let unit = p.kinetic_unit();
    let energy = st.energy();
    let jt = st.notation().j_tilde;
    let lambda = jt * (jt + 1.0);
    let a = move |x: f64| 2.0 * geometry::radial_scale_log_derivative(g, x);
    let b = move |x: f64| {
        (energy - geometry::quasi_radial_coulomb(&p, x)) / unit
            - lambda * (-2.0 * geometry::ln_radial_scale(g, x)).exp()
    };
    let y = |x: f64| st.radial(x);
    let residual = match st {
        BoundState::Flat(s) => ode_residual(y, a, b, 0.05 / s.kappa, 40.0 / s.kappa, 2000, Spacing::Geometric)?,
        BoundState::Sphere(_) => ode_residual(y, a, b, 0.05, PI - 0.05, 2000, Spacing::Uniform)?,
        BoundState::Hyperboloid(s) => {
            let end = st.extent()?.min(0.05 + 40.0 / s.decay_rate());
            let h = (0.05 / (s.sigma() + jt + 1.0)).min(0.005);
            let points = ((end - 0.05) / h).ceil() as usize + 1;
            ode_residual(y, a, b, 0.05, end, points, Spacing::Uniform)?
        }
    };
    Ok(residual.relative)
}

/// Quasi-radial equation residuals of random states.
pub fn radial_residual_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::OdeResidual;
    let samples: Vec<Sample> = cfg
        .geometries()
        .into_iter()
        .flat_map(|g| random_states(g, cfg.states, cfg.seed, cfg.n_max))
        .collect();
    samples
        .par_iter()
        .map(|sample| {
            let r = BoundState::new(&sample.params, &sample.q).and_then(|st| radial_residual(&st));
            Check::from_result(suite, format!("radial residual {sample}"), r, cfg.tol(RESIDUAL_TOL))
        })
        .collect()
}

/// The angular test matrix: `s ∈ {0, ±1/2, 1, 3/2}`, three coupling pairs,
/// every `(j, m)` with `j ≤ 4`.
pub fn angular_matrix() -> Vec<(PhysParams, QuantumNumbers)> {
    let mut out = Vec::new();
    for s2 in [0, 1, -1, 2, 3] {
        let s = HalfInt::from_twice(s2);
        for (l1, l2) in [(0.0, 0.0), (0.75, 0.0), (0.3, 1.2)] {
            let p = PhysParams::atomic(Geometry::Flat).with_monopole(s).with_lambdas(l1, l2);
            let mut j = s.abs();
            while j <= HalfInt::from_int(4) {
                let mut m = -j;
                while m <= j {
                    out.push((p, QuantumNumbers::new(j + HalfInt::ONE, j, m)));
                    m = m + HalfInt::ONE;
                }
                j = j + HalfInt::ONE;
            }
        }
    }
    out
}

/// `(M Z)/Z` against `ĵ(ĵ+1)` (extrapolated, relative), and `J3 Z = m Z`
/// (exact).
pub fn angular_operator_errors(p: &PhysParams, q: &QuantumNumbers) -> Result<(f64, f64)> {
    let z = AngularState::new(p, q)?;
    let m_check = check_m_operator(&z, 2000, 0.05)?;
    let thetas: Vec<f64> = (1..64).map(|i| i as f64 * PI / 64.0).collect();
    let values: Vec<Complex64> = thetas.iter().map(|&t| z.eval(t, 0.7)).collect();
    let j3 = apply_j3(p, z.mode(), &values);
    let m = q.m.to_f64();
    let j3_error = j3
        .iter()
        .zip(&values)
        .map(|(a, v)| (a - v * m).norm())
        .fold(0.0, f64::max);
    Ok((m_check.extrapolated_error, j3_error))
}

/// `M` and `J3` on every state of `angular_matrix`.
pub fn angular_operator_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::OdeResidual;
    angular_matrix()
        .par_iter()
        .flat_map_iter(|(p, q)| {
            let label = format!("s={} l=({},{}) j={} m={}", p.s, p.lambda1, p.lambda2, q.j, q.m);
            match angular_operator_errors(p, q) {
                Ok((m_err, j3_err)) => vec![
                    Check::new(suite, format!("angular M {label}"), m_err, cfg.tol(ANGULAR_TOL)),
                    Check::new(suite, format!("angular J3 {label}"), j3_err, 0.0),
                ],
                Err(e) => vec![Check::new(suite, format!("angular {label}"), f64::NAN, 0.0).with_note(e.to_string())],
            }
        })
        .collect()
}

/// Channels `(2s, λ1, λ2, 2m, 2j)` of the eigen-solver comparison.
pub const ORACLE_CHANNELS: [(i64, f64, f64, i64, i64); 6] = [
    (0, 0.0, 0.0, 0, 0),
    (0, 0.75, 0.0, 0, 0),
    (1, 0.0, 0.0, 1, 1),
    (1, 0.75, 0.75, 1, 1),
    (2, 0.0, 0.0, 0, 2),
    (2, 0.75, 0.0, 2, 2),
];

/// Ratios `R0/r0` of the hyperboloid bound-state count comparison.
pub const COUNT_STRENGTHS: [f64; 4] = [0.5, 4.41, 10.0, 100.0];

/// Result of comparing the closed-form levels of one channel with the
/// eigen-solver.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChannelComparison {
    pub analytic: Vec<f64>,
    pub oracle: Vec<f64>,
    /// Richardson error estimates of the oracle levels.
    pub oracle_errors: Vec<f64>,
    /// Numerical angular eigenvalue fed to the radial solver, and `ĵ(ĵ+1)`.
    pub angular_numeric: f64,
    pub angular_exact: f64,
    pub max_abs_difference: f64,
}

fn channel_params(
    geometry: Geometry,
    radius: f64,
    channel: (i64, f64, f64, i64, i64),
) -> (PhysParams, HalfInt, HalfInt) {
    let (s2, l1, l2, m2, j2) = channel;
    let p = PhysParams::atomic(geometry)
        .with_radius(radius)
        .with_monopole(HalfInt::from_twice(s2))
        .with_lambdas(l1, l2);
    (p, HalfInt::from_twice(m2), HalfInt::from_twice(j2))
}

/// The lowest `levels` energies of a `(m, j)` channel, closed form against
/// the eigen-solver. The radial solver is fed the angular eigenvalue from
/// the angular eigen-solver, not `ĵ(ĵ+1)`.
pub fn compare_channel(
    p: &PhysParams,
    m: HalfInt,
    j: HalfInt,
    levels: usize,
    cells: usize,
) -> Result<ChannelComparison> {
    let (_, _, m_plus, delta) = channel_exponents(p, m);
    let index = usize::try_from(
        (j - m_plus)
            .as_integer()
            .ok_or_else(|| Error::Config("j - m+ not integral".into()))?,
    )
    .map_err(|_| Error::Config("j below m+".into()))?;
    let mode = (m - p.s)
        .as_integer()
        .ok_or_else(|| Error::Config("m - s not integral".into()))?;
    let angular = solve_angular(p, mode, index + 1, GridOptions { cells });
    let lambda = *angular
        .eigenvalues
        .get(index)
        .ok_or_else(|| Error::Config("angular solver returned too few levels".into()))?;
    let jt = j.to_f64() + delta;
    let analytic: Vec<f64> = (1..=levels as i64)
        .map(|i| QuantumNumbers::new(j + HalfInt::from_int(i), j, m))
        .map_while(|q| BoundState::new(p, &q).ok().map(|st| st.energy()))
        .collect();
    let channel = QuasiRadialChannel::new(*p, lambda)?;
    let opts = SolveOptions {
        grid: GridOptions { cells },
        ..SolveOptions::default()
    };
    let result = solve_quasi_radial(&channel, levels, opts)?;
    let max_abs_difference = if result.eigenvalues.len() == analytic.len() {
        analytic
            .iter()
            .zip(&result.eigenvalues)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(ChannelComparison {
        analytic,
        oracle: result.eigenvalues,
        oracle_errors: result.errors,
        angular_numeric: lambda,
        angular_exact: jt * (jt + 1.0),
        max_abs_difference,
    })
}

/// Hyperboloid `(m, j)` channel counts: eigen-solver, normalizability and
/// the bracket condition.
pub fn compare_counts(p: &PhysParams, m: HalfInt, j: HalfInt, cells: usize) -> Result<(usize, usize, usize)> {
    let (_, _, _, delta) = channel_exponents(p, m);
    let jt = j.to_f64() + delta;
    let channel = QuasiRadialChannel::new(*p, jt * (jt + 1.0))?;
    let oracle = count_bound_levels(&channel, cells, 8.0)?;
    Ok((
        oracle,
        hyperboloid::bound_state_count(p, m, j),
        hyperboloid::bracket_condition_count(p, m, j),
    ))
}

/// Radius used for each geometry in the eigen-solver comparison.
pub fn oracle_radius(g: Geometry) -> f64 {
    match g {
        Geometry::Flat => 1.0,
        Geometry::Sphere => 2.0,
        Geometry::Hyperboloid => 100.0,
    }
}

/// Closed-form levels against the eigen-solver on `ORACLE_CHANNELS`.
pub fn oracle_level_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Oracle;
    let mut checks = Vec::new();
    for g in cfg.geometries() {
        // flat channels carry bound levels out to large r; three suffice
        let levels = if g == Geometry::Flat { 3 } else { 5 };
        for channel in ORACLE_CHANNELS {
            let (p, m, j) = channel_params(g, oracle_radius(g), channel);
            let label = format!(
                "{g} R0={} s={} l=({},{}) m={m} j={j}",
                p.r_curv, p.s, p.lambda1, p.lambda2
            );
            match compare_channel(&p, m, j, levels, cfg.cells) {
                Ok(c) => {
                    let angular = (c.angular_numeric - c.angular_exact).abs() / c.angular_exact.max(1.0);
                    checks.push(Check::new(
                        suite,
                        format!("angular eigenvalue {label}"),
                        angular,
                        cfg.tol(ANGULAR_TOL),
                    ));
                    let note = format!(
                        "{} levels; oracle error estimate {:.1e}",
                        c.analytic.len(),
                        c.oracle_errors.iter().fold(0.0f64, |a, &b| a.max(b))
                    );
                    checks.push(
                        Check::new(
                            suite,
                            format!("levels {label}"),
                            c.max_abs_difference,
                            cfg.tol(ORACLE_TOL),
                        )
                        .with_note(note),
                    );
                }
                Err(e) => {
                    checks.push(Check::new(suite, format!("levels {label}"), f64::NAN, 0.0).with_note(e.to_string()))
                }
            }
        }
    }
    checks
}

/// Hyperboloid bound-state counts: eigen-solver against normalizability,
/// with the bracket-condition count in the note.
pub fn bound_count_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Oracle;
    let mut checks = Vec::new();
    if cfg.includes(Geometry::Hyperboloid) {
        for beta in COUNT_STRENGTHS {
            for channel in ORACLE_CHANNELS {
                let (p, m, j) = channel_params(Geometry::Hyperboloid, beta, channel);
                let label = format!(
                    "count R0/r0={beta} s={} l=({},{}) m={m} j={j}",
                    p.s, p.lambda1, p.lambda2
                );
                checks.push(match compare_counts(&p, m, j, cfg.cells) {
                    Ok((oracle, norm, bracket)) => {
                        let flag = if bracket == norm {
                            ""
                        } else {
                            " (bracket condition disagrees)"
                        };
                        Check::new(suite, label, oracle.abs_diff(norm) as f64, 0.0)
                            .with_note(format!("oracle {oracle}, normalizable {norm}, bracket {bracket}{flag}"))
                    }
                    Err(e) => Check::new(suite, label, f64::NAN, 0.0).with_note(e.to_string()),
                });
            }
        }
    }
    checks
}

pub const LIMIT_RADII: [f64; 4] = [10.0, 20.0, 40.0, 80.0];

/// States `(2s, λ1, λ2, 2n, 2j, 2m)` of the flat-limit study.
pub const LIMIT_STATES: [(i64, f64, f64, i64, i64, i64); 3] =
    [(0, 0.0, 0.0, 4, 0, 0), (1, 0.75, 0.5, 3, 1, 1), (2, 0.3, 0.9, 4, 2, 0)];

fn limit_state(g: Geometry, entry: (i64, f64, f64, i64, i64, i64)) -> (PhysParams, QuantumNumbers) {
    let (s2, l1, l2, n2, j2, m2) = entry;
    let p = PhysParams::atomic(g)
        .with_monopole(HalfInt::from_twice(s2))
        .with_lambdas(l1, l2);
    let q = QuantumNumbers::new(
        HalfInt::from_twice(n2),
        HalfInt::from_twice(j2),
        HalfInt::from_twice(m2),
    );
    (p, q)
}

/// Energies and radial functions approaching the flat ones as `R0` grows.
pub fn flat_limit_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Limits;
    let mut checks = Vec::new();
    let curved: Vec<Geometry> = [Geometry::Sphere, Geometry::Hyperboloid]
        .into_iter()
        .filter(|&g| cfg.includes(g) || cfg.geometry == Some(Geometry::Flat))
        .collect();
    for g in curved {
        let offset = move |r: f64| if g == Geometry::Hyperboloid { 1.0 / r } else { 0.0 };
        for (i, entry) in LIMIT_STATES.into_iter().enumerate() {
            let (p, q) = limit_state(g, entry);
            let label = format!("{g} s={} l=({},{}) {q}", p.s, p.lambda1, p.lambda2);
            let flat = match FlatBoundState::new(&p.with_geometry(Geometry::Flat), &q) {
                Ok(f) => f,
                Err(e) => {
                    checks.push(Check::new(suite, label, f64::NAN, 0.0).with_note(e.to_string()));
                    continue;
                }
            };
            let report = limit_study(
                &LIMIT_RADII,
                |r| Ok(BoundState::new(&p.with_radius(r), &q)?.energy()),
                offset,
                flat.energy,
            );
            match report {
                Ok(report) => {
                    let ratios: Vec<String> = report
                        .rows
                        .iter()
                        .filter_map(|r| r.ratio)
                        .map(|r| format!("{r:.6}"))
                        .collect();
                    checks.push(
                        Check::new(
                            suite,
                            format!("energy ratio {label}"),
                            report.max_ratio_deviation(4.0),
                            cfg.tol(LIMIT_RATIO_TOL),
                        )
                        .with_note(format!("ratios {}", ratios.join(", "))),
                    );
                    if i == 0 {
                        // hydrogen n = 2: |E - offset - E_flat| = 3 K with K = 1/(2R0²)
                        let worst = report
                            .rows
                            .iter()
                            .map(|r| (r.difference - 1.5 / (r.radius * r.radius)).abs() / (1.5 / (r.radius * r.radius)))
                            .fold(0.0, f64::max);
                        checks.push(Check::new(
                            suite,
                            format!("energy difference 1.5/R0^2 {label}"),
                            worst,
                            cfg.tol(LIMIT_EXACT_TOL),
                        ));
                    }
                }
                Err(e) => checks.push(Check::new(suite, label.clone(), f64::NAN, 0.0).with_note(e.to_string())),
            }
            let grid: Vec<f64> = (0..=99).map(|k| 0.1 + k as f64 * 0.1).collect();
            let sup = wavefunction_limit(
                &LIMIT_RADII,
                &grid,
                |r0, r| BoundState::new(&p.with_radius(r0), &q)?.radial(r / r0),
                |r| flat.radial(r),
            );
            checks.push(match sup {
                Ok(sup) => {
                    // must shrink at least like 1/R0 across the sequence
                    let first = sup[0].1;
                    let last = sup[sup.len() - 1].1;
                    let shrink = last / first;
                    let bound = cfg.tol(LIMIT_RADII[0] / LIMIT_RADII[LIMIT_RADII.len() - 1]);
                    let monotone = sup.windows(2).all(|w| w[1].1 < w[0].1);
                    let measured = if monotone { shrink } else { f64::INFINITY };
                    let values: Vec<String> = sup.iter().map(|(_, v)| format!("{v:.3e}")).collect();
                    Check::new(suite, format!("wavefunction sup-norm shrink {label}"), measured, bound).with_note(
                        format!("sup |R_curved - R_flat| on r in [0.1, 10]: {}", values.join(", ")),
                    )
                }
                Err(e) => Check::new(suite, format!("wavefunction {label}"), f64::NAN, 0.0).with_note(e.to_string()),
            });
        }
    }
    checks
}

/// Distance in units in the last place.
pub fn ulps(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    if a.is_sign_negative() != b.is_sign_negative() || !a.is_finite() || !b.is_finite() {
        return f64::INFINITY;
    }
    a.to_bits().abs_diff(b.to_bits()) as f64
}

/// Hydrogen closed forms in the three geometries, in the grouping
/// `±K(n²-1) - μe⁴/(2ħ²n²) [+ e²/R0]` with `K = ħ²/(2μR0²)`.
pub fn hydrogen_energy(p: &PhysParams, n: f64) -> f64 {
    let coulomb = p.mu * p.e2 * p.e2 / (2.0 * p.hbar * p.hbar * n * n);
    let k = p.hbar * p.hbar / (2.0 * p.mu * p.r_curv * p.r_curv);
    match p.geometry {
        Geometry::Flat => -coulomb,
        Geometry::Sphere => k * (n * n - 1.0) - coulomb,
        Geometry::Hyperboloid => -k * (n * n - 1.0) - coulomb + p.e2 / p.r_curv,
    }
}

/// `s = λ = 0` energies against the hydrogen closed forms, in ulps.
pub fn hydrogen_reduction_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Reductions;
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(3));
    for g in cfg.geometries() {
        let mut worst = 0.0f64;
        let mut count = 0;
        for _ in 0..20 {
            let p = PhysParams::atomic(g)
                .with_units(
                    rng.gen_range(0.5..2.0),
                    rng.gen_range(0.8..1.25),
                    rng.gen_range(0.5..2.0),
                )
                .with_radius(rng.gen_range(5.0..200.0));
            for n in 1..=10 {
                for q in level_states(HalfInt::ZERO, HalfInt::from_int(n)) {
                    let Ok(st) = BoundState::new(&p, &q) else { continue };
                    worst = worst.max(ulps(st.energy(), hydrogen_energy(&p, n as f64)));
                    count += 1;
                }
            }
        }
        checks.push(
            Check::new(
                suite,
                format!("{g} hydrogen closed form (ulps)"),
                worst,
                cfg.tol(REDUCTION_ULPS),
            )
            .with_note(format!("{count} states")),
        );
    }
    checks
}

/// Flat and sphere energies are independent of `j`; hydrogen level `n`
/// holds `n²` states.
pub fn degeneracy_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Reductions;
    let mut checks = Vec::new();
    for g in cfg.geometries().into_iter().filter(|&g| g != Geometry::Hyperboloid) {
        let mut worst = 0.0f64;
        for sample in random_states(g, cfg.states, cfg.seed.wrapping_add(4), cfg.n_max) {
            let (p, q) = (sample.params, sample.q);
            let Ok(reference) = BoundState::new(&p, &q).map(|s| s.energy()) else {
                continue;
            };
            let mut j = q.m.abs().max(p.s.abs());
            while j <= q.n - HalfInt::ONE {
                if let Ok(st) = BoundState::new(&p, &QuantumNumbers::new(q.n, j, q.m)) {
                    worst = worst.max((st.energy() - reference).abs() / reference.abs());
                }
                j = j + HalfInt::ONE;
            }
        }
        checks.push(Check::new(suite, format!("{g} energy independent of j"), worst, 0.0));
    }
    let worst = (1..=10)
        .map(|n| (level_states(HalfInt::ZERO, HalfInt::from_int(n)).len() as i64 - n * n).abs())
        .max()
        .unwrap_or(0);
    checks.push(Check::new(
        suite,
        "hydrogen level multiplicity n^2 (n <= 10)",
        worst as f64,
        0.0,
    ));
    checks
}

/// `Γ(x)` as `(ln|Γ|, sign)`.
fn gamma_parts(x: f64) -> Result<(f64, f64)> {
    log_gamma_signed(x)
}

fn gamma_ratio(num: f64, den: f64) -> Result<f64> {
    let (ln_a, sa) = gamma_parts(num)?;
    let (ln_b, sb) = gamma_parts(den)?;
    Ok((ln_a - ln_b).exp() * sa * sb)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn crel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// A real number at least `0.05` from every integer.
fn off_integer(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    loop {
        let z: f64 = rng.gen_range(lo..hi);
        if (z - z.round()).abs() >= 0.05 {
            return z;
        }
    }
}

/// `∫_0^π sin^α t e^{iβt} dt`: closed form against quadrature. Instances
/// whose integral cancels below `1e-2` of `∫ sin^α` are redrawn.
pub fn sine_integral_errors(instances: usize, seed: u64) -> Vec<(f64, f64, Result<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(instances);
    while out.len() < instances {
        let alpha: f64 = rng.gen_range(0.2..6.0);
        let beta: f64 = rng.gen_range(-6.0..6.0);
        let quad =
            |f: &dyn Fn(f64) -> f64| integrate_pieces(f, 0.0, PI, 8, Tolerance::new(1e-16, 1e-14)).map(|r| r.value);
        let measured = (|| {
            let scale = quad(&|t: f64| t.sin().powf(alpha))?;
            let re = quad(&|t: f64| t.sin().powf(alpha) * (beta * t).cos())?;
            let im = quad(&|t: f64| t.sin().powf(alpha) * (beta * t).sin())?;
            let numeric = Complex64::new(re, im);
            if numeric.norm() < 1e-2 * scale {
                return Ok(None);
            }
            Ok(Some(crel(sine_power_integral(alpha, beta)?, numeric)))
        })();
        match measured {
            Ok(None) => continue,
            Ok(Some(e)) => out.push((alpha, beta, Ok(e))),
            Err(e) => out.push((alpha, beta, Err(e))),
        }
    }
    out
}

/// `Γ(z)/Γ(z-n) = (-1)^n Γ(n+1-z)/Γ(1-z)`, each side also against the
/// product `(z-1)(z-2)…(z-n)`.
pub fn gamma_shift_errors(instances: usize, seed: u64) -> Vec<(f64, usize, Result<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..instances)
        .map(|_| {
            let z = off_integer(&mut rng, -8.0, 8.0);
            let n: usize = rng.gen_range(0..=10);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let product: f64 = (1..=n).map(|i| z - i as f64).product();
            let err = (|| {
                let lhs = gamma_ratio(z, z - n as f64)?;
                let rhs = sign * gamma_ratio(n as f64 + 1.0 - z, 1.0 - z)?;
                Ok(rel(lhs, rhs).max(rel(lhs, product)).max(rel(rhs, product)))
            })();
            (z, n, err)
        })
        .collect()
}

/// `Γ(n-z)/Γ(-z) = (-1)^n Γ(z+1)/Γ(z-n+1)`, each side also against the
/// product `(-z)(1-z)…(n-1-z)`.
pub fn gamma_reflection_errors(instances: usize, seed: u64) -> Vec<(f64, usize, Result<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..instances)
        .map(|_| {
            let z = off_integer(&mut rng, -8.0, 8.0);
            let n: usize = rng.gen_range(0..=10);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let product: f64 = (0..n).map(|i| i as f64 - z).product();
            let err = (|| {
                let lhs = gamma_ratio(n as f64 - z, -z)?;
                let rhs = sign * gamma_ratio(z + 1.0, z - n as f64 + 1.0)?;
                Ok(rel(lhs, rhs).max(rel(lhs, product)).max(rel(rhs, product)))
            })();
            (z, n, err)
        })
        .collect()
}

/// Parameters of one terminating `3F2` transformation instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hyp3f2Instance {
    pub a: Complex64,
    pub a_prime: Complex64,
    pub b: Complex64,
    pub b_prime: Complex64,
    pub degree: usize,
}

/// `3F2(a, a', -N; b', 1-N-b; 1) = (a+b)_N/(b)_N · 3F2(a, b'-a', -N; b', a+b; 1)`
/// on random complex parameters. Instances where either side cancels by
/// more than a factor `1e3` are redrawn.
pub fn hyp3f2_transformation_errors(instances: usize, seed: u64) -> Vec<(Hyp3f2Instance, Result<f64>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(instances);
    let draw = |rng: &mut ChaCha8Rng| Complex64::new(rng.gen_range(-4.0..4.0), rng.gen_range(-3.0..3.0));
    while out.len() < instances {
        let inst = Hyp3f2Instance {
            a: draw(&mut rng),
            a_prime: draw(&mut rng),
            b: draw(&mut rng),
            b_prime: draw(&mut rng),
            degree: rng.gen_range(1..=8),
        };
        let nf = inst.degree as f64;
        let one = Complex64::new(1.0, 0.0);
        let left = hyp3f2_unit_terminating(inst.a, inst.a_prime, inst.degree, inst.b_prime, one - nf - inst.b);
        let right = hyp3f2_unit_terminating(
            inst.a,
            inst.b_prime - inst.a_prime,
            inst.degree,
            inst.b_prime,
            inst.a + inst.b,
        );
        let (Ok(left), Ok(right)) = (left, right) else {
            continue;
        };
        let factor = pochhammer_complex(inst.a + inst.b, inst.degree) / pochhammer_complex(inst.b, inst.degree);
        if left.condition() > 1e3 || right.condition() > 1e3 || !factor.is_finite() {
            continue;
        }
        out.push((inst, Ok(crel(left.value, factor * right.value))));
    }
    out
}

/// `(|Im|/|Re|, relative representation difference)` over
/// `χ ∈ [0.1, π - 0.1]` for one sphere state. The representation
/// difference is relative to `max|R|` on the grid.
pub fn sphere_reality(st: &SphereBoundState, points: usize) -> Result<(f64, f64)> {
    let mut worst_im = 0.0f64;
    let mut worst_diff = 0.0f64;
    let mut peak = 0.0f64;
    for i in 0..points {
        let chi = 0.1 + (PI - 0.2) * i as f64 / (points - 1) as f64;
        let a = st.quasi_radial_complex(chi)?;
        let b = st.quasi_radial_alternative(chi)?;
        worst_im = worst_im.max(a.imag_ratio());
        worst_diff = worst_diff.max((a.value - b.value).norm());
        peak = peak.max(a.value.re.abs());
    }
    Ok((worst_im, worst_diff / peak))
}

/// The Gamma-function, sine-integral and `3F2` identities on random
/// instances.
pub fn identity_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Identities;
    let tol = cfg.tol(IDENTITY_TOL);
    let mut checks = Vec::new();
    let mut summarize = |name: &str, errors: Vec<Result<f64>>| {
        let count = errors.len();
        let mut worst = 0.0f64;
        let mut failure = None;
        for e in errors {
            match e {
                Ok(v) => worst = worst.max(v),
                Err(e) => {
                    worst = f64::NAN;
                    failure.get_or_insert(e.to_string());
                }
            }
        }
        let check =
            Check::new(suite, name, worst, tol).with_note(failure.unwrap_or_else(|| format!("{count} instances")));
        checks.push(check);
    };
    let n = cfg.instances;
    summarize(
        "sine power integral vs quadrature",
        sine_integral_errors(n, cfg.seed).into_iter().map(|x| x.2).collect(),
    );
    summarize(
        "gamma shift G(z)/G(z-n)",
        gamma_shift_errors(n, cfg.seed.wrapping_add(5))
            .into_iter()
            .map(|x| x.2)
            .collect(),
    );
    summarize(
        "gamma reflection G(n-z)/G(-z)",
        gamma_reflection_errors(n, cfg.seed.wrapping_add(6))
            .into_iter()
            .map(|x| x.2)
            .collect(),
    );
    summarize(
        "3F2 transformation at unit argument",
        hyp3f2_transformation_errors(n, cfg.seed.wrapping_add(7))
            .into_iter()
            .map(|x| x.1)
            .collect(),
    );
    checks
}

/// Reality of the sphere quasi-radial sum and agreement of its two series
/// representations on `χ ∈ [0.1, π - 0.1]`.
pub fn sphere_reality_checks(cfg: &VerifyConfig) -> Vec<Check> {
    let suite = Suite::Identities;
    let mut checks = Vec::new();
    if cfg.includes(Geometry::Sphere) {
        let samples = random_states(Geometry::Sphere, cfg.states, cfg.seed, cfg.n_max);
        let results: Vec<(Sample, Result<(f64, f64)>)> = samples
            .par_iter()
            .map(|s| {
                (
                    *s,
                    SphereBoundState::new(&s.params, &s.q).and_then(|st| sphere_reality(&st, 200)),
                )
            })
            .collect();
        let (mut im, mut diff) = (0.0f64, 0.0f64);
        let mut failure = None;
        for (s, r) in &results {
            match r {
                Ok((a, b)) => {
                    im = im.max(*a);
                    diff = diff.max(*b);
                }
                Err(e) => {
                    failure.get_or_insert(format!("{s}: {e}"));
                    im = f64::NAN;
                }
            }
        }
        let note = failure.unwrap_or_else(|| format!("{} states", results.len()));
        checks
            .push(Check::new(suite, "sphere quasi-radial |Im|/|Re|", im, cfg.tol(REALITY_TOL)).with_note(note.clone()));
        checks
            .push(Check::new(suite, "sphere representations agree", diff, cfg.tol(REPRESENTATION_TOL)).with_note(note));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn random_states_are_valid_and_deterministic() {
        for g in [Geometry::Flat, Geometry::Sphere, Geometry::Hyperboloid] {
            let a = random_states(g, 40, 7, HalfInt::from_int(6));
            let b = random_states(g, 40, 7, HalfInt::from_int(6));
            assert_eq!(a, b);
            assert_eq!(a.len(), 40);
            for s in &a {
                assert!(crate::params::validate(&s.params, &s.q).is_empty());
                assert!(s.q.n <= HalfInt::from_int(6));
            }
            // the generator covers half-integer monopoles
            assert!(a.iter().any(|s| !s.params.s.is_integer()));
        }
    }

    #[test]
    fn ulp_distance() {
        assert_eq!(ulps(1.0, 1.0), 0.0);
        assert_eq!(ulps(1.0, 1.0 + f64::EPSILON), 1.0);
        assert_eq!(ulps(-0.5, 0.5), f64::INFINITY);
    }

    #[test]
    fn check_pass_logic() {
        assert!(Check::new(Suite::Oracle, "x", 1e-7, 1e-6).passed);
        assert!(!Check::new(Suite::Oracle, "x", f64::NAN, 1e-6).passed);
        assert!(Check::new(Suite::Oracle, "x", 0.0, 0.0).passed);
    }
}
