//! Finite-difference Sturm-Liouville eigen-solver.
//!
//! After the endpoint substitution `R = h(x)^p v` the radial equations take
//! the form `-(1/W)(W v')' + Q v = ε v` with `W = h^{2p+2}` vanishing at the
//! regular-singular endpoints. The problem is discretized on a cell-centred
//! grid in a stretched variable `y` (`x = x(y)`), symmetrized with the
//! weights, and solved by Sturm-sequence bisection on the resulting
//! symmetric tridiagonal matrix. Three grids (`n`, `2n`, `4n`) give two
//! Richardson extrapolations; their difference is the error estimate.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry;
use crate::params::{Geometry, PhysParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RightBoundary {
    /// `W` vanishes at the right end; no condition needed.
    Natural,
    /// Truncation box with `v = 0`.
    Dirichlet,
}

/// Map from the uniform grid variable `y ∈ [0, Y]` to the natural variable.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Stretch {
    Uniform,
    /// `x = a + s sinh(y/s)`: spacing grows linearly beyond `x - a ≈ s`.
    Sinh(f64),
    /// `Sinh(scale)` until `dx/dy` reaches `slope`, linear beyond.
    Capped {
        scale: f64,
        slope: f64,
    },
}

impl Stretch {
    pub fn x(self, a: f64, y: f64) -> f64 {
        match self {
            Stretch::Uniform => a + y,
            Stretch::Sinh(s) => a + s * (y / s).sinh(),
            Stretch::Capped { scale, slope } => {
                let (ys, xs) = capped_corner(scale, slope);
                if y <= ys {
                    a + scale * (y / scale).sinh()
                } else {
                    a + xs + slope * (y - ys)
                }
            }
        }
    }

    fn ln_dx_dy(self, y: f64) -> f64 {
        match self {
            Stretch::Uniform => 0.0,
            Stretch::Sinh(s) => (y / s).cosh().ln(),
            Stretch::Capped { scale, slope } => (y / scale).cosh().ln().min(slope.ln()),
        }
    }

    pub fn y_of(self, a: f64, x: f64) -> f64 {
        match self {
            Stretch::Uniform => x - a,
            Stretch::Sinh(s) => s * ((x - a) / s).asinh(),
            Stretch::Capped { scale, slope } => {
                let (ys, xs) = capped_corner(scale, slope);
                if x - a <= xs {
                    scale * ((x - a) / scale).asinh()
                } else {
                    ys + (x - a - xs) / slope
                }
            }
        }
    }
}

/// `(y, x - a)` where the sinh part of a capped stretch reaches its slope.
fn capped_corner(scale: f64, slope: f64) -> (f64, f64) {
    let ys = scale * slope.max(1.0).acosh();
    (ys, scale * (ys / scale).sinh())
}

type Coefficient = Box<dyn Fn(f64) -> f64 + Send + Sync>;

/// `-(1/W)(W v')' + Q v = ε v` on `[a, b]`.
pub struct SturmLiouvilleProblem {
    ln_weight: Coefficient,
    potential: Coefficient,
    pub a: f64,
    pub b: f64,
    pub right: RightBoundary,
    pub stretch: Stretch,
    /// Leading exponents of the solution at `a` and `b`.
    pub exponents: (f64, f64),
    /// Bottom of the essential spectrum of the untruncated problem, if any.
    pub threshold: Option<f64>,
}

impl SturmLiouvilleProblem {
    pub fn new(
        a: f64,
        b: f64,
        ln_weight: impl Fn(f64) -> f64 + Send + Sync + 'static,
        potential: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        SturmLiouvilleProblem {
            ln_weight: Box::new(ln_weight),
            potential: Box::new(potential),
            a,
            b,
            right: RightBoundary::Natural,
            stretch: Stretch::Uniform,
            exponents: (0.0, 0.0),
            threshold: None,
        }
    }

    pub fn with_right(mut self, right: RightBoundary) -> Self {
        self.right = right;
        self
    }

    pub fn with_stretch(mut self, stretch: Stretch) -> Self {
        self.stretch = stretch;
        self
    }

    pub fn with_exponents(mut self, left: f64, right: f64) -> Self {
        self.exponents = (left, right);
        self
    }

    pub fn with_threshold(mut self, threshold: Option<f64>) -> Self {
        self.threshold = threshold;
        self
    }

    /// Symmetric tridiagonal matrix on `cells` grid cells.
    pub fn discretize(&self, cells: usize) -> Tridiagonal {
        let y_end = self.stretch.y_of(self.a, self.b);
        let eta = y_end / cells as f64;
        let inv_h2 = 1.0 / (eta * eta);
        // ln W x'(y) at centres, ln W / x'(y) at faces
        let ln_mass: Vec<f64> = (0..cells)
            .map(|i| {
                let y = (i as f64 + 0.5) * eta;
                (self.ln_weight)(self.stretch.x(self.a, y)) + self.stretch.ln_dx_dy(y)
            })
            .collect();
        let ln_stiff: Vec<f64> = (0..=cells)
            .map(|i| {
                if i == 0 || (i == cells && self.right == RightBoundary::Natural) {
                    return f64::NEG_INFINITY;
                }
                let y = i as f64 * eta;
                let x = if i == cells { self.b } else { self.stretch.x(self.a, y) };
                (self.ln_weight)(x) - self.stretch.ln_dx_dy(y)
            })
            .collect();
        let mut diag = Vec::with_capacity(cells);
        let mut off = Vec::with_capacity(cells.saturating_sub(1));
        for i in 0..cells {
            let x = self.stretch.x(self.a, (i as f64 + 0.5) * eta);
            let left = (ln_stiff[i] - ln_mass[i]).exp();
            let mut right = (ln_stiff[i + 1] - ln_mass[i]).exp();
            if i + 1 == cells && self.right == RightBoundary::Dirichlet {
                // mirrored ghost cell, v = 0 on the face
                right *= 2.0;
            }
            diag.push((left + right) * inv_h2 + (self.potential)(x));
            if i + 1 < cells {
                off.push(-(ln_stiff[i + 1] - 0.5 * (ln_mass[i] + ln_mass[i + 1])).exp() * inv_h2);
            }
        }
        Tridiagonal { diag, off }
    }
}

/// Symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Tridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl Tridiagonal {
    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let e = self.off[i - 1];
            let prev = if q == 0.0 { f64::EPSILON * (e.abs() + 1.0) } else { q };
            q = self.diag[i] - x - e * e / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 } + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based), by bisection to full
    /// double precision.
    pub fn eigenvalue(&self, index: usize) -> f64 {
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if !(mid > lo && mid < hi) {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The lowest `k` eigenvalues, in increasing order.
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        let k = k.min(self.len());
        (0..k).into_par_iter().map(|i| self.eigenvalue(i)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GridOptions {
    /// Cells of the coarsest grid; the next two grids have 2x and 4x.
    pub cells: usize,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { cells: 8000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EigenResult {
    /// Richardson-extrapolated eigenvalues, in the units of the problem
    /// (energies for `solve_quasi_radial`).
    pub eigenvalues: Vec<f64>,
    /// Difference between the two extrapolations.
    pub errors: Vec<f64>,
    pub grid_sizes: Vec<usize>,
    /// Raw eigenvalues per grid, `raw[g][i]`.
    pub raw: Vec<Vec<f64>>,
    /// `log2` of successive raw differences; ≈ 2 for a second-order scheme.
    pub observed_order: Vec<f64>,
    /// Right end of the (possibly truncated) domain.
    pub box_end: f64,
    pub threshold: Option<f64>,
    /// Fewer levels than requested lie below the threshold.
    pub truncated: bool,
}

impl EigenResult {
    fn from_raw(
        raw: Vec<Vec<f64>>,
        grid_sizes: Vec<usize>,
        box_end: f64,
        threshold: Option<f64>,
        truncated: bool,
    ) -> Self {
        let k = raw.iter().map(Vec::len).min().unwrap_or(0);
        let mut eigenvalues = Vec::with_capacity(k);
        let mut errors = Vec::with_capacity(k);
        let mut observed_order = Vec::with_capacity(k);
        for i in 0..k {
            let (e1, e2, e3) = (raw[0][i], raw[1][i], raw[2][i]);
            let a = (4.0 * e2 - e1) / 3.0;
            let b = (4.0 * e3 - e2) / 3.0;
            eigenvalues.push(b);
            errors.push((b - a).abs());
            observed_order.push(((e1 - e2) / (e2 - e3)).abs().log2());
        }
        EigenResult {
            eigenvalues,
            errors,
            grid_sizes,
            raw,
            observed_order,
            box_end,
            threshold,
            truncated,
        }
    }

    fn scaled(mut self, scale: f64) -> Self {
        for v in self.eigenvalues.iter_mut().chain(self.errors.iter_mut()) {
            *v *= scale;
        }
        for row in &mut self.raw {
            for v in row.iter_mut() {
                *v *= scale;
            }
        }
        self.threshold = self.threshold.map(|t| t * scale);
        self
    }
}

/// Lowest `k` eigenvalues on grids `cells`, `2 cells`, `4 cells`, restricted
/// to those below the threshold when the problem has one.
pub fn solve(problem: &SturmLiouvilleProblem, k: usize, grid: GridOptions) -> EigenResult {
    let sizes = vec![grid.cells, 2 * grid.cells, 4 * grid.cells];
    let raw: Vec<Vec<f64>> = sizes
        .par_iter()
        .map(|&n| {
            let t = problem.discretize(n);
            let below = match problem.threshold {
                Some(th) => t.count_below(th).min(k),
                None => k,
            };
            t.lowest(below)
        })
        .collect();
    let found = raw.iter().map(Vec::len).min().unwrap_or(0);
    EigenResult::from_raw(raw, sizes, problem.b, problem.threshold, found < k)
}

/// The radial equation of a channel with angular eigenvalue `Λ`, in
/// dimensionless units: energies are `ε · K` with `K = ħ²/(2μL²)`.
pub struct QuasiRadialChannel {
    pub params: PhysParams,
    pub angular_eigenvalue: f64,
}

impl QuasiRadialChannel {
    pub fn new(params: PhysParams, angular_eigenvalue: f64) -> Result<Self> {
        if !(angular_eigenvalue >= -0.25) {
            return Err(Error::Config(format!(
                "angular eigenvalue {angular_eigenvalue} below -1/4"
            )));
        }
        if params.geometry == Geometry::Hyperboloid && params.e2 == 0.0 {
            return Err(Error::Config("no attractive Coulomb term".into()));
        }
        Ok(QuasiRadialChannel {
            params,
            angular_eigenvalue,
        })
    }

    /// Exponent `p` with `p(p+1) = Λ`.
    pub fn exponent(&self) -> f64 {
        0.5 * ((1.0 + 4.0 * self.angular_eigenvalue).sqrt() - 1.0)
    }

    /// `ħ²/(2μL²)` with `L = R0` on curved spaces and 1 in flat space.
    pub fn energy_unit(&self) -> f64 {
        self.params.kinetic_unit()
    }

    /// Bottom of the continuum in units of `energy_unit`: the `x → ∞` limit
    /// of `Q` plus the lowest spectral value `(p+1)²` of the weighted
    /// kinetic term with `W ~ e^{(2p+2)τ}` on the hyperboloid.
    pub fn threshold(&self) -> Option<f64> {
        let p = self.exponent();
        match self.params.geometry {
            Geometry::Sphere => None,
            Geometry::Flat => Some(0.0),
            Geometry::Hyperboloid => Some((p + 1.0) * (p + 1.0) - p * (p + 2.0)),
        }
    }

    /// The problem on `[0, box_end]` (sphere: `[0, π]`, `box_end` ignored).
    pub fn problem(&self, box_end: f64) -> SturmLiouvilleProblem {
        let p = self.exponent();
        let geometry = self.params.geometry;
        let unit = self.energy_unit();
        let params = self.params;
        let kc = geometry.curvature_sign();
        let ln_weight = move |x: f64| (2.0 * p + 2.0) * geometry::ln_radial_scale(geometry, x);
        let potential = move |x: f64| kc * p * (p + 2.0) + geometry::quasi_radial_coulomb(&params, x) / unit;
        let (b, right) = match geometry {
            Geometry::Sphere => (std::f64::consts::PI, RightBoundary::Natural),
            _ => (box_end, RightBoundary::Dirichlet),
        };
        let stretch = self.stretch();
        SturmLiouvilleProblem::new(0.0, b, ln_weight, potential)
            .with_right(right)
            .with_stretch(stretch)
            .with_exponents(p, 0.0)
            .with_threshold(self.threshold())
    }

    pub fn stretch(&self) -> Stretch {
        match self.params.geometry {
            Geometry::Sphere => Stretch::Uniform,
            _ => Stretch::Sinh(self.inner_scale()),
        }
    }

    /// Length below which the grid stays uniform: a fraction of the Coulomb
    /// length `1/(2 strength)` in the natural variable.
    fn inner_scale(&self) -> f64 {
        let strength = match self.params.geometry {
            Geometry::Flat => 1.0 / self.params.bohr_radius(),
            _ => self.params.coulomb_strength(),
        };
        (0.5 / strength.max(1e-3)).min(1.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SolveOptions {
    pub grid: GridOptions,
    /// Initial truncation box (natural variable) for unbounded domains.
    pub box_end: f64,
    /// Stop doubling the box once every level moves less than this (energy
    /// units).
    pub box_tolerance: f64,
    pub max_doublings: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            grid: GridOptions::default(),
            box_end: 8.0,
            box_tolerance: 1e-9,
            max_doublings: 8,
        }
    }
}

/// Lowest `k` levels of a quasi-radial channel, as energies. For unbounded
/// domains the truncation box is doubled (at fixed grid spacing) until the
/// levels and the number of levels below threshold are stable.
pub fn solve_quasi_radial(channel: &QuasiRadialChannel, k: usize, opts: SolveOptions) -> Result<EigenResult> {
    let unit = channel.energy_unit();
    if channel.params.geometry == Geometry::Sphere {
        return Ok(solve(&channel.problem(0.0), k, opts.grid).scaled(unit));
    }
    // fixed grid spacing in the stretched variable while the box grows
    let stretch = channel.stretch();
    let eta = stretch.y_of(0.0, opts.box_end) / opts.grid.cells as f64;
    let mut box_end = opts.box_end;
    let mut cells = opts.grid.cells;
    let mut previous = solve(&channel.problem(box_end), k, GridOptions { cells });
    for _ in 0..opts.max_doublings {
        cells = (stretch.y_of(0.0, 2.0 * box_end) / eta).round() as usize;
        box_end = stretch.x(0.0, cells as f64 * eta);
        let next = solve(&channel.problem(box_end), k, GridOptions { cells });
        let stable = next.eigenvalues.len() == previous.eigenvalues.len()
            && next
                .eigenvalues
                .iter()
                .zip(&previous.eigenvalues)
                .all(|(a, b)| ((a - b) * unit).abs() < opts.box_tolerance);
        previous = next;
        if stable {
            return Ok(previous.scaled(unit));
        }
    }
    Err(Error::Config(format!(
        "truncation box did not converge after {} doublings (box {box_end})",
        opts.max_doublings
    )))
}

/// Number of discrete levels below the continuum threshold. Starting from
/// `cells` cells on `[0, box_end]`, the box is doubled up to
/// [`COUNT_BOX`] on a grid whose step never exceeds [`COUNT_STEP`]; levels
/// with decay lengths well below `COUNT_BOX` are therefore inside it. On each
/// of the last three boxes the levels near the threshold are extrapolated
/// from `c, 2c, 4c` cells and counted; the three counts must agree.
pub fn count_bound_levels(channel: &QuasiRadialChannel, cells: usize, box_end: f64) -> Result<usize> {
    let threshold = channel
        .threshold()
        .ok_or_else(|| Error::Config("the sphere has no continuum".into()))?;
    let scale = match channel.stretch() {
        Stretch::Sinh(s) => s,
        _ => 1.0,
    };
    let eta = Stretch::Sinh(scale).y_of(0.0, box_end) / cells as f64;
    let stretch = Stretch::Capped {
        scale,
        slope: (COUNT_STEP / eta).max(1.0),
    };
    let mut boxes = vec![box_end];
    while boxes.len() < 3 || *boxes.last().expect("nonempty") < COUNT_BOX {
        boxes.push(2.0 * boxes.last().expect("nonempty"));
    }
    let counts = boxes[boxes.len() - 3..]
        .iter()
        .map(|&b| {
            let c = (stretch.y_of(0.0, b) / eta).round() as usize;
            extrapolated_count(&channel.problem(b).with_stretch(stretch), c, threshold)
        })
        .collect::<Vec<_>>();
    if counts.iter().all(|&c| c == counts[0]) {
        Ok(counts[0])
    } else {
        Err(Error::Config(format!(
            "bound-state count did not stabilize: {counts:?}"
        )))
    }
}

/// Largest box used by [`count_bound_levels`], in the natural variable.
pub const COUNT_BOX: f64 = 1024.0;
/// Largest grid step used by [`count_bound_levels`].
pub const COUNT_STEP: f64 = 0.05;

fn extrapolated_count(problem: &SturmLiouvilleProblem, cells: usize, threshold: f64) -> usize {
    let grids: Vec<Tridiagonal> = [1, 2, 4].iter().map(|f| problem.discretize(f * cells)).collect();
    let k = grids
        .iter()
        .map(|t| t.count_below(threshold))
        .max()
        .expect("three grids")
        + 2;
    let levels: Vec<Vec<f64>> = grids.iter().map(|t| t.lowest(k)).collect();
    (0..k)
        .filter(|&i| {
            let e = (4.0 * levels[2][i] - levels[1][i]) / 3.0;
            let coarse = (4.0 * levels[1][i] - levels[0][i]) / 3.0;
            // a level counts when both extrapolations agree that it is bound
            e < threshold && coarse < threshold
        })
        .count()
}

/// The θ equation of a φ-mode `k = m - s`:
/// `-(1/sinθ)(sinθ F')' + [(k²+c1)/(4cos²(θ/2)) + ((k+2s)²+c2)/(4sin²(θ/2))] F = Λ F`.
/// The endpoint exponents `a, b` (from the indicial equations) are
/// factored out as `F = cos(θ/2)^a sin(θ/2)^b v`.
pub fn angular_problem(params: &PhysParams, mode: i64) -> SturmLiouvilleProblem {
    let (c1, c2) = params.reduced_couplings();
    let k = mode as f64;
    let k2 = k + 2.0 * params.s.to_f64();
    let north = k * k + c1;
    let south = k2 * k2 + c2;
    // indicial exponents at θ = π and θ = 0
    let a = north.sqrt();
    let b = south.sqrt();
    let ln_weight = move |t: f64| {
        let (s, c) = (0.5 * t).sin_cos();
        t.sin().abs().ln() + 2.0 * a * c.abs().ln() + 2.0 * b * s.abs().ln()
    };
    let potential = move |t: f64| {
        let (s, c) = (0.5 * t).sin_cos();
        let u = north / (4.0 * c * c) + south / (4.0 * s * s);
        let g = 0.5 * (b * c / s - a * s / c);
        let dg = -b / (4.0 * s * s) - a / (4.0 * c * c);
        u - (dg + g * g + g / t.tan())
    };
    SturmLiouvilleProblem::new(0.0, std::f64::consts::PI, ln_weight, potential).with_exponents(b, a)
}

/// Lowest `k` eigenvalues `Λ` of the angular equation for a φ-mode.
pub fn solve_angular(params: &PhysParams, mode: i64, k: usize, grid: GridOptions) -> EigenResult {
    solve(&angular_problem(params, mode), k, grid)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_count_on_small_matrix() {
        // eigenvalues of [[2,-1],[-1,2]] are 1 and 3
        let t = Tridiagonal {
            diag: vec![2.0, 2.0],
            off: vec![-1.0],
        };
        assert_eq!(t.count_below(0.5), 0);
        assert_eq!(t.count_below(2.0), 1);
        assert_eq!(t.count_below(3.5), 2);
        let l = t.lowest(2);
        assert!((l[0] - 1.0).abs() < 1e-15 && (l[1] - 3.0).abs() < 1e-15);
    }

    #[test]
    fn free_particle_in_unit_ball() {
        // -(1/x²)(x² v')' = ε v, v(1) = 0: ε = (kπ)²
        let pb =
            SturmLiouvilleProblem::new(0.0, 1.0, |x: f64| 2.0 * x.ln(), |_| 0.0).with_right(RightBoundary::Dirichlet);
        let r = solve(&pb, 3, GridOptions { cells: 400 });
        for (i, e) in r.eigenvalues.iter().enumerate() {
            let exact = ((i + 1) as f64 * std::f64::consts::PI).powi(2);
            assert!((e - exact).abs() < 1e-6 * exact, "{e} vs {exact}");
            assert!((r.observed_order[i] - 2.0).abs() < 0.1);
        }
    }

    #[test]
    fn legendre_operator() {
        // s = λ = 0, mode 0: Λ = j(j+1)
        let p = PhysParams::atomic(Geometry::Flat);
        let r = solve_angular(&p, 0, 4, GridOptions { cells: 500 });
        for (j, l) in r.eigenvalues.iter().enumerate() {
            let exact = (j * (j + 1)) as f64;
            assert!((l - exact).abs() < 1e-7, "{l} vs {exact}");
        }
    }

    #[test]
    fn hydrogen_levels() {
        let p = PhysParams::atomic(Geometry::Flat);
        let ch = QuasiRadialChannel::new(p, 0.0).unwrap();
        let r = solve_quasi_radial(&ch, 2, SolveOptions::default()).unwrap();
        assert!((r.eigenvalues[0] + 0.5).abs() < 1e-6, "{r:?}");
        assert!((r.eigenvalues[1] + 0.125).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn sphere_hydrogen_levels() {
        let p = PhysParams::atomic(Geometry::Sphere).with_radius(1.0);
        let ch = QuasiRadialChannel::new(p, 0.0).unwrap();
        let r = solve_quasi_radial(&ch, 2, SolveOptions::default()).unwrap();
        assert!((r.eigenvalues[0] + 0.5).abs() < 1e-6, "{r:?}");
        assert!((r.eigenvalues[1] - 1.375).abs() < 1e-6, "{r:?}");
    }
}
