//! Sixth-order finite-difference residuals of linear second-order ODEs
//! `y'' + a(x) y' + b(x) y = 0`.

use crate::error::{Error, Result};

/// Sample points of a residual check.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Spacing {
    /// Equal steps in `x`.
    Uniform,
    /// Equal steps in `ln x`; requires `lo > 0`.
    Geometric,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OdeResidual {
    /// `‖y'' + a y' + b y‖₂ / ‖|y''| + |a y'| + |b y|‖₂` over the sample points.
    pub relative: f64,
    /// Largest pointwise ratio of the same quantities.
    pub max_pointwise: f64,
    pub points: usize,
}

const D1: [f64; 7] = [-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0];
const D2: [f64; 7] = [2.0, -27.0, 270.0, -490.0, 270.0, -27.0, 2.0];

/// First and second derivatives at the centre of seven equally spaced
/// samples with step `h`.
pub fn derivatives(samples: &[f64; 7], h: f64) -> (f64, f64) {
    let mut d1 = 0.0;
    let mut d2 = 0.0;
    for i in 0..7 {
        d1 += D1[i] * samples[i];
        d2 += D2[i] * samples[i];
    }
    (d1 / (60.0 * h), d2 / (180.0 * h * h))
}

/// Residual of `y'' + a y' + b y = 0` at `points` centres spread over
/// `[lo, hi]`; `y` is also sampled three steps beyond each end.
pub fn ode_residual<Y, A, B>(y: Y, a: A, b: B, lo: f64, hi: f64, points: usize, spacing: Spacing) -> Result<OdeResidual>
where
    Y: Fn(f64) -> Result<f64>,
    A: Fn(f64) -> f64,
    B: Fn(f64) -> f64,
{
    if points < 2 || !(hi > lo) {
        return Err(Error::Config(format!(
            "bad residual grid [{lo}, {hi}] with {points} points"
        )));
    }
    if spacing == Spacing::Geometric && !(lo > 0.0) {
        return Err(Error::Config("geometric spacing needs a positive left end".into()));
    }
    let (u0, u1) = match spacing {
        Spacing::Uniform => (lo, hi),
        Spacing::Geometric => (lo.ln(), hi.ln()),
    };
    let h = (u1 - u0) / (points - 1) as f64;
    let to_x = |u: f64| match spacing {
        Spacing::Uniform => u,
        Spacing::Geometric => u.exp(),
    };
    let values = (0..points + 6)
        .map(|i| y(to_x(u0 + (i as f64 - 3.0) * h)))
        .collect::<Result<Vec<f64>>>()?;
    let (mut num, mut den, mut worst) = (0.0f64, 0.0f64, 0.0f64);
    for i in 0..points {
        let u = u0 + i as f64 * h;
        let window: &[f64; 7] = values[i..i + 7].try_into().expect("seven samples");
        let (du, duu) = derivatives(window, h);
        let x = to_x(u);
        let (d1, d2) = match spacing {
            Spacing::Uniform => (du, duu),
            Spacing::Geometric => (du / x, (duu - du) / (x * x)),
        };
        let f = window[3];
        let terms = [d2, a(x) * d1, b(x) * f];
        let r = terms[0] + terms[1] + terms[2];
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        num += r * r;
        den += scale * scale;
        if scale > 0.0 {
            worst = worst.max(r.abs() / scale);
        }
    }
    if !(den > 0.0) || !num.is_finite() {
        return Err(Error::Config(
            "residual undefined: the function vanishes on the grid".into(),
        ));
    }
    Ok(OdeResidual {
        relative: (num / den).sqrt(),
        max_pointwise: worst,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_sextics() {
        let h = 0.3;
        let x0 = 0.7;
        let p = |x: f64| 1.0 + x - 2.0 * x.powi(3) + 0.5 * x.powi(6);
        let samples: [f64; 7] = std::array::from_fn(|i| p(x0 + (i as f64 - 3.0) * h));
        let (d1, d2) = derivatives(&samples, h);
        let e1 = 1.0 - 6.0 * x0 * x0 + 3.0 * x0.powi(5);
        let e2 = -12.0 * x0 + 15.0 * x0.powi(4);
        assert!((d1 - e1).abs() < 1e-12, "{d1} {e1}");
        assert!((d2 - e2).abs() < 1e-11, "{d2} {e2}");
    }

    #[test]
    fn sixth_order_convergence() {
        // y = sin x solves y'' + y = 0; the error of the stencil scales as h^6
        let err = |h: f64| {
            let s: [f64; 7] = std::array::from_fn(|i| (1.0 + (i as f64 - 3.0) * h).sin());
            (derivatives(&s, h).1 + 1f64.sin()).abs()
        };
        let ratio = err(0.2) / err(0.1);
        assert!((ratio.log2() - 6.0).abs() < 0.1, "{ratio}");
    }

    #[test]
    fn residual_of_exact_and_wrong_solutions() {
        // x e^x solves y'' - 2y' + y = 0
        let exact = ode_residual(|x| Ok(x * x.exp()), |_| -2.0, |_| 1.0, 0.1, 3.0, 400, Spacing::Uniform).unwrap();
        assert!(exact.relative < 1e-11, "{exact:?}");
        let wrong = ode_residual(
            |x| Ok(x * (1.01 * x).exp()),
            |_| -2.0,
            |_| 1.0,
            0.1,
            3.0,
            400,
            Spacing::Uniform,
        )
        .unwrap();
        assert!(wrong.relative > 1e-5);
        // r e^{-r} solves R'' + (2/r)R' + (4/r - 1 - 2/r²)R = 0
        let geo = ode_residual(
            |r| Ok(r * (-r).exp()),
            |r| 2.0 / r,
            |r| 4.0 / r - 1.0 - 2.0 / (r * r),
            0.05,
            40.0,
            2000,
            Spacing::Geometric,
        )
        .unwrap();
        assert!(geo.relative < 1e-10, "{geo:?}");
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(ode_residual(|x| Ok(x), |_| 0.0, |_| 0.0, 1.0, 0.0, 10, Spacing::Uniform).is_err());
        assert!(ode_residual(|x| Ok(x), |_| 0.0, |_| 0.0, 0.0, 1.0, 10, Spacing::Geometric).is_err());
    }
}
