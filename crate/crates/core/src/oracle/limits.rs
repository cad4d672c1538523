//! Flat-limit studies: how curved-space quantities approach their flat
//! counterparts as the radius grows.

use serde::Serialize;

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LimitRow {
    pub radius: f64,
    pub curved: f64,
    pub flat: f64,
    /// `|curved - offset(R0) - flat|`.
    pub difference: f64,
    /// Previous row's difference over this one; `None` on the first row.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitReport {
    pub rows: Vec<LimitRow>,
}

impl LimitReport {
    /// Largest `|ratio - target|` over the rows that have a ratio.
    pub fn max_ratio_deviation(&self, target: f64) -> f64 {
        self.rows
            .iter()
            .filter_map(|r| r.ratio)
            .fold(0.0, |m, r| m.max((r - target).abs()))
    }
}

/// Tabulates `|E(R0) - offset(R0) - flat|` over `radii` and the successive
/// ratios. Radii doubling at each step gives ratio 4 for a `1/R0²` approach.
pub fn limit_study<E, O>(radii: &[f64], curved: E, offset: O, flat: f64) -> Result<LimitReport>
where
    E: Fn(f64) -> Result<f64>,
    O: Fn(f64) -> f64,
{
    let mut rows: Vec<LimitRow> = Vec::with_capacity(radii.len());
    for &radius in radii {
        let value = curved(radius)?;
        let difference = (value - offset(radius) - flat).abs();
        let ratio = rows.last().map(|prev| prev.difference / difference);
        rows.push(LimitRow {
            radius,
            curved: value,
            flat,
            difference,
            ratio,
        });
    }
    Ok(LimitReport { rows })
}

/// `sup_r |curved(R0, r) - flat(r)|` over `r_grid`, for each radius.
pub fn wavefunction_limit<C, F>(radii: &[f64], r_grid: &[f64], curved: C, flat: F) -> Result<Vec<(f64, f64)>>
where
    C: Fn(f64, f64) -> Result<f64>,
    F: Fn(f64) -> f64,
{
    radii
        .iter()
        .map(|&radius| {
            let mut sup = 0.0f64;
            for &r in r_grid {
                sup = sup.max((curved(radius, r)? - flat(r)).abs());
            }
            Ok((radius, sup))
        })
        .collect()
}
