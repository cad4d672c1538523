use std::cmp::Ordering;
use std::f64::consts::PI;

use micz_core::hyperboloid::bracket_condition;
use micz_core::oracle::limit_study;
use micz_core::params::{level_states, notation_unchecked, principal_numbers};
use micz_core::state::BoundState;
use micz_core::verify::{self, Suite, VerifyConfig};
use micz_core::{validate, Error, Geometry, PhysParams, QuantumNumbers, Violation};
use serde_json::{json, Value};

use crate::output::{emit, Cell, Table};
use crate::{Failure, LimitArgs, SpectrumArgs, StateArgs, VerifyArgs, WavefunctionArgs};

type Outcome = Result<(), Failure>;

fn check_params(p: &PhysParams) -> Result<(), Error> {
    let v = p.violations();
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(v))
    }
}

fn quantum_numbers(s: &StateArgs) -> QuantumNumbers {
    QuantumNumbers::new(s.n, s.j, s.m)
}

struct Level {
    q: QuantumNumbers,
    energy: Option<f64>,
    row: Vec<Cell>,
}

pub fn spectrum(a: &SpectrumArgs, config: &Value) -> Outcome {
    let p = a.physics.params();
    check_params(&p)?;
    let g = p.geometry;
    let mut columns = vec!["n", "j", "m", "delta", "j_tilde", "n_eff", "energy"];
    columns.push(if g == Geometry::Flat { "kappa" } else { "sigma" });
    columns.push("bound");
    if g == Geometry::Hyperboloid {
        columns.push("bracket");
    }
    let mut levels = Vec::new();
    for n in principal_numbers(p.s, a.n_max) {
        for q in level_states(p.s, n) {
            if a.j.is_some_and(|j| j != q.j) || a.m.is_some_and(|m| m != q.m) {
                continue;
            }
            let violations = validate(&p, &q);
            let bound = match violations.as_slice() {
                [] => true,
                [Violation::NoBoundState { .. }] => false,
                _ => return Err(Error::Invalid(violations).into()),
            };
            let d = notation_unchecked(&p, &q);
            let energy = if bound {
                Some(BoundState::new(&p, &q)?.energy())
            } else {
                None
            };
            let mut row: Vec<Cell> = vec![
                q.n.into(),
                q.j.into(),
                q.m.into(),
                d.delta.into(),
                d.j_tilde.into(),
                d.n_eff.into(),
                energy.into(),
                d.kappa.or(d.sigma).into(),
                bound.into(),
            ];
            if g == Geometry::Hyperboloid {
                row.push(bracket_condition(&p, &q).into());
            }
            levels.push(Level { q, energy, row });
        }
    }
    // bound levels by energy, then the rest; ties by quantum numbers
    levels.sort_by(|x, y| {
        let by_energy = match (x.energy, y.energy) {
            (Some(a), Some(b)) => a.total_cmp(&b),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => Ordering::Equal,
        };
        by_energy
            .then(x.q.n.cmp(&y.q.n))
            .then(x.q.j.cmp(&y.q.j))
            .then(x.q.m.cmp(&y.q.m))
    });
    let mut table = Table::new(columns);
    for l in levels {
        table.push(l.row);
    }
    emit(&table, config, a.output.format, a.output.output.as_deref())?;
    Ok(())
}

pub fn wavefunction(a: &WavefunctionArgs, config: &Value) -> Outcome {
    let p = a.physics.params();
    check_params(&p)?;
    let q = quantum_numbers(&a.state);
    let st = BoundState::new(&p, &q)?;
    let points = if a.points.is_empty() {
        if a.count == 0 {
            return Err(Error::Config("--count must be positive".into()).into());
        }
        let end = match a.end {
            Some(e) => e,
            None if p.geometry == Geometry::Sphere => PI,
            None => st.extent()?,
        };
        (1..=a.count).map(|i| end * i as f64 / (a.count + 1) as f64).collect()
    } else {
        a.points.clone()
    };
    let z = st.angular()?.eval(a.theta, a.phi);
    let mut table = Table::new(vec![st.coordinate(), "R", "Z_re", "Z_im", "psi_re", "psi_im"]);
    table.notation = Some(json!({
        "notation": st.notation(),
        "energy": st.energy(),
    }));
    for x in points {
        let r = st.radial(x)?;
        let psi = z * r;
        table.push(vec![
            x.into(),
            r.into(),
            z.re.into(),
            z.im.into(),
            psi.re.into(),
            psi.im.into(),
        ]);
    }
    emit(&table, config, a.output.format, a.output.output.as_deref())?;
    Ok(())
}

pub fn verify(a: &VerifyArgs, config: &Value) -> Outcome {
    if !(a.tolerance_scale.is_finite() && a.tolerance_scale > 0.0) {
        return Err(Error::Config(format!("tolerance scale {} must be positive", a.tolerance_scale)).into());
    }
    let cfg = VerifyConfig {
        geometry: a.geometry,
        states: a.states,
        seed: a.seed,
        tolerance_scale: a.tolerance_scale,
        cells: a.cells,
        instances: a.instances,
        ..VerifyConfig::default()
    };
    let suites: Vec<Suite> = if a.suites.is_empty() {
        Suite::ALL.to_vec()
    } else {
        a.suites.clone()
    };
    let mut table = Table::new(vec!["suite", "name", "measured", "tolerance", "passed", "note"]);
    let mut failed = 0;
    for suite in suites {
        for c in verify::run_suite(suite, &cfg) {
            failed += usize::from(!c.passed);
            table.push(vec![
                suite.name().to_string().into(),
                c.name.into(),
                c.measured.into(),
                c.tolerance.into(),
                c.passed.into(),
                c.note.map_or(Cell::Empty, Cell::Text),
            ]);
        }
    }
    emit(&table, config, a.output.format, a.output.output.as_deref())?;
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::ChecksFailed(failed))
    }
}

pub fn limit(a: &LimitArgs, config: &Value) -> Outcome {
    let p = a.physics.params();
    check_params(&p)?;
    if p.geometry == Geometry::Flat {
        return Err(Error::Config("limit needs --geometry sphere or hyperboloid".into()).into());
    }
    let q = quantum_numbers(&a.state);
    let flat = BoundState::new(&p.with_geometry(Geometry::Flat), &q)?.energy();
    let offset = |r: f64| {
        if p.geometry == Geometry::Hyperboloid {
            p.e2 / r
        } else {
            0.0
        }
    };
    let report = limit_study(
        &a.radii,
        |r| Ok(BoundState::new(&p.with_radius(r), &q)?.energy()),
        offset,
        flat,
    )?;
    let mut table = Table::new(vec!["radius", "energy", "flat_energy", "offset", "difference", "ratio"]);
    for row in report.rows {
        table.push(vec![
            row.radius.into(),
            row.curved.into(),
            row.flat.into(),
            offset(row.radius).into(),
            row.difference.into(),
            row.ratio.into(),
        ]);
    }
    emit(&table, config, a.output.format, a.output.output.as_deref())?;
    Ok(())
}
