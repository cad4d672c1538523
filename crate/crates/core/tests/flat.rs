use std::f64::consts::PI;

use micz_core::flat::{flat_energy, FlatBoundState};
use micz_core::oracle::{integrate_pieces, Tolerance};
use micz_core::state::BoundState;
use micz_core::verify::{radial_overlap, random_states};
use micz_core::{Geometry, HalfInt, PhysParams, QuantumNumbers};

fn states(count: usize, seed: u64) -> Vec<FlatBoundState> {
    random_states(Geometry::Flat, count, seed, HalfInt::from_int(8))
        .into_iter()
        .map(|s| FlatBoundState::new(&s.params, &s.q).unwrap())
        .collect()
}

fn sign_changes(values: &[f64]) -> usize {
    let peak = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let signs: Vec<f64> = values
        .iter()
        .filter(|v| v.abs() > 1e-12 * peak)
        .map(|v| v.signum())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

#[test]
fn radial_norm_by_quadrature_up_to_n8() {
    for st in states(40, 11) {
        let b = BoundState::Flat(st);
        let norm = radial_overlap(&b, &b).unwrap();
        assert!((norm - 1.0).abs() < 1e-9, "{:?}: {norm}", st.q);
    }
}

#[test]
fn radial_function_has_n_minus_j_minus_1_roots() {
    for st in states(40, 12) {
        let end = BoundState::Flat(st).extent().unwrap();
        let values: Vec<f64> = (1..20_000).map(|i| st.radial(end * i as f64 / 20_000.0)).collect();
        assert_eq!(sign_changes(&values), st.radial_degree(), "{:?}", st.q);
    }
}

#[test]
fn density_is_phi_independent_and_fully_normalized() {
    for st in states(10, 13) {
        let (r, theta) = (1.3 / st.kappa, 0.9);
        let a = st.wavefunction(r, theta, 0.2).norm_sqr();
        let b = st.wavefunction(r, theta, 2.9).norm_sqr();
        assert!((a - b).abs() <= 1e-14 * a);
        // ∫|ψ|² r² dr dΩ with the φ integral done analytically
        let angular = st_angular_norm(&st);
        let radial = radial_overlap(&BoundState::Flat(st), &BoundState::Flat(st)).unwrap();
        assert!((angular * radial - 1.0).abs() < 1e-8);
    }
}

fn st_angular_norm(st: &FlatBoundState) -> f64 {
    let z = micz_core::angular::AngularState::new(&st.params, &st.q).unwrap();
    let v = integrate_pieces(
        |t: f64| z.theta_part(t).powi(2) * t.sin(),
        0.0,
        PI,
        8,
        Tolerance::default(),
    )
    .unwrap()
    .value;
    2.0 * PI * v
}

#[test]
fn closed_form_examples() {
    let p = PhysParams::atomic(Geometry::Flat);
    let q = |n, j, m| QuantumNumbers::new(HalfInt::from_int(n), HalfInt::from_int(j), HalfInt::from_int(m));
    assert_eq!(flat_energy(&p, &q(1, 0, 0)).unwrap(), -0.5);
    let st = FlatBoundState::new(&p, &q(1, 0, 0)).unwrap();
    assert!((st.radial(1.0) - 0.735_758_882_342_884_6).abs() < 1e-15);
    // s = 0, m = 1, 4μλ1/ħ² = 3: δ = 1/2
    let p = p.with_lambdas(0.75, 0.0);
    let e = flat_energy(&p, &q(2, 1, 1)).unwrap();
    assert!((e + 0.08).abs() < 1e-16);
}
