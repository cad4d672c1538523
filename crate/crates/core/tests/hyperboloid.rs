use micz_core::geometry::ln_sinh;
use micz_core::hyperboloid::{bound_state_count, bracket_condition, hyper_energy, HyperBoundState};
use micz_core::state::BoundState;
use micz_core::verify::{compare_counts, radial_overlap, random_states};
use micz_core::{Error, Geometry, HalfInt, PhysParams, QuantumNumbers};

fn q(n2: i64, j2: i64, m2: i64) -> QuantumNumbers {
    QuantumNumbers::new(
        HalfInt::from_twice(n2),
        HalfInt::from_twice(j2),
        HalfInt::from_twice(m2),
    )
}

#[test]
fn spectrum_examples() {
    let p = PhysParams::atomic(Geometry::Hyperboloid).with_radius(10.0);
    assert!((hyper_energy(&p, &q(2, 0, 0)).unwrap() + 0.4).abs() < 1e-15);
    assert!((hyper_energy(&p, &q(4, 0, 0)).unwrap() + 0.04).abs() < 1e-15);
    assert!(matches!(hyper_energy(&p, &q(8, 0, 0)), Err(Error::NoBoundState { .. })));
}

#[test]
fn counts_against_the_eigen_solver() {
    let zero = HalfInt::ZERO;
    for (beta, expected) in [(10.0, 3), (0.5, 0), (4.01, 2)] {
        let p = PhysParams::atomic(Geometry::Hyperboloid).with_radius(beta);
        assert_eq!(bound_state_count(&p, zero, zero), expected);
        let (oracle, norm, _) = compare_counts(&p, zero, zero, 4000).unwrap();
        assert_eq!(oracle, norm, "R0/r0 = {beta}");
    }
    // the third level at R0/r0 = 10 fails the bracket condition
    let p = PhysParams::atomic(Geometry::Hyperboloid).with_radius(10.0);
    assert!(!bracket_condition(&p, &q(6, 0, 0)));
    assert!(HyperBoundState::new(&p, &q(6, 0, 0)).is_ok());
}

#[test]
fn quadrature_norms() {
    for s in random_states(Geometry::Hyperboloid, 30, 31, HalfInt::from_int(6)) {
        let st = BoundState::new(&s.params, &s.q).unwrap();
        let v = radial_overlap(&st, &st).unwrap();
        assert!((v - 1.0).abs() < 1e-8, "{s}: {v}");
    }
}

#[test]
fn asymptotic_log_slope() {
    // ln|R/sinh^{j~}τ| has slope n - j - 1 - σ at large τ
    for s in random_states(Geometry::Hyperboloid, 30, 32, HalfInt::from_int(6)) {
        let st = HyperBoundState::new(&s.params, &s.q).unwrap();
        let jt = st.notation.j_tilde;
        let stripped = |t: f64| st.quasi_radial(t).unwrap().abs().ln() - jt * ln_sinh(t);
        let (t1, t2) = (18.0, 20.0);
        let slope = (stripped(t2) - stripped(t1)) / (t2 - t1);
        let expected = st.radial_degree() as f64 - st.sigma();
        assert!((slope - expected).abs() < 1e-9, "{s}: {slope} vs {expected}");
    }
}

#[test]
fn ground_state_constant() {
    for r0 in [2.0, 7.5, 40.0] {
        let p = PhysParams::atomic(Geometry::Hyperboloid).with_radius(r0);
        let st = HyperBoundState::new(&p, &q(2, 0, 0)).unwrap();
        let sigma = st.sigma();
        let a = 2.0 * (sigma * (sigma * sigma - 1.0) / r0.powi(3)).sqrt();
        assert!((st.norm_constant().unwrap() - a).abs() < 1e-13 * a);
        assert!((st.quasi_radial(0.8).unwrap() - a * (-0.8 * sigma).exp()).abs() < 1e-13 * a);
    }
}
