use micz_core::oracle::gauss_legendre;
use micz_core::specfun::{jacobi_p, log_gamma};
use micz_core::verify::{
    gamma_reflection_errors, gamma_shift_errors, hyp3f2_transformation_errors, sine_integral_errors,
};

#[test]
fn jacobi_orthogonality_with_integer_weights() {
    // ∫ (1-x)^a (1+x)^b P_n P_m dx = 0 for n ≠ m; exact under Gauss-Legendre
    // for polynomial integrands of degree < 2·64
    let (x, w) = gauss_legendre(64);
    for (a, b) in [(0.0, 0.0), (1.0, 2.0), (3.0, 0.0), (2.0, 5.0)] {
        for n in 0..8 {
            for m in 0..8 {
                let v: f64 = x
                    .iter()
                    .zip(&w)
                    .map(|(&x, &w)| {
                        w * (1.0 - x).powf(a)
                            * (1.0 + x).powf(b)
                            * jacobi_p(n, a, b, x).unwrap()
                            * jacobi_p(m, a, b, x).unwrap()
                    })
                    .sum();
                if n != m {
                    assert!(v.abs() < 1e-12, "a={a} b={b} n={n} m={m}: {v}");
                } else {
                    assert!(v > 0.0);
                }
            }
        }
    }
}

#[test]
fn gamma_by_recursion_from_the_unit_interval() {
    // Γ(7.3) = 6.3·5.3·…·1.3·Γ(1.3)
    let base = log_gamma(1.3).unwrap();
    let product: f64 = (1..=6).map(|k| (k as f64 + 0.3).ln()).sum();
    assert!((log_gamma(7.3).unwrap() - (base + product)).abs() < 1e-13);
}

#[test]
fn randomized_identities() {
    for (_, _, e) in sine_integral_errors(100, 1) {
        assert!(e.unwrap() < 1e-11);
    }
    for (_, _, e) in gamma_shift_errors(100, 2) {
        assert!(e.unwrap() < 1e-11);
    }
    for (_, _, e) in gamma_reflection_errors(100, 3) {
        assert!(e.unwrap() < 1e-11);
    }
    for (_, e) in hyp3f2_transformation_errors(100, 4) {
        assert!(e.unwrap() < 1e-11);
    }
}
