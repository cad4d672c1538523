use crate::error::{Error, Result};

/// Jacobi polynomial `P_n^{(a,b)}(x)` by the three-term recurrence.
pub fn jacobi_p(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    if !(a > -1.0 && b > -1.0) {
        return Err(Error::domain("jacobi_p", format!("a = {a}, b = {b} must exceed -1")));
    }
    if !(-1.0..=1.0).contains(&x) {
        return Err(Error::domain("jacobi_p", format!("x = {x} outside [-1, 1]")));
    }
    let mut p_prev = 1.0;
    if n == 0 {
        return Ok(p_prev);
    }
    let ab = a + b;
    let mut p = 0.5 * ((a - b) + (ab + 2.0) * x);
    for k in 2..=n {
        let k = k as f64;
        let c = 2.0 * k + ab;
        let lead = 2.0 * k * (k + ab) * (c - 2.0);
        let mid = (c - 1.0) * (c * (c - 2.0) * x + a * a - b * b);
        let tail = 2.0 * (k + a - 1.0) * (k + b - 1.0) * c;
        let next = (mid * p - tail * p_prev) / lead;
        p_prev = p;
        p = next;
    }
    Ok(p)
}
