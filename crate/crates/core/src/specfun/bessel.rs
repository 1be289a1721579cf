//! Spherical Bessel functions of the first kind, `j_n(x) = sqrt(pi / 2x) J_{n+1/2}(x)`.
//!
//! Three evaluation paths are used:
//!
//! * the ascending series when `x^2 <= 2n + 3`, where every term is smaller
//!   than the previous one and there is no cancellation;
//! * upward recurrence from `j_0`, `j_1` when `x >= n` (stable there);
//! * Miller's downward recurrence otherwise, normalised against the exact
//!   `j_0` and `j_1`.

use crate::error::{domain, Error, Result};

/// Largest order accepted by the public evaluators.
pub const MAX_ORDER: usize = 200;

/// Evaluates `j_n(x)` for `x >= 0`.
pub fn spherical_bessel_j(n: usize, x: f64) -> Result<f64> {
    check_args(n, x)?;
    Ok(sph_j(n, x))
}

/// Evaluates `j_n(x) / x^p` for `p <= n`, finite at `x = 0`.
///
/// At the origin this is `1/(2n+1)!!` when `p == n` and zero otherwise.
pub fn spherical_bessel_j_scaled(n: usize, p: usize, x: f64) -> Result<f64> {
    check_args(n, x)?;
    if p > n {
        return domain(format!("scaling power {p} exceeds order {n}"));
    }
    Ok(sph_j_scaled(n, p, x))
}

fn check_args(n: usize, x: f64) -> Result<()> {
    if n > MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: n,
            max: MAX_ORDER,
        });
    }
    if !(x >= 0.0) || !x.is_finite() {
        return domain(format!("spherical Bessel argument must be finite and >= 0, got {x}"));
    }
    Ok(())
}

#[inline]
fn in_series_region(n: usize, x: f64) -> bool {
    x * x <= (2 * n + 3) as f64
}

/// Unchecked `j_n(x)`; callers guarantee `n <= MAX_ORDER` and `x >= 0`.
#[inline]
pub(crate) fn sph_j(n: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if n == 0 { 1.0 } else { 0.0 };
    }
    if in_series_region(n, x) {
        series(n, 0, x)
    } else if x >= n as f64 {
        upward(n, x)
    } else {
        miller(n, x)
    }
}

/// Unchecked `j_n(x) / x^p` with `p <= n`.
#[inline]
pub(crate) fn sph_j_scaled(n: usize, p: usize, x: f64) -> f64 {
    debug_assert!(p <= n);
    if p == 0 {
        return sph_j(n, x);
    }
    if in_series_region(n, x) {
        series(n, p, x)
    } else {
        sph_j(n, x) / x.powi(p as i32)
    }
}

/// Ascending series for `j_n(x) / x^p`:
/// `x^(n-p) / (2n+1)!! * sum_k (-x^2/2)^k / (k! (2n+3)(2n+5)...(2n+2k+1))`.
pub(crate) fn series(n: usize, p: usize, x: f64) -> f64 {
    let mut prefactor = 1.0;
    for k in 1..=n {
        let odd = (2 * k + 1) as f64;
        if k <= n - p {
            prefactor *= x / odd;
        } else {
            prefactor /= odd;
        }
    }
    if prefactor == 0.0 {
        return 0.0;
    }
    let half_x2 = -0.5 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 1..200 {
        term *= half_x2 / (k as f64 * (2 * n + 2 * k + 1) as f64);
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    prefactor * sum
}

#[inline]
fn j0_j1(x: f64) -> (f64, f64) {
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    (j0, (j0 - c) / x)
}

/// Forward recurrence `j_{k+1} = (2k+1)/x j_k - j_{k-1}`; stable for `n <= x`.
pub(crate) fn upward(n: usize, x: f64) -> f64 {
    let (j0, j1) = j0_j1(x);
    if n == 0 {
        return j0;
    }
    let (mut prev, mut cur) = (j0, j1);
    for k in 1..n {
        let next = (2 * k + 1) as f64 / x * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Miller's backward recurrence, started well above `max(n, x)`.
pub(crate) fn miller(n: usize, x: f64) -> f64 {
    const BIG: f64 = 1e250;
    let top = n.max(x as usize);
    let start = top + 20 + (40.0 * top as f64).sqrt() as usize;

    let mut above = 0.0_f64; // v_{k+1}
    let mut cur = 1e-300_f64; // v_k
    let mut saved = if start == n { cur } else { 0.0 };
    let mut v1 = 0.0;
    for k in (1..=start).rev() {
        let below = (2 * k + 1) as f64 / x * cur - above;
        above = cur;
        cur = below;
        if k - 1 == n {
            saved = cur;
        }
        if k - 1 == 1 {
            v1 = cur;
        }
        if cur.abs() > BIG {
            cur /= BIG;
            above /= BIG;
            saved /= BIG;
            v1 /= BIG;
        }
    }
    let mut v0 = cur;
    let norm = v0.abs().max(v1.abs());
    v0 /= norm;
    v1 /= norm;
    saved /= norm;
    if n == 1 {
        saved = v1;
    } else if n == 0 {
        saved = v0;
    }
    // Least-squares fit of the unnormalised pair against the exact one; j_0
    // and j_1 never vanish together, so the denominator stays away from 0.
    let (j0, j1) = j0_j1(x);
    let scale = (j0 * v0 + j1 * v1) / (v0 * v0 + v1 * v1);
    saved * scale
}

/// Derivative `j_n'(x) = j_{n-1}(x) - (n+1)/x j_n(x)` for `n >= 1`, `x > 0`.
pub(crate) fn sph_j_derivative(n: usize, x: f64) -> f64 {
    if n == 0 {
        let (_, j1) = j0_j1(x);
        return -j1;
    }
    sph_j(n - 1, x) - (n + 1) as f64 / x * sph_j(n, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn origin_values() {
        assert_eq!(spherical_bessel_j(0, 0.0).unwrap(), 1.0);
        assert_eq!(spherical_bessel_j(3, 0.0).unwrap(), 0.0);
        assert_eq!(spherical_bessel_j_scaled(2, 2, 0.0).unwrap(), 1.0 / 15.0);
        assert_eq!(spherical_bessel_j_scaled(3, 1, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn j0_vanishes_at_pi() {
        assert!(spherical_bessel_j(0, PI).unwrap().abs() < 1e-14);
    }

    #[test]
    fn leading_taylor_term() {
        let x = 1e-3;
        let v = spherical_bessel_j(2, x).unwrap();
        assert!(rel(v, x * x / 15.0) < 1e-6, "{v}");
        // the next Taylor term is -x^4/210, so the leading term alone is within 1e-12 absolute
        assert!((v - x * x / 15.0).abs() < 1e-12);
    }

    #[test]
    fn first_root_of_j1() {
        assert!(spherical_bessel_j(1, 4.49340945790906).unwrap().abs() < 1e-10);
    }

    #[test]
    fn closed_forms_match() {
        for &x in &[0.7f64, 2.5, 9.0, 33.3, 1234.5, 9999.0] {
            let (s, c) = (x.sin(), x.cos());
            let j2 = (3.0 / (x * x) - 1.0) * s / x - 3.0 * c / (x * x);
            let v = spherical_bessel_j(2, x).unwrap();
            assert!((v - j2).abs() < 1e-14 * (1.0 + j2.abs()) + 1e-15, "x={x}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(spherical_bessel_j(0, -1.0), Err(Error::Domain(_))));
        assert!(matches!(
            spherical_bessel_j(201, 1.0),
            Err(Error::UnsupportedOrder { .. })
        ));
        assert!(spherical_bessel_j_scaled(1, 2, 1.0).is_err());
    }

    #[test]
    fn paths_agree_at_crossovers() {
        for n in 2..=150 {
            // series / Miller boundary
            let x = ((2 * n + 3) as f64).sqrt();
            let s = series(n, 0, x);
            let m = miller(n, x);
            assert!(rel(m, s) < 1e-12, "series/miller n={n}: {s} vs {m}");
            // Miller / upward boundary
            let x = n as f64;
            let u = upward(n, x);
            let m = miller(n, x);
            assert!(rel(u, m) < 1e-12, "upward/miller n={n}: {u} vs {m}");
        }
    }

    #[test]
    fn sum_rule() {
        // sum_k (2k+1) j_k(x)^2 = 1
        for &x in &[0.3, 4.0, 17.0, 60.0] {
            let top = (x as usize) + 60;
            let s: f64 = (0..=top)
                .map(|k| (2 * k + 1) as f64 * sph_j(k, x).powi(2))
                .sum();
            assert!((s - 1.0).abs() < 1e-13, "x={x} sum={s}");
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        for &(n, x) in &[(0, 1.3), (1, 2.0), (3, 7.5), (5, 3.0)] {
            let h = 1e-5;
            let fd = (sph_j(n, x + h) - sph_j(n, x - h)) / (2.0 * h);
            assert!((fd - sph_j_derivative(n, x)).abs() < 1e-9);
        }
    }
}
