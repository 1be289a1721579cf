use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::specfun::{legendre_unchecked, ACTIVE_CONVENTION};

/// Closed form of the two-step integral
/// `int_0^inf k^2 j_m(kr) [j_m(k r1)/(k r1)^m] j_m(k r2) dk`:
/// `(-1)^m (pi/4) r2^{m-1} / (r1 r^{m+1}) P_m^{-m}(cos a) sin^m a`,
/// `cos a = (r1^2 + r2^2 - r^2) / (2 r1 r2)`.
///
/// Zero when `r, r1, r2` cannot form a triangle. On a degenerate triangle the
/// integral sits on a jump for `m = 0` and takes the midpoint value there.
pub fn flight_two_step(m: usize, r: f64, r1: f64, r2: f64) -> Result<f64> {
    if !(r > 0.0 && r1 > 0.0 && r2 > 0.0) {
        return domain("r, r1 and r2 must be positive");
    }
    Ok(two_step_unchecked(m, r, r1, r2))
}

pub(crate) fn two_step_unchecked(m: usize, r: f64, r1: f64, r2: f64) -> f64 {
    let c = (r1 * r1 + r2 * r2 - r * r) / (2.0 * r1 * r2);
    if c.abs() > 1.0 {
        return 0.0;
    }
    let mi = m as i32;
    let s = ((1.0 - c) * (1.0 + c)).max(0.0).sqrt();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let v = sign * PI / 4.0 * r2.powi(mi - 1) / (r1 * r.powi(mi + 1))
        * legendre_unchecked(ACTIVE_CONVENTION, m, -mi, c)
        * s.powi(mi);
    if c.abs() == 1.0 {
        0.5 * v
    } else {
        v
    }
}
