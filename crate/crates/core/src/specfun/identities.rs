//! Numerical checks of the Gegenbauer-type addition theorem and the
//! contraction identity derived from it.

use serde::{Deserialize, Serialize};

use super::bessel::{sph_j, sph_j_scaled, MAX_ORDER};
use super::legendre::{legendre_unchecked, LegendreConvention, ACTIVE_CONVENTION};
use crate::error::{domain, Error, Result};
use crate::quadrature::integrate_finite;

/// Both sides of an identity and their absolute difference.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityResidual {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl IdentityResidual {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
        }
    }
}

/// `j_m(kr)/(kr)^m` against the partial sum over `l = m..=l_max` of
/// `(2l+1) j_l(kr1) j_l(kr2) P_l^m(cos a) / [(kr1)(kr2) sin a]^m`,
/// with `r^2 = r1^2 + r2^2 - 2 r1 r2 cos a`.
pub fn addition_theorem_lhs_rhs(
    m: usize,
    k: f64,
    r1: f64,
    r2: f64,
    alpha: f64,
    l_max: usize,
) -> Result<IdentityResidual> {
    addition_theorem_with(ACTIVE_CONVENTION, m, k, r1, r2, alpha, l_max)
}

pub fn addition_theorem_with(
    conv: LegendreConvention,
    m: usize,
    k: f64,
    r1: f64,
    r2: f64,
    alpha: f64,
    l_max: usize,
) -> Result<IdentityResidual> {
    if !(k > 0.0 && r1 > 0.0 && r2 > 0.0) {
        return domain("k, r1 and r2 must be positive");
    }
    if l_max < m {
        return domain(format!("l_max = {l_max} is below m = {m}"));
    }
    if l_max > MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: l_max,
            max: MAX_ORDER,
        });
    }
    if !(alpha > 0.0 && alpha < std::f64::consts::PI) {
        if m >= 1 {
            return Err(Error::Singular(format!(
                "alpha = {alpha} puts sin(alpha) = 0 in the denominator"
            )));
        }
        if !(0.0..=std::f64::consts::PI).contains(&alpha) {
            return domain("alpha must lie in [0, pi]");
        }
    }
    let c = alpha.cos();
    let r = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * c).max(0.0).sqrt();
    let lhs = sph_j_scaled(m, m, k * r);
    let denom = (k * r1 * k * r2 * alpha.sin()).powi(m as i32);
    let mut rhs = 0.0;
    for l in m..=l_max {
        let term = (2 * l + 1) as f64
            * sph_j(l, k * r1)
            * sph_j(l, k * r2)
            * legendre_unchecked(conv, l, m as i32, c);
        rhs += term;
    }
    Ok(IdentityResidual::new(lhs, rhs / denom))
}

/// Compares `j_l(kr1) j_l(kr2)` with the contraction integral
/// `((-1)^m/2) int dr k^m (r1 r2 / r)^(m-1) P_l^{-m}(cos a) sin^m a j_m(kr)`
/// over `[|r1 - r2|, r1 + r2]`.
///
/// The integral is evaluated after substituting `r = r(a)`, which turns it into
/// `((-1)^m/2) int_0^pi da sin a (k^2 r1 r2 sin a)^m P_l^{-m}(cos a) j_m(kr)/(kr)^m`,
/// an integrand without endpoint singularities.
pub fn contraction_identity_check(
    l: usize,
    m: usize,
    k: f64,
    r1: f64,
    r2: f64,
    tol: f64,
) -> Result<IdentityResidual> {
    if l < m {
        return domain(format!("contraction needs l >= m, got l = {l}, m = {m}"));
    }
    if !(k > 0.0 && r1 > 0.0 && r2 > 0.0) {
        return domain("k, r1 and r2 must be positive");
    }
    if l > MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: l,
            max: MAX_ORDER,
        });
    }
    let lhs = sph_j(l, k * r1) * sph_j(l, k * r2);
    let mi = m as i32;
    let scale = (k * k * r1 * r2).powi(mi);
    let integrand = |a: f64| {
        let (s, c) = a.sin_cos();
        let r = (r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * c).max(0.0).sqrt();
        s * (scale * s.powi(mi))
            * legendre_unchecked(ACTIVE_CONVENTION, l, -mi, c)
            * sph_j_scaled(m, m, k * r)
    };
    let quad = integrate_finite(integrand, 0.0, std::f64::consts::PI, 1e-3 * tol)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(IdentityResidual::new(lhs, 0.5 * sign * quad.value))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m0_quarter_turn() {
        let res = addition_theorem_lhs_rhs(0, 1.0, 1.0, 1.0, std::f64::consts::FRAC_PI_2, 40).unwrap();
        let oracle = 2f64.sqrt().sin() / 2f64.sqrt();
        assert!((res.lhs - oracle).abs() < 1e-14);
        assert!((res.lhs - 0.698456).abs() < 1e-6);
        assert!(res.residual < 1e-10);
    }

    #[test]
    fn m0_convergence_is_monotone() {
        let mut last = f64::INFINITY;
        for l_max in [2, 4, 6, 8, 10, 12, 16, 20] {
            let r = addition_theorem_lhs_rhs(0, 1.0, 1.0, 1.4, 0.9, l_max).unwrap();
            if r.residual < 1e-15 {
                break; // at rounding level
            }
            assert!(r.residual < last, "l_max={l_max}");
            last = r.residual;
        }
        assert!(addition_theorem_lhs_rhs(0, 1.0, 1.0, 1.4, 0.9, 20).unwrap().residual < 1e-14);
    }

    #[test]
    fn addition_theorem_selects_convention() {
        let plain =
            addition_theorem_with(LegendreConvention::PLAIN, 1, 2.0, 1.0, 1.5, 1.0, 60).unwrap();
        let cs = addition_theorem_with(LegendreConvention::CONDON_SHORTLEY, 1, 2.0, 1.0, 1.5, 1.0, 60)
            .unwrap();
        assert!(plain.residual < 1e-8, "{plain:?}");
        assert!(cs.residual > 1e-3, "{cs:?}");
        assert_eq!(ACTIVE_CONVENTION, LegendreConvention::PLAIN);
    }

    #[test]
    fn singular_angle() {
        assert!(matches!(
            addition_theorem_lhs_rhs(1, 1.0, 1.0, 1.0, 0.0, 10),
            Err(Error::Singular(_))
        ));
        assert!(addition_theorem_lhs_rhs(0, 1.0, 1.0, 2.0, 0.0, 30).is_ok());
    }

    #[test]
    fn contraction_examples() {
        let r = contraction_identity_check(0, 0, 1.0, 1.0, 1.0, 1e-10).unwrap();
        assert!((r.lhs - 1f64.sin().powi(2)).abs() < 1e-15);
        assert!((r.lhs - 0.708073).abs() < 1e-6);
        assert!(r.residual < 1e-10);
        assert!(contraction_identity_check(2, 0, 3.0, 0.7, 1.2, 1e-8).unwrap().residual < 1e-8);
        assert!(contraction_identity_check(3, 1, 5.0, 1.0, 1.0, 1e-7).unwrap().residual < 1e-7);
    }

    #[test]
    fn contraction_rejects_l_below_m() {
        assert!(contraction_identity_check(1, 2, 1.0, 1.0, 1.0, 1e-8).is_err());
    }
}
