//! Associated Legendre functions `P_l^m(x)` on `[-1, 1]`, integer `|m| <= l`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Sign convention for `P_l^m`.
///
/// With `condon_shortley` set, `P_l^m` carries the extra factor `(-1)^m`.
/// In both conventions `P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegendreConvention {
    pub condon_shortley: bool,
}

impl LegendreConvention {
    pub const CONDON_SHORTLEY: Self = Self {
        condon_shortley: true,
    };
    pub const PLAIN: Self = Self {
        condon_shortley: false,
    };

    pub fn name(self) -> &'static str {
        if self.condon_shortley {
            "condon-shortley"
        } else {
            "no-condon-shortley"
        }
    }
}

/// The process-wide convention.
///
/// Chosen by running the `m = 1` addition theorem under both candidates:
/// only the phase-free one reproduces `j_1(kr)/(kr)`. See the
/// `addition_theorem_selects_convention` test in `identities`.
pub const ACTIVE_CONVENTION: LegendreConvention = LegendreConvention::PLAIN;

/// `P_l^m(x)` under [`ACTIVE_CONVENTION`].
pub fn assoc_legendre(l: i32, m: i32, x: f64) -> Result<f64> {
    assoc_legendre_with(ACTIVE_CONVENTION, l, m, x)
}

/// `P_l^m(x)` under an explicit convention.
pub fn assoc_legendre_with(conv: LegendreConvention, l: i32, m: i32, x: f64) -> Result<f64> {
    if l < 0 {
        return domain(format!("Legendre degree must be >= 0, got {l}"));
    }
    if m.abs() > l {
        return domain(format!("|m| = {} exceeds l = {l}", m.abs()));
    }
    if !(x.abs() <= 1.0) {
        return domain(format!("Legendre argument must lie in [-1, 1], got {x}"));
    }
    Ok(legendre_unchecked(conv, l as usize, m, x))
}

pub(crate) fn legendre_unchecked(conv: LegendreConvention, l: usize, m: i32, x: f64) -> f64 {
    let am = m.unsigned_abs() as usize;
    let mut p = plain_positive(l, am, x);
    if conv.condon_shortley && am % 2 == 1 {
        p = -p;
    }
    if m < 0 {
        p *= negative_order_factor(l, am);
    }
    p
}

/// `(-1)^m (l-m)!/(l+m)!`
fn negative_order_factor(l: usize, m: usize) -> f64 {
    let mut ratio = 1.0;
    for k in (l - m + 1)..=(l + m) {
        ratio /= k as f64;
    }
    if m % 2 == 1 {
        -ratio
    } else {
        ratio
    }
}

/// Phase-free `P_l^m(x) = (1-x^2)^{m/2} d^m P_l / dx^m`, `0 <= m <= l`.
fn plain_positive(l: usize, m: usize, x: f64) -> f64 {
    let s = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    // P_m^m = (2m-1)!! s^m
    let mut pmm = 1.0;
    for k in 1..=m {
        pmm *= (2 * k - 1) as f64 * s;
    }
    if l == m {
        return pmm;
    }
    let mut pm1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pm1;
    }
    let mut pm0 = pmm;
    for ll in (m + 2)..=l {
        let next = ((2 * ll - 1) as f64 * x * pm1 - (ll + m - 1) as f64 * pm0) / (ll - m) as f64;
        pm0 = pm1;
        pm1 = next;
    }
    pm1
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn low_orders() {
        assert_eq!(assoc_legendre(0, 0, 0.3).unwrap(), 1.0);
        assert_eq!(assoc_legendre(1, 0, 0.3).unwrap(), 0.3);
        let x: f64 = 0.4;
        let p22 = assoc_legendre(2, 2, x).unwrap();
        assert!((p22 - 3.0 * (1.0 - x * x)).abs() < 1e-15);
        let p31 = assoc_legendre(3, 1, x).unwrap();
        let expect = 1.5 * (5.0 * x * x - 1.0) * (1.0 - x * x).sqrt();
        assert!((p31 - expect).abs() < 1e-15);
    }

    #[test]
    fn rodrigues_negative_order() {
        // P_m^{-m}(cos a) = (-1)^m sin^m a / (2^m m!)
        let a = PI / 3.0;
        let v = assoc_legendre(2, -2, a.cos()).unwrap();
        assert!((v - 0.09375).abs() < 1e-15);
        for m in 0..6 {
            let a: f64 = 1.1;
            let fact: f64 = (1..=m).map(|k| k as f64).product();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let expect = sign * a.sin().powi(m) / (2f64.powi(m) * fact);
            let v = assoc_legendre(m, -m, a.cos()).unwrap();
            assert!((v - expect).abs() < 1e-15, "m={m}");
        }
    }

    #[test]
    fn conventions_differ_by_odd_phase() {
        for (l, m) in [(3, 1), (4, 2), (5, -3)] {
            let a = assoc_legendre_with(LegendreConvention::PLAIN, l, m, 0.2).unwrap();
            let b = assoc_legendre_with(LegendreConvention::CONDON_SHORTLEY, l, m, 0.2).unwrap();
            let expect = if m % 2 == 0 { a } else { -a };
            assert_eq!(b, expect);
        }
    }

    #[test]
    fn orthogonality_with_negative_order() {
        // int_{-1}^{1} P_l^m P_{l'}^{-m} dx = (-1)^m 2/(2l+1) delta_{ll'}
        use crate::quadrature::integrate_finite;
        for m in 0..3 {
            for l in m..5 {
                for lp in m..5 {
                    let r = integrate_finite(
                        |x| {
                            legendre_unchecked(ACTIVE_CONVENTION, l as usize, m, x)
                                * legendre_unchecked(ACTIVE_CONVENTION, lp as usize, -m, x)
                        },
                        -1.0,
                        1.0,
                        1e-13,
                    )
                    .unwrap();
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    let expect = if l == lp { sign * 2.0 / (2 * l + 1) as f64 } else { 0.0 };
                    assert!((r.value - expect).abs() < 1e-12, "l={l} lp={lp} m={m}");
                }
            }
        }
    }

    #[test]
    fn domain_errors() {
        assert!(assoc_legendre(2, 3, 0.1).is_err());
        assert!(assoc_legendre(2, -3, 0.1).is_err());
        assert!(assoc_legendre(2, 1, 1.5).is_err());
    }
}
