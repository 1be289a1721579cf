use serde::{Deserialize, Serialize};

use super::FlightConfig;
use crate::error::{domain, Error, Result};
use crate::quadrature::{BesselFactor, BesselProduct, QuadratureResult};

/// The exact one-step "density": `pi / (2 r1^2) delta(r - r1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DeltaTerm {
    pub location: f64,
    pub weight: f64,
}

/// The distribution a single step produces; see [`DeltaTerm`].
pub fn single_step_delta(cfg: &FlightConfig) -> Result<DeltaTerm> {
    if cfg.n() != 1 {
        return domain("single_step_delta needs exactly one step");
    }
    let r1 = cfg.lengths()[0];
    Ok(DeltaTerm {
        location: r1,
        weight: std::f64::consts::PI / (2.0 * r1 * r1),
    })
}

pub(crate) fn reject_single_step(cfg: &FlightConfig) -> Result<()> {
    if cfg.n() == 1 {
        return Err(Error::Distributional(
            "a one-step flight integral is pi/(2 r1^2) delta(r - r1); use single_step_delta".into(),
        ));
    }
    Ok(())
}

/// The factor list `j_m(kr), j_m(k r_q)/(k r_q)^m (q < n), j_m(k r_n)`.
pub(crate) fn flight_factors(m: usize, r: f64, lengths: &[f64]) -> Vec<BesselFactor> {
    let n = lengths.len();
    let mut f = Vec::with_capacity(n + 1);
    f.push(BesselFactor::new(m, r, 0));
    f.extend(lengths[..n - 1].iter().map(|&a| BesselFactor::new(m, a, m)));
    f.push(BesselFactor::new(m, lengths[n - 1], 0));
    f
}

/// `J_m(r; r_1..r_n) = int_0^inf k^2 j_m(kr) prod_{q<n}[j_m(k r_q)/(k r_q)^m] j_m(k r_n) dk`
/// by direct quadrature in `k`.
pub fn flight_integral_direct(cfg: &FlightConfig, r: f64, tol: f64) -> Result<QuadratureResult> {
    reject_single_step(cfg)?;
    if !(r > 0.0 && r.is_finite()) {
        return domain(format!("r must be positive, got {r}"));
    }
    BesselProduct::new(flight_factors(cfg.m(), r, cfg.lengths()))?.integrate(tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn cfg(m: usize, l: &[f64]) -> FlightConfig {
        FlightConfig::new(m, l.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let v = flight_integral_direct(&cfg(0, &[1.0, 1.0]), 1.0, 1e-10).unwrap();
        assert!((v.value - PI / 4.0).abs() < 1e-6);
        // three unit steps: int sin^4 k / k^2 dk
        let v = flight_integral_direct(&cfg(0, &[1.0; 3]), 1.0, 1e-10).unwrap();
        assert!((v.value - PI / 4.0).abs() < 1e-6);
        // four unit steps: int sin^5 k / k^3 dk = 5 pi / 32
        let v = flight_integral_direct(&cfg(0, &[1.0; 4]), 1.0, 1e-10).unwrap();
        assert!((v.value - 5.0 * PI / 32.0).abs() < 1e-6);
        let v = flight_integral_direct(&cfg(0, &[1.0, 0.3]), 2.0, 1e-10).unwrap();
        assert!(v.value.abs() < 1e-6);
    }

    #[test]
    fn one_step_is_a_distribution() {
        let c = cfg(0, &[1.3]);
        assert!(matches!(
            flight_integral_direct(&c, 1.0, 1e-8),
            Err(Error::Distributional(_))
        ));
        let d = single_step_delta(&c).unwrap();
        assert_eq!(d.location, 1.3);
        assert!((d.weight - PI / (2.0 * 1.69)).abs() < 1e-15);
    }

    #[test]
    fn vanishes_outside_support() {
        let c = cfg(1, &[1.0, 0.4, 0.3]);
        let s = c.support();
        for r in [1.05 * s.r_max, 0.95 * s.r_min] {
            let v = flight_integral_direct(&c, r, 1e-10).unwrap().value;
            assert!(v.abs() < 1e-8, "r={r}: {v}");
        }
    }

    #[test]
    fn two_step_scaling() {
        let a = flight_integral_direct(&cfg(0, &[0.7, 0.9]), 1.1, 1e-12).unwrap().value;
        let b = flight_integral_direct(&cfg(0, &[1.4, 1.8]), 2.2, 1e-12).unwrap().value;
        assert!((b - a / 8.0).abs() < 1e-10);
    }
}
