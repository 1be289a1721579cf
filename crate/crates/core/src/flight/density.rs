//! From `J_m` to a probability density in `r`.
//!
//! The stated relation is
//! `p_n(r) = Gamma(m+3/2)^{n-1} (pi/2)^{-(n+1)/2} r^{m+2} / r_n^m J_m(r; r_1..r_n)`.
//! That prefactor is applied as given and not trusted: the integral of the
//! result over the support is measured and reported as `1/c`. For `m = 0`,
//! two unit steps, `c = sqrt(2)`.

use serde::{Deserialize, Serialize};

use super::config::signed_sums;
use super::{flight_integral_direct, flight_recursive, two_step::two_step_unchecked, FlightConfig, MAX_RECURSIVE_STEPS};
use crate::error::{domain, Result};
use crate::quadrature::integrate_partitioned;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlightDensity {
    /// `prefactor * j`.
    pub density: f64,
    pub prefactor: f64,
    pub j: f64,
}

/// `Gamma(m + 3/2) = (2m+1)!! sqrt(pi) / 2^{m+1}`.
fn gamma_m_three_halves(m: usize) -> f64 {
    let mut g = std::f64::consts::PI.sqrt() / 2.0;
    for k in 1..=m {
        g *= k as f64 + 0.5;
    }
    g
}

pub fn density_prefactor(cfg: &FlightConfig, r: f64) -> f64 {
    let n = cfg.n() as i32;
    let m = cfg.m() as i32;
    let rn = cfg.lengths()[cfg.n() - 1];
    gamma_m_three_halves(cfg.m()).powi(n - 1)
        * std::f64::consts::FRAC_PI_2.powf(-(n + 1) as f64 / 2.0)
        * r.powi(m + 2)
        / rn.powi(m)
}

/// `J_m` by the cheapest exact route: closed form, recursion, else direct.
pub(crate) fn flight_value(cfg: &FlightConfig, r: f64, tol: f64) -> Result<f64> {
    let l = cfg.lengths();
    Ok(match cfg.n() {
        2 => two_step_unchecked(cfg.m(), r, l[0], l[1]),
        n if n <= MAX_RECURSIVE_STEPS => flight_recursive(cfg, r, tol)?.value,
        _ => flight_integral_direct(cfg, r, tol)?.value,
    })
}

/// Density at `r` with the stated prefactor.
pub fn density_from_j(cfg: &FlightConfig, r: f64, tol: f64) -> Result<FlightDensity> {
    if cfg.n() < 2 {
        return domain("the density of a one-step flight is a delta; see single_step_delta");
    }
    if !(r > 0.0) {
        return domain(format!("r must be positive, got {r}"));
    }
    let j = flight_value(cfg, r, tol)?;
    let prefactor = density_prefactor(cfg, r);
    Ok(FlightDensity {
        density: prefactor * j,
        prefactor,
        j,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityNormalization {
    /// `int density dr` over the support.
    pub raw_integral: f64,
    /// `1 / raw_integral`.
    pub c: f64,
}

/// Integrates the prefactor density over the support.
pub fn density_normalization(cfg: &FlightConfig, tol: f64) -> Result<DensityNormalization> {
    if cfg.n() < 2 {
        return domain("the density of a one-step flight is a delta; see single_step_delta");
    }
    let s = cfg.support();
    let mut breaks = vec![s.r_min];
    breaks.extend(
        signed_sums(cfg.lengths())
            .into_iter()
            .filter(|&x| x > s.r_min && x < s.r_max),
    );
    breaks.push(s.r_max);
    let failure = std::cell::Cell::new(None);
    let q = integrate_partitioned(
        |r| {
            if r <= 0.0 {
                return 0.0;
            }
            match density_from_j(cfg, r, 1e-2 * tol) {
                Ok(d) => d.density,
                Err(e) => {
                    failure.set(Some(e));
                    f64::NAN
                }
            }
        },
        &breaks,
        tol,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let raw_integral = q?.value;
    Ok(DensityNormalization {
        raw_integral,
        c: 1.0 / raw_integral,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_values() {
        assert!((gamma_m_three_halves(0) - 0.886226925452758).abs() < 1e-15);
        assert!((gamma_m_three_halves(2) - 3.323350970447843).abs() < 1e-14);
    }

    #[test]
    fn three_dimensional_two_step_normalisation() {
        let cfg = FlightConfig::new(0, vec![1.0, 1.0]).unwrap();
        let norm = density_normalization(&cfg, 1e-12).unwrap();
        assert!((norm.c - 2f64.sqrt()).abs() < 1e-10, "{norm:?}");
        for i in 1..50 {
            let r = 2.0 * i as f64 / 50.0;
            let d = density_from_j(&cfg, r, 1e-12).unwrap();
            assert!((norm.c * d.density - r / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn normalised_density_integrates_to_one() {
        let cfg = FlightConfig::new(1, vec![1.0, 0.6, 0.8]).unwrap();
        let norm = density_normalization(&cfg, 1e-10).unwrap();
        assert!((norm.c * norm.raw_integral - 1.0).abs() < 1e-12);
        assert!(norm.raw_integral > 0.0);
    }
}
