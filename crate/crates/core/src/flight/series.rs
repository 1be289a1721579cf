use std::f64::consts::PI;

use super::direct::reject_single_step;
use super::FlightConfig;
use crate::error::{domain, Result};
use crate::quadrature::CompensatedSum;
use crate::specfun::{bessel_zeros, sph_j, sph_j_scaled, ZeroTable};

/// `J_m` as the Fourier-Bessel partial sum over the first `terms` zeros of
/// `j_m` on `[0, S_n]`:
///
/// `sum_i pi/(S^3 j_{m+1}(a_i)^2) j_m(x_i r) prod_{q<n}[j_m(x_i r_q)/(x_i r_q)^m] j_m(x_i r_n)`,
/// `x_i = a_i / S_n`.
///
/// For three or more steps this converges pointwise inside the support; for
/// two steps `J_m` jumps at the support edges and the series shows Gibbs
/// oscillations next to them.
pub fn flight_series(cfg: &FlightConfig, r: f64, terms: usize) -> Result<f64> {
    let zeros = bessel_zeros(cfg.m(), terms.max(1))?;
    flight_series_with_zeros(cfg, r, &zeros, terms)
}

/// [`flight_series`] with a precomputed table of zeros of `j_m`.
pub fn flight_series_with_zeros(cfg: &FlightConfig, r: f64, zeros: &ZeroTable, terms: usize) -> Result<f64> {
    reject_single_step(cfg)?;
    let s = cfg.total_length();
    if !(0.0..=s).contains(&r) {
        return domain(format!("r = {r} outside [0, S_n = {s}]"));
    }
    if zeros.order() != cfg.m() {
        return domain(format!("zero table is for order {}, need {}", zeros.order(), cfg.m()));
    }
    if terms == 0 || zeros.len() < terms {
        return domain(format!("need {terms} zeros, table has {}", zeros.len()));
    }
    Ok(series_sum(cfg.m(), s, r, cfg.lengths(), &zeros.zeros()[..terms]))
}

pub(crate) fn series_sum(m: usize, s: f64, r: f64, lengths: &[f64], zeros: &[f64]) -> f64 {
    let n = lengths.len();
    let norm = PI / s.powi(3);
    let sum: CompensatedSum = zeros
        .iter()
        .map(|&a| {
            let x = a / s;
            let mut t = norm / sph_j(m + 1, a).powi(2) * sph_j(m, x * r) * sph_j(m, x * lengths[n - 1]);
            for &rq in &lengths[..n - 1] {
                t *= sph_j_scaled(m, m, x * rq);
            }
            t
        })
        .collect();
    sum.value()
}
