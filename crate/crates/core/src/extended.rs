//! The extended random-flight function
//!
//! `F_{l,m} = int_0^inf k^2 [j_l(kR)/(kR)^m] j_l(kX) prod_{q<n}[j_m(k r_q)/(k r_q)^m] j_m(k r_n) dk`
//!
//! by direct quadrature, by contraction onto the ordinary flight integral,
//! and as a Fourier-Bessel series; plus the gap between the two truncated
//! representations of the one-step case.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::flight::{closure_range, flight_value, signed_sums, FlightConfig};
use crate::quadrature::{integrate_partitioned, BesselFactor, BesselProduct, CompensatedSum, QuadratureResult};
use crate::specfun::{bessel_zeros, legendre_unchecked, sph_j, sph_j_scaled, ZeroTable, ACTIVE_CONVENTION, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendedConfig {
    l: usize,
    big_r: f64,
    x: f64,
    inner: FlightConfig,
}

impl ExtendedConfig {
    /// Outer order `l`, distances `R` (origin to observer) and `X` (exit point
    /// to observer), and the inner flight of order `m <= l`.
    pub fn new(l: usize, big_r: f64, x: f64, inner: FlightConfig) -> Result<Self> {
        if l < inner.m() {
            return domain(format!("outer order l = {l} must be >= m = {}", inner.m()));
        }
        if l + 1 > MAX_ORDER {
            return domain(format!("outer order l = {l} is above the supported range"));
        }
        if !(big_r > 0.0 && big_r.is_finite()) {
            return domain(format!("R must be positive, got {big_r}"));
        }
        if !(x > 0.0 && x.is_finite()) {
            return domain(format!("X must be positive, got {x}"));
        }
        Ok(Self { l, big_r, x, inner })
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn m(&self) -> usize {
        self.inner.m()
    }

    pub fn big_r(&self) -> f64 {
        self.big_r
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn inner(&self) -> &FlightConfig {
        &self.inner
    }

    /// `S~_n = R + S_n`, the interval length of the series representation.
    pub fn s_tilde(&self) -> f64 {
        self.big_r + self.inner.total_length()
    }

    /// Whether `X, R, r_1..r_n` close a non-degenerate polygon.
    pub fn closes(&self) -> bool {
        let mut sides = vec![self.big_r, self.x];
        sides.extend_from_slice(self.inner.lengths());
        let total: f64 = sides.iter().sum();
        sides.iter().all(|&s| 2.0 * s < total)
    }

    fn factors(&self) -> Vec<BesselFactor> {
        let (l, m) = (self.l, self.m());
        let lengths = self.inner.lengths();
        let n = lengths.len();
        let mut f = vec![BesselFactor::new(l, self.big_r, m), BesselFactor::new(l, self.x, 0)];
        f.extend(lengths[..n - 1].iter().map(|&a| BesselFactor::new(m, a, m)));
        f.push(BesselFactor::new(m, lengths[n - 1], 0));
        f
    }
}

/// `F_{l,m}` by direct quadrature in `k`.
pub fn extended_direct(cfg: &ExtendedConfig, tol: f64) -> Result<QuadratureResult> {
    BesselProduct::new(cfg.factors())?.integrate(tol)
}

/// `((-1)^m/2) R^{-m} (RX/r)^{m-1} P_l^{-m}(cos a) sin^m a`,
/// `cos a = (R^2 + X^2 - r^2)/(2RX)`; zero outside `[|R-X|, R+X]`.
pub fn contraction_weight(l: usize, m: usize, big_r: f64, x: f64, r: f64) -> f64 {
    let c = (big_r * big_r + x * x - r * r) / (2.0 * big_r * x);
    if !(c.abs() <= 1.0) {
        return 0.0;
    }
    let mi = m as i32;
    let s = ((1.0 - c) * (1.0 + c)).max(0.0).sqrt();
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    0.5 * sign * big_r.powi(-mi) * (big_r * x / r).powi(mi - 1)
        * legendre_unchecked(ACTIVE_CONVENTION, l, -mi, c)
        * s.powi(mi)
}

/// `F_{l,m} = int_{|R-X|}^{R+X} dr w(r) J_m(r; r_1..r_n)`.
///
/// A single inner step makes `J_m` the delta `pi/(2 r_1^2) delta(r - r_1)`, and
/// the integral collapses onto `r = r_1`.
pub fn extended_via_contraction(cfg: &ExtendedConfig, tol: f64) -> Result<QuadratureResult> {
    let (l, m, big_r, x) = (cfg.l, cfg.m(), cfg.big_r, cfg.x);
    let lengths = cfg.inner.lengths();
    let (lo, hi) = ((big_r - x).abs(), big_r + x);
    if lengths.len() == 1 {
        let r1 = lengths[0];
        let collapse = contraction_weight(l, m, big_r, x, r1) * PI / (2.0 * r1 * r1);
        let value = if r1 > lo && r1 < hi {
            collapse
        } else if r1 == lo || r1 == hi {
            0.5 * collapse
        } else {
            0.0
        };
        return Ok(exact(value));
    }
    let support = closure_range(lengths);
    let (a, b) = (lo.max(support.r_min), hi.min(support.r_max));
    if !(b > a) {
        return Ok(exact(0.0));
    }
    let mut breaks = vec![a];
    breaks.extend(signed_sums(lengths).into_iter().filter(|&s| s > a && s < b));
    breaks.push(b);
    let failure = std::cell::Cell::new(None);
    let q = integrate_partitioned(
        |r| match flight_value(&cfg.inner, r, 1e-2 * tol) {
            Ok(j) => contraction_weight(l, m, big_r, x, r) * j,
            Err(e) => {
                failure.set(Some(e));
                f64::NAN
            }
        },
        &breaks,
        tol,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    q
}

fn exact(value: f64) -> QuadratureResult {
    QuadratureResult {
        value,
        abs_error_estimate: 0.0,
        evaluations: 1,
        converged: true,
        warning: None,
    }
}

/// `F_{l,m}` as the `terms`-term Fourier-Bessel series over zeros of `j_l` on
/// `[0, S~_n]`.
pub fn extended_series(cfg: &ExtendedConfig, terms: usize) -> Result<f64> {
    let zeros = bessel_zeros(cfg.l, terms.max(1))?;
    extended_series_with_zeros(cfg, &zeros, terms)
}

pub fn extended_series_with_zeros(cfg: &ExtendedConfig, zeros: &ZeroTable, terms: usize) -> Result<f64> {
    let st = cfg.s_tilde();
    if cfg.x > st {
        return domain(format!("X = {} exceeds S~ = {st}", cfg.x));
    }
    if zeros.order() != cfg.l {
        return domain(format!("zero table is for order {}, need {}", zeros.order(), cfg.l));
    }
    if terms == 0 || zeros.len() < terms {
        return domain(format!("need {terms} zeros, table has {}", zeros.len()));
    }
    let (l, m) = (cfg.l, cfg.m());
    let lengths = cfg.inner.lengths();
    let n = lengths.len();
    let norm = PI / st.powi(3);
    let sum: CompensatedSum = zeros.zeros()[..terms]
        .iter()
        .map(|&a| {
            let k = a / st;
            let mut t = norm / sph_j(l + 1, a).powi(2)
                * sph_j_scaled(l, m, k * cfg.big_r)
                * sph_j(l, k * cfg.x)
                * sph_j(m, k * lengths[n - 1]);
            for &rq in &lengths[..n - 1] {
                t *= sph_j_scaled(m, m, k * rq);
            }
            t
        })
        .collect();
    Ok(sum.value())
}

/// Both truncated representations of the one-step `F_{l,m}`, and their gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GapResult {
    pub terms: usize,
    /// Classical order-`m` expansion of the delta, integrated against the weight.
    pub lhs: f64,
    /// Order-`l` series of `F_{l,m}`.
    pub rhs: f64,
    pub gap: f64,
    /// The limit both should reach: the delta collapse.
    pub exact: f64,
}

/// [`representation_gap`] for several truncations at once.
///
/// Both sides live on the common interval `[0, S~]`, `S~ = R + r_1`:
///
/// * `lhs = sum_i pi/(S~^3 j_{m+1}(b_i)^2) j_m(b_i r_1/S~) int dr w(r) j_m(b_i r/S~)`,
///   `b_i` the zeros of `j_m` (the classical relation);
/// * `rhs` is [`extended_series`] with one inner step, whose terms by the
///   contraction identity equal the same integral with the zeros of `j_l`.
pub fn representation_gap_sweep(
    l: usize,
    m: usize,
    big_r: f64,
    x: f64,
    r1: f64,
    terms: &[usize],
) -> Result<Vec<GapResult>> {
    let cfg = ExtendedConfig::new(l, big_r, x, FlightConfig::new(m, vec![r1])?)?;
    let n_max = terms.iter().copied().max().unwrap_or(0);
    if n_max == 0 {
        return domain("need at least one positive truncation");
    }
    let st = cfg.s_tilde();
    let classical = bessel_zeros(m, n_max)?;
    let outer = bessel_zeros(l, n_max)?;
    let (lo, hi) = ((big_r - x).abs(), big_r + x);

    let lhs_terms: Vec<f64> = classical
        .zeros()
        .par_iter()
        .map(|&b| {
            let k = b / st;
            let cells = ((k * (hi - lo) / PI).ceil() as usize).max(1);
            let breaks: Vec<f64> = (0..=cells).map(|c| lo + (hi - lo) * c as f64 / cells as f64).collect();
            let q = integrate_partitioned(
                |r| contraction_weight(l, m, big_r, x, r) * sph_j(m, k * r),
                &breaks,
                1e-13,
            )?;
            Ok(PI / (st.powi(3) * sph_j(m + 1, b).powi(2)) * sph_j(m, k * r1) * q.value)
        })
        .collect::<Result<_>>()?;
    let exact = extended_via_contraction(&cfg, 1e-12)?.value;

    terms
        .iter()
        .map(|&n| {
            if n == 0 {
                return domain("truncation must be >= 1");
            }
            let lhs = lhs_terms[..n].iter().copied().collect::<CompensatedSum>().value();
            let rhs = extended_series_with_zeros(&cfg, &outer, n)?;
            Ok(GapResult {
                terms: n,
                lhs,
                rhs,
                gap: (lhs - rhs).abs(),
                exact,
            })
        })
        .collect()
}

pub fn representation_gap(l: usize, m: usize, big_r: f64, x: f64, r1: f64, terms: usize) -> Result<GapResult> {
    Ok(representation_gap_sweep(l, m, big_r, x, r1, &[terms])?[0])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flight::flight_integral_direct;

    fn ext(l: usize, m: usize, big_r: f64, x: f64, lengths: &[f64]) -> ExtendedConfig {
        ExtendedConfig::new(l, big_r, x, FlightConfig::new(m, lengths.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn direct_examples() {
        let v = extended_direct(&ext(0, 0, 1.0, 1.0, &[1.0]), 1e-11).unwrap().value;
        assert!((v - PI / 4.0).abs() < 1e-9);
        let v = extended_direct(&ext(0, 0, 5.0, 1.0, &[1.0]), 1e-11).unwrap().value;
        assert!(v.abs() < 1e-6);
        let c = ext(2, 0, 1.0, 0.8, &[1.2]);
        let d = extended_direct(&c, 1e-11).unwrap().value;
        let k = extended_via_contraction(&c, 1e-11).unwrap().value;
        assert!((d - k).abs() < 1e-8, "{d} vs {k}");
    }

    #[test]
    fn contraction_examples() {
        let v = extended_via_contraction(&ext(0, 0, 1.0, 1.0, &[1.0]), 1e-10).unwrap().value;
        assert!((v - PI / 4.0).abs() < 1e-15);
        let v = extended_via_contraction(&ext(3, 1, 1.0, 0.3, &[2.0]), 1e-10).unwrap().value;
        assert_eq!(v, 0.0);
        let c = ext(3, 1, 1.0, 1.0, &[1.0, 0.5]);
        let d = extended_direct(&c, 1e-11).unwrap().value;
        let k = extended_via_contraction(&c, 1e-11).unwrap().value;
        assert!((d - k).abs() < 1e-8, "{d} vs {k}");
    }

    #[test]
    fn series_examples() {
        let c = ext(2, 0, 1.0, 0.8, &[1.2]);
        let s = extended_series(&c, 400).unwrap();
        let d = extended_direct(&c, 1e-11).unwrap().value;
        assert!((s - d).abs() < 1e-3);
        // F = pi/(4X) on (0, 2]: singular at 0 and cut off at S~, so the
        // truncation error is first order, -1/(2N)
        let c = ext(0, 0, 1.0, 1.0, &[1.0]);
        for n in [400, 1600] {
            let s = extended_series(&c, n).unwrap();
            assert!((s - PI / 4.0 + 0.5 / n as f64).abs() < 1e-6, "{n}: {s}");
        }
    }

    #[test]
    fn series_vanishes_at_x_zero_limit() {
        // j_l(0) = 0 for l >= 1; X itself must stay positive, so take it tiny
        let s = extended_series(&ext(2, 1, 1.0, 1e-300, &[0.7, 0.4]), 50).unwrap();
        assert!(s.abs() < 1e-100);
    }

    #[test]
    fn x_beyond_interval() {
        assert!(extended_series(&ext(1, 0, 1.0, 3.0, &[0.5]), 10).is_err());
    }

    #[test]
    fn reduces_to_a_flight_when_l_equals_m() {
        for (m, big_r, x, lengths) in [(1usize, 0.9, 1.1, vec![0.7, 0.8]), (2, 1.0, 0.6, vec![0.9])] {
            let e = extended_direct(&ext(m, m, big_r, x, &lengths), 1e-12).unwrap().value;
            let mut steps = vec![big_r];
            steps.extend_from_slice(&lengths);
            let f = flight_integral_direct(&FlightConfig::new(m, steps).unwrap(), x, 1e-12)
                .unwrap()
                .value;
            assert!((e - f).abs() < 1e-12, "{e} vs {f}");
        }
    }

    #[test]
    fn gap_at_l_equals_m() {
        let g = representation_gap(1, 1, 1.0, 0.9, 1.1, 400).unwrap();
        assert!(g.gap < 1e-3, "{g:?}");
        assert!((g.lhs - g.exact).abs() < 1e-2);
    }

    #[test]
    fn gap_vanishes_off_polygon() {
        let g = representation_gap(5, 1, 5.0, 1.0, 1.0, 400).unwrap();
        assert_eq!(g.exact, 0.0);
        assert!(g.lhs.abs() < 1e-3 && g.rhs.abs() < 1e-3, "{g:?}");
    }

    #[test]
    fn closes() {
        assert!(ext(0, 0, 1.0, 1.0, &[1.0]).closes());
        assert!(!ext(0, 0, 5.0, 1.0, &[1.0]).closes());
    }
}
