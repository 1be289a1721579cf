//! The flight integral by repeated contraction.
//!
//! The last two factors contract into one over an intermediate diagonal rho:
//!
//! `[j_m(ka)/(ka)^m] j_m(kb) = int drho w(rho; a, b) j_m(k rho)`,
//! `w = ((-1)^m/2) a^{-m} (ab/rho)^{m-1} P_m^{-m}(cos g) sin^m g`,
//! `cos g = (a^2 + b^2 - rho^2)/(2ab)`, `rho in [|a-b|, a+b]`,
//!
//! so an `n`-step integral is a 1-D integral over an `(n-1)`-step one. Two
//! steps are done in closed form.

use super::config::{closure_range, signed_sums};
use super::direct::reject_single_step;
use super::two_step::two_step_unchecked;
use super::FlightConfig;
use crate::error::{domain, Error, Result};
use crate::quadrature::{integrate_partitioned, QuadratureResult};

/// Largest step count served; each extra step nests another quadrature.
pub const MAX_RECURSIVE_STEPS: usize = 8;

/// Contraction weight `w(rho; a, b)`; zero outside `[|a-b|, a+b]`.
fn contraction_weight(m: usize, rho: f64, a: f64, b: f64) -> f64 {
    crate::extended::contraction_weight(m, m, a, b, rho)
}

pub fn flight_recursive(cfg: &FlightConfig, r: f64, tol: f64) -> Result<QuadratureResult> {
    reject_single_step(cfg)?;
    if !(r > 0.0 && r.is_finite()) {
        return domain(format!("r must be positive, got {r}"));
    }
    if cfg.n() > MAX_RECURSIVE_STEPS {
        return Err(Error::Refused(format!(
            "{} steps would nest {} quadratures; use the series route",
            cfg.n(),
            cfg.n() - 2
        )));
    }
    recurse(cfg.m(), r, cfg.lengths(), tol)
}

fn recurse(m: usize, r: f64, lengths: &[f64], tol: f64) -> Result<QuadratureResult> {
    let n = lengths.len();
    if n == 2 {
        return Ok(QuadratureResult {
            value: two_step_unchecked(m, r, lengths[0], lengths[1]),
            abs_error_estimate: 0.0,
            evaluations: 1,
            converged: true,
            warning: None,
        });
    }
    let (a, b) = (lengths[n - 2], lengths[n - 1]);
    let head = &lengths[..n - 2];

    // rho must close a triangle with (a, b) and a polygon with (r, head...)
    let mut sides = Vec::with_capacity(n - 1);
    sides.push(r);
    sides.extend_from_slice(head);
    let outer = closure_range(&sides);
    let lo = (a - b).abs().max(outer.r_min);
    let hi = (a + b).min(outer.r_max);
    if !(hi > lo) {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 1,
            converged: true,
            warning: None,
        });
    }
    let mut breaks = vec![lo];
    breaks.extend(signed_sums(&sides).into_iter().filter(|&x| x > lo && x < hi));
    breaks.push(hi);

    let inner_tol = 1e-2 * tol;
    let failure = std::cell::Cell::new(None);
    let q = integrate_partitioned(
        |rho| {
            let w = contraction_weight(m, rho, a, b);
            match recurse(m, r, &tail_copy(head, rho), inner_tol) {
                Ok(v) => w * v.value,
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
    q
}

fn tail_copy(head: &[f64], rho: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(head.len() + 1);
    v.extend_from_slice(head);
    v.push(rho);
    v
}
