use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bessel::{sph_j, sph_j_derivative, MAX_ORDER};
use crate::error::{domain, Error, Result};

/// Residual every stored zero must satisfy.
pub const ZERO_RESIDUAL: f64 = 1e-12;

const MAX_ITERATIONS: usize = 100;

/// The first positive zeros `alpha_1 < alpha_2 < ...` of `j_l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroTable {
    order: usize,
    zeros: Vec<f64>,
}

impl ZeroTable {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// 1-based access matching the usual `alpha_i` indexing.
    pub fn zero(&self, i: usize) -> Option<f64> {
        i.checked_sub(1).and_then(|k| self.zeros.get(k).copied())
    }

    /// Builds a table from externally supplied values, checking ordering only.
    pub fn from_values(order: usize, zeros: Vec<f64>) -> Result<Self> {
        if zeros.first().is_some_and(|&z| !(z > 0.0)) || zeros.windows(2).any(|w| !(w[1] > w[0])) {
            return domain("zeros must be positive and strictly increasing");
        }
        Ok(Self { order, zeros })
    }

    /// Truncated copy holding the first `count` zeros.
    pub fn truncated(&self, count: usize) -> Self {
        Self {
            order: self.order,
            zeros: self.zeros[..count.min(self.zeros.len())].to_vec(),
        }
    }

    /// Largest `|j_l(alpha_i)|` over the table.
    pub fn max_residual(&self) -> f64 {
        self.zeros
            .iter()
            .map(|&a| sph_j(self.order, a).abs())
            .fold(0.0, f64::max)
    }
}

/// First `count` positive zeros of `j_l`.
///
/// Order 0 zeros are `i pi`. Higher orders are bracketed by consecutive zeros
/// of order `l - 1` (interlacing) and polished by a safeguarded Newton
/// iteration.
pub fn bessel_zeros(l: usize, count: usize) -> Result<ZeroTable> {
    if count == 0 {
        return domain("zero count must be >= 1");
    }
    if l > MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: l,
            max: MAX_ORDER,
        });
    }
    let mut current: Vec<f64> = (1..=count + l).map(|i| i as f64 * PI).collect();
    for order in 1..=l {
        let needed = count + l - order;
        let mut next = Vec::with_capacity(needed);
        for i in 0..needed {
            next.push(bracketed_root(order, current[i], current[i + 1])?);
        }
        current = next;
    }
    Ok(ZeroTable {
        order: l,
        zeros: current,
    })
}

fn bracketed_root(order: usize, lo: f64, hi: f64) -> Result<f64> {
    let f = |x: f64| sph_j(order, x);
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NonConvergence(format!(
            "interlacing bracket [{lo}, {hi}] does not isolate a zero of j_{order}"
        )));
    }
    // A few bisection steps first so Newton starts inside its basin.
    for _ in 0..4 {
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..MAX_ITERATIONS {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        let dfx = sph_j_derivative(order, x);
        let mut step = fx / dfx;
        let mut candidate = x - step;
        if !(candidate > a && candidate < b) {
            candidate = 0.5 * (a + b);
            step = x - candidate;
        }
        x = candidate;
        if step.abs() <= 4.0 * f64::EPSILON * x || (b - a) <= 4.0 * f64::EPSILON * x {
            if f(x).abs() < ZERO_RESIDUAL {
                return Ok(x);
            }
            break;
        }
    }
    Err(Error::NonConvergence(format!(
        "zero of j_{order} in [{lo}, {hi}] not resolved after {MAX_ITERATIONS} iterations"
    )))
}
