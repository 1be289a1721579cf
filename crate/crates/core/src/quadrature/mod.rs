//! Adaptive finite-interval quadrature and semi-infinite oscillatory
//! integration.

mod bessel_tail;
mod expint;
mod gauss_kronrod;
mod oscillatory;

use serde::{Deserialize, Serialize};

pub use bessel_tail::{BesselFactor, BesselProduct};
pub use expint::expint_complex;
pub use gauss_kronrod::{integrate_finite, integrate_partitioned, MAX_DEPTH};
pub use oscillatory::{integrate_oscillatory_tail, levin_u};

/// Default tolerance for finite-interval integrals.
pub const DEFAULT_FINITE_TOL: f64 = 1e-10;
/// Default tolerance for semi-infinite oscillatory integrals.
pub const DEFAULT_OSCILLATORY_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum QuadratureWarning {
    /// A subinterval hit the bisection depth or interval budget.
    SubdivisionLimit,
    /// Cell integrals had no usable sign pattern; the result is a plain sum.
    IrregularSigns,
    /// The accelerated sequence never settled below the tolerance.
    SlowAcceleration,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
    pub converged: bool,
    pub warning: Option<QuadratureWarning>,
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::default();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_lost_bits() {
        let s: CompensatedSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }
}
