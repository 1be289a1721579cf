//! `int_0^inf k^2 prod_f j_{n_f}(k a_f) / (k a_f)^{p_f} dk` with an exact tail.
//!
//! Every spherical Bessel function has the finite Hankel form
//! `j_n(x) = Re[(-i)^{n+1} e^{ix} sum_{t=0}^{n} i^t c_{n,t} x^{-(t+1)}]`,
//! `c_{n,t} = (n+t)! / (t! (n-t)! 2^t)`, so beyond a cutoff `K` the integrand is
//! a finite sum of `C k^{-Q} e^{i w k}` terms whose integrals are
//! `K^{1-Q} E_Q(-i w K)`. Below `K` the integrand is smooth and is integrated
//! adaptively on cells of half a period.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{expint_complex, integrate_partitioned, QuadratureResult};
use crate::error::{domain, Error, Result};
use crate::specfun::{sph_j_scaled, MAX_ORDER};

const MAX_CELLS: usize = 20_000;

/// `j_order(k length) / (k length)^scale_power`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BesselFactor {
    pub order: usize,
    pub length: f64,
    pub scale_power: usize,
}

impl BesselFactor {
    pub fn new(order: usize, length: f64, scale_power: usize) -> Self {
        Self {
            order,
            length,
            scale_power,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BesselProduct {
    factors: Vec<BesselFactor>,
}

/// `sum_q coeffs[q] k^{-q}` multiplying `e^{i omega k}`.
#[derive(Debug, Clone)]
struct Wave {
    omega: f64,
    coeffs: Vec<Complex64>,
}

impl BesselProduct {
    pub fn new(factors: Vec<BesselFactor>) -> Result<Self> {
        if factors.is_empty() {
            return domain("empty Bessel product");
        }
        for f in &factors {
            if !(f.length > 0.0 && f.length.is_finite()) {
                return domain(format!("factor length must be positive, got {}", f.length));
            }
            if f.order > MAX_ORDER {
                return Err(Error::UnsupportedOrder {
                    order: f.order,
                    max: MAX_ORDER,
                });
            }
            if f.scale_power > f.order {
                return domain("scale power exceeds Bessel order");
            }
        }
        let decay: usize = factors.iter().map(|f| 1 + f.scale_power).sum();
        if decay < 3 {
            return domain("the integral does not converge: integrand decays too slowly");
        }
        Ok(Self { factors })
    }

    pub fn factors(&self) -> &[BesselFactor] {
        &self.factors
    }

    /// Sum of all lengths; the highest oscillation frequency.
    pub fn total_length(&self) -> f64 {
        self.factors.iter().map(|f| f.length).sum()
    }

    /// The integrand `k^2 prod_f j(k a)/(k a)^p`.
    pub fn integrand(&self, k: f64) -> f64 {
        let mut v = k * k;
        for f in &self.factors {
            v *= sph_j_scaled(f.order, f.scale_power, k * f.length);
        }
        v
    }

    /// Default cutoff: far enough out that the Hankel sums do not cancel.
    pub fn default_cutoff(&self) -> f64 {
        let a_min = self.factors.iter().map(|f| f.length).fold(f64::INFINITY, f64::min);
        let n_max = self.factors.iter().map(|f| f.order).max().unwrap_or(0);
        (30f64).max(4.0 * (n_max * n_max) as f64) / a_min
    }

    pub fn integrate(&self, tol: f64) -> Result<QuadratureResult> {
        self.integrate_with_cutoff(self.default_cutoff(), tol)
    }

    pub fn integrate_with_cutoff(&self, cutoff: f64, tol: f64) -> Result<QuadratureResult> {
        if !(cutoff > 0.0 && cutoff.is_finite()) {
            return domain("cutoff must be positive");
        }
        let omega = self.total_length();
        let cells = ((cutoff * omega / std::f64::consts::PI).ceil() as usize).clamp(1, MAX_CELLS);
        let breaks: Vec<f64> = (0..=cells).map(|i| cutoff * i as f64 / cells as f64).collect();
        // GK nodes never touch the endpoints, so k = 0 is never evaluated
        let head = integrate_partitioned(|k| self.integrand(k), &breaks, tol)?;
        let tail = self.tail(cutoff)?;
        Ok(QuadratureResult {
            value: head.value + tail,
            ..head
        })
    }

    fn expansion(&self) -> Vec<Wave> {
        let omega_scale = self.total_length();
        let mut waves = vec![Wave {
            omega: 0.0,
            coeffs: vec![Complex64::new(1.0, 0.0)],
        }];
        for f in &self.factors {
            let mut plus = vec![Complex64::new(0.0, 0.0); f.order + f.scale_power + 2];
            // 0.5 (-i)^{n+1} i^t c_{n,t} a^{-(t+1+p)}
            let mut c = 1.0;
            let lead = Complex64::new(0.0, -1.0).powi(f.order as i32 + 1) * 0.5;
            for t in 0..=f.order {
                let phase = Complex64::new(0.0, 1.0).powi(t as i32);
                let s = t + 1 + f.scale_power;
                plus[s] = lead * phase * c * f.length.powi(-(s as i32));
                c *= ((f.order + t + 1) * (f.order - t)) as f64 / (2 * (t + 1)) as f64;
            }
            let minus: Vec<Complex64> = plus.iter().map(|z| z.conj()).collect();
            let mut next = Vec::with_capacity(waves.len() * 2);
            for w in &waves {
                for (sign, poly) in [(1.0, &plus), (-1.0, &minus)] {
                    next.push(Wave {
                        omega: w.omega + sign * f.length,
                        coeffs: poly_mul(&w.coeffs, poly),
                    });
                }
            }
            waves = merge(next, 1e-12 * omega_scale);
        }
        waves
    }

    /// `int_K^inf` of the integrand, exactly.
    fn tail(&self, cutoff: f64) -> Result<f64> {
        let waves = self.expansion();
        let zero_freq = 1e-12 * self.total_length();
        let scale = waves
            .iter()
            .flat_map(|w| w.coeffs.iter())
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        let mut total = 0.0;
        for w in &waves {
            for (q, &c) in w.coeffs.iter().enumerate() {
                if c == Complex64::new(0.0, 0.0) {
                    continue;
                }
                // k^2 k^{-q}
                let big_q = q as i32 - 2;
                if big_q < 1 {
                    return domain("the integral does not converge: integrand decays too slowly");
                }
                if w.omega.abs() <= zero_freq {
                    if big_q == 1 {
                        if c.re.abs() > 1e-10 * scale {
                            return Err(Error::Singular(
                                "non-oscillating 1/k tail: the configuration sits on a support edge".into(),
                            ));
                        }
                        continue;
                    }
                    total += c.re * cutoff.powi(1 - big_q) / (big_q - 1) as f64;
                } else {
                    let e = expint_complex(big_q as u32, Complex64::new(0.0, -w.omega * cutoff))?;
                    total += (c * e).re * cutoff.powi(1 - big_q);
                }
            }
        }
        Ok(total)
    }
}

fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn merge(mut waves: Vec<Wave>, eps: f64) -> Vec<Wave> {
    waves.sort_by(|a, b| a.omega.total_cmp(&b.omega));
    let mut out: Vec<Wave> = Vec::with_capacity(waves.len());
    for w in waves {
        match out.last_mut() {
            Some(last) if (w.omega - last.omega).abs() <= eps => {
                if last.coeffs.len() < w.coeffs.len() {
                    last.coeffs.resize(w.coeffs.len(), Complex64::new(0.0, 0.0));
                }
                for (dst, src) in last.coeffs.iter_mut().zip(&w.coeffs) {
                    *dst += src;
                }
            }
            _ => out.push(w),
        }
    }
    for w in &mut out {
        if w.omega.abs() <= eps {
            w.omega = 0.0;
        }
    }
    out
}
