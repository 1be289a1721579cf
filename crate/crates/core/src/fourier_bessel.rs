//! Fourier-Bessel expansions on `[0, S]` and the partial-sum kernels
//! `K_N(z, z') = sum_i j_m(a_i z) j_m(a_i z') / j_{l+1}(a_i)^2`, `a_i` the zeros
//! of `j_l`.
//!
//! For `l == m` this is the classical orthogonal system and `2 z'^2 K_N`
//! tends to `delta(z - z')`. For `l > m` the functions `j_m(a_i z)` are not
//! orthogonal; [`Kernel::smoothed`] measures what the kernel does to a test
//! function either way.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::quadrature::{integrate_partitioned, CompensatedSum, DEFAULT_FINITE_TOL};
use crate::specfun::{bessel_zeros, sph_j, ZeroTable, MAX_ORDER};

/// `f(r) ~ sum_i A_i j_l(a_i r / S)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FourierBesselSeries {
    pub s: f64,
    pub l: usize,
    pub coefficients: Vec<f64>,
    /// Whether the quadrature behind each coefficient met its tolerance.
    pub converged: Vec<bool>,
    zeros: Vec<f64>,
}

impl FourierBesselSeries {
    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    pub fn all_converged(&self) -> bool {
        self.converged.iter().all(|&c| c)
    }

    /// `sum_i A_i j_l(a_i r/S)`, ascending in `i`, compensated.
    pub fn evaluate(&self, r: f64) -> Result<f64> {
        if !(0.0..=self.s).contains(&r) {
            return domain(format!("r = {r} outside [0, {}]", self.s));
        }
        let sum: CompensatedSum = self
            .coefficients
            .iter()
            .zip(&self.zeros)
            .map(|(&a, &alpha)| a * sph_j(self.l, alpha * r / self.s))
            .collect();
        Ok(sum.value())
    }

    /// `S^3/2 sum_i A_i^2 j_{l+1}(a_i)^2`, which tends to `int_0^S r^2 f^2 dr`.
    pub fn parseval_sum(&self) -> f64 {
        let sum: CompensatedSum = self
            .coefficients
            .iter()
            .zip(&self.zeros)
            .map(|(&a, &alpha)| a * a * sph_j(self.l + 1, alpha).powi(2))
            .collect();
        0.5 * self.s.powi(3) * sum.value()
    }
}

/// Break points at the interior zeros of `j_l(alpha z)` on `[0, 1]`.
fn oscillation_breaks(zeros: &[f64], i: usize) -> Vec<f64> {
    let alpha = zeros[i];
    let mut b = Vec::with_capacity(i + 2);
    b.push(0.0);
    b.extend(zeros[..i].iter().map(|&a| a / alpha));
    b.push(1.0);
    b
}

/// Fourier-Bessel coefficients of `f` on `[0, s]` with `n` terms of order `l`.
pub fn expand<F>(f: F, l: usize, s: f64, n: usize) -> Result<FourierBesselSeries>
where
    F: Fn(f64) -> f64 + Sync,
{
    if !(s > 0.0 && s.is_finite()) {
        return domain(format!("interval length must be positive, got {s}"));
    }
    if n == 0 {
        return domain("need at least one term");
    }
    let table = bessel_zeros(l, n)?;
    let zeros = table.zeros().to_vec();
    let results: Vec<(f64, bool)> = (0..n)
        .into_par_iter()
        .map(|i| {
            let alpha = zeros[i];
            let q = integrate_partitioned(
                |z| z * z * sph_j(l, alpha * z) * f(s * z),
                &oscillation_breaks(&zeros, i),
                DEFAULT_FINITE_TOL,
            )?;
            let norm = sph_j(l + 1, alpha).powi(2);
            Ok((2.0 * q.value / norm, q.converged))
        })
        .collect::<Result<_>>()?;
    let (coefficients, converged) = results.into_iter().unzip();
    Ok(FourierBesselSeries {
        s,
        l,
        coefficients,
        converged,
        zeros,
    })
}

/// Free-function form of [`FourierBesselSeries::evaluate`].
pub fn evaluate(series: &FourierBesselSeries, r: f64) -> Result<f64> {
    series.evaluate(r)
}

/// Inner order `m`, outer order `l >= m`, truncation `n` and sample grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelSpec {
    pub m: usize,
    pub l: usize,
    pub n: usize,
    pub grid: Vec<f64>,
}

impl KernelSpec {
    /// Spec with the default interior grid `0.1, 0.2, ..., 0.9`.
    pub fn new(m: usize, l: usize, n: usize) -> Result<Self> {
        Self::with_grid(m, l, n, (1..=9).map(|i| i as f64 / 10.0).collect())
    }

    pub fn with_grid(m: usize, l: usize, n: usize, grid: Vec<f64>) -> Result<Self> {
        if l < m {
            return domain(format!("outer order l = {l} must be >= inner order m = {m}"));
        }
        if n == 0 {
            return domain("truncation must be >= 1");
        }
        if l.max(m) + 1 > MAX_ORDER {
            return domain(format!("orders above {} are not supported", MAX_ORDER - 1));
        }
        if let Some(z) = grid.iter().find(|z| !(0.0..=1.0).contains(*z)) {
            return domain(format!("grid point {z} outside [0, 1]"));
        }
        Ok(Self { m, l, n, grid })
    }
}

/// A [`KernelSpec`] with its zeros and normalisations resolved.
#[derive(Debug, Clone)]
pub struct Kernel {
    spec: KernelSpec,
    zeros: Vec<f64>,
    inv_norm: Vec<f64>,
}

impl Kernel {
    pub fn new(spec: KernelSpec) -> Result<Self> {
        let table = bessel_zeros(spec.l, spec.n)?;
        Self::with_zeros(spec, &table)
    }

    /// Uses an externally supplied zero table (at least `spec.n` entries).
    pub fn with_zeros(spec: KernelSpec, table: &ZeroTable) -> Result<Self> {
        if table.len() < spec.n {
            return domain(format!("zero table holds {} zeros, need {}", table.len(), spec.n));
        }
        let zeros = table.zeros()[..spec.n].to_vec();
        let inv_norm = zeros
            .iter()
            .map(|&a| 1.0 / sph_j(spec.l + 1, a).powi(2))
            .collect();
        Ok(Self {
            spec,
            zeros,
            inv_norm,
        })
    }

    pub fn spec(&self) -> &KernelSpec {
        &self.spec
    }

    pub fn zeros(&self) -> &[f64] {
        &self.zeros
    }

    /// `K_N(z, z')` with `N = min(terms, spec.n)`.
    pub fn partial_sum(&self, z: f64, zp: f64, terms: usize) -> Result<f64> {
        for v in [z, zp] {
            if !(0.0..=1.0).contains(&v) {
                return domain(format!("kernel argument {v} outside [0, 1]"));
            }
        }
        let m = self.spec.m;
        let sum: CompensatedSum = self
            .zeros
            .iter()
            .zip(&self.inv_norm)
            .take(terms)
            .map(|(&a, &w)| sph_j(m, a * z) * sph_j(m, a * zp) * w)
            .collect();
        Ok(sum.value())
    }

    /// `int_0^1 z'^2 j_m(a_i z') f(z') dz'` for every zero.
    pub fn moments<F>(&self, f: F, tol: f64) -> Result<Vec<f64>>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let m = self.spec.m;
        self.zeros
            .par_iter()
            .map(|&a| {
                let cells = (a / std::f64::consts::PI).ceil().max(1.0) as usize;
                let breaks: Vec<f64> = (0..=cells).map(|c| c as f64 / cells as f64).collect();
                let q = integrate_partitioned(|z| z * z * sph_j(m, a * z) * f(z), &breaks, tol)?;
                Ok(q.value)
            })
            .collect()
    }

    /// `F_N[f](z) = 2 int_0^1 z'^2 K_N(z, z') f(z') dz'` from precomputed
    /// [`moments`](Self::moments), with `N = min(terms, spec.n)`.
    pub fn smoothed(&self, moments: &[f64], z: f64, terms: usize) -> Result<f64> {
        if !(0.0..=1.0).contains(&z) {
            return domain(format!("z = {z} outside [0, 1]"));
        }
        let m = self.spec.m;
        let sum: CompensatedSum = self
            .zeros
            .iter()
            .zip(&self.inv_norm)
            .zip(moments)
            .take(terms)
            .map(|((&a, &w), &c)| sph_j(m, a * z) * w * c)
            .collect();
        Ok(2.0 * sum.value())
    }
}

/// `K_N(z, z')` for a one-off evaluation.
pub fn kernel_partial_sum(spec: &KernelSpec, z: f64, zp: f64) -> Result<f64> {
    Kernel::new(spec.clone())?.partial_sum(z, zp, spec.n)
}

/// `F_N[f](z)` for a one-off evaluation.
pub fn delta_test<F>(spec: &KernelSpec, f: F, z: f64) -> Result<f64>
where
    F: Fn(f64) -> f64 + Sync,
{
    let kernel = Kernel::new(spec.clone())?;
    let moments = kernel.moments(f, 1e-13)?;
    kernel.smoothed(&moments, z, spec.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn expands_its_own_basis_function() {
        let a1 = bessel_zeros(0, 1).unwrap().zeros()[0];
        let f = |r: f64| sph_j(0, a1 * r / 2.0);
        let s = expand(f, 0, 2.0, 5).unwrap();
        assert!((s.coefficients[0] - 1.0).abs() < 1e-9);
        assert!(s.coefficients[1..].iter().all(|c| c.abs() < 1e-9));
        for i in 1..20 {
            let r = 2.0 * i as f64 / 20.0;
            assert!((s.evaluate(r).unwrap() - f(r)).abs() < 1e-8);
        }
    }

    #[test]
    fn zero_function() {
        let s = expand(|_| 0.0, 3, 1.5, 8).unwrap();
        assert!(s.coefficients.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn linear_function_coefficients() {
        // A_i = 2 ((2 - a^2)(-1)^i - 2) / a^2 with a = i pi, from integrating r^3 j_0 by parts
        let s = expand(|r| r, 0, 1.0, 20).unwrap();
        assert!((s.coefficients[0] - (2.0 - 8.0 / (PI * PI))).abs() < 1e-10);
        for (k, &c) in s.coefficients.iter().enumerate() {
            let i = k + 1;
            let a = i as f64 * PI;
            let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
            let expect = 2.0 * ((2.0 - a * a) * sign - 2.0) / (a * a);
            assert!((c - expect).abs() < 1e-9, "i={i}");
        }
        assert!(s.all_converged());
    }

    #[test]
    fn evaluate_at_origin_and_bounds() {
        let s = FourierBesselSeries {
            s: 1.0,
            l: 2,
            coefficients: vec![1.0; 4],
            converged: vec![true; 4],
            zeros: bessel_zeros(2, 4).unwrap().zeros().to_vec(),
        };
        assert_eq!(s.evaluate(0.0).unwrap(), 0.0);
        assert!(s.evaluate(1.01).is_err());
        assert!(evaluate(&s, -0.1).is_err());
    }

    #[test]
    fn roundtrip_and_parseval() {
        // 33 points across the interior [0.1 S, 0.9 S]; next to r = 0 the
        // series converges more slowly (the odd extension of r f(r) has a kink)
        let f1 = |r: f64| r * (1.0 - r);
        let s1 = expand(f1, 0, 1.0, 50).unwrap();
        for i in 0..33 {
            let r = 0.1 + 0.8 * i as f64 / 32.0;
            assert!((s1.evaluate(r).unwrap() - f1(r)).abs() < 1e-4, "r={r}");
        }
        let sl = 1.7;
        let f = |r: f64| r * (sl - r);
        let s = expand(f, 0, sl, 50).unwrap();
        // int_0^S r^2 r^2 (S - r)^2 dr = S^7 / 105
        let exact = sl.powi(7) / 105.0;
        assert!((s.parseval_sum() - exact).abs() < 1e-2 * exact);
    }

    #[test]
    fn kernel_symmetry_is_exact() {
        let k = Kernel::new(KernelSpec::new(1, 3, 60).unwrap()).unwrap();
        for &(z, zp) in &[(0.1, 0.9), (0.33, 0.71), (0.5, 0.5001)] {
            for n in [1, 7, 60] {
                assert_eq!(k.partial_sum(z, zp, n).unwrap(), k.partial_sum(zp, z, n).unwrap());
            }
        }
    }

    #[test]
    fn classical_diagonal_grows_like_2n() {
        // the terms are 4 sin^2(i pi/2): 4, 0, 4, 0, ...
        let spec = KernelSpec::new(0, 0, 1000).unwrap();
        let v = kernel_partial_sum(&spec, 0.5, 0.5).unwrap();
        assert!((v / 1000.0 - 2.0).abs() < 1e-9, "{v}");
    }

    #[test]
    fn kernel_reference_sum() {
        // 40-digit reference, m = 0, l = 2, N = 100
        let spec = KernelSpec::new(0, 2, 100).unwrap();
        let v = kernel_partial_sum(&spec, 0.3, 0.7).unwrap();
        assert!((v - -0.063103877319323040337).abs() < 1e-12, "{v}");
    }

    #[test]
    fn rejects_l_below_m() {
        assert!(KernelSpec::new(2, 1, 10).is_err());
        assert!(KernelSpec::with_grid(0, 0, 10, vec![1.2]).is_err());
    }

    #[test]
    fn classical_delta_action() {
        let spec = KernelSpec::new(0, 0, 200).unwrap();
        let v = delta_test(&spec, |z| z * z, 0.5).unwrap();
        assert!((v - 0.25).abs() < 1e-2, "{v}");
        assert_eq!(delta_test(&spec, |_| 0.0, 0.5).unwrap(), 0.0);
    }

    #[test]
    fn constant_is_invisible_to_the_l1_m0_kernel() {
        // int_0^1 z^2 j_0(a z) dz = j_1(a)/a, which vanishes at every zero of j_1,
        // so the m = 0, l = 1 kernel annihilates constants for every N.
        let k = Kernel::new(KernelSpec::new(0, 1, 50).unwrap()).unwrap();
        let mom = k.moments(|_| 1.0, 1e-14).unwrap();
        assert!(mom.iter().all(|c| c.abs() < 1e-13));
        for z in [0.2, 0.5, 0.8] {
            assert!(k.smoothed(&mom, z, 50).unwrap().abs() < 1e-9);
        }
    }
}
