use super::{integrate_finite, CompensatedSum, QuadratureResult, QuadratureWarning};
use crate::error::{domain, Error, Result};

/// Largest Levin order used; beyond this the binomial weights cancel badly.
const LEVIN_WINDOW: usize = 24;
const BETA: f64 = 1.0;

/// Levin u-transform `L_k` of the partial sums `sums[0..=k]`, where `terms[j]`
/// is the last term added in `sums[j]`. `offset` is the index of `sums[0]` in
/// the full sequence.
///
/// Returns `None` if a term vanishes or the denominator underflows.
pub fn levin_u(sums: &[f64], terms: &[f64], offset: usize) -> Option<f64> {
    let k = sums.len().checked_sub(1)?;
    if terms.len() != sums.len() || terms.iter().any(|&a| a == 0.0 || !a.is_finite()) {
        return None;
    }
    let b = BETA + offset as f64;
    let bk = b + k as f64;
    let mut num = 0.0;
    let mut den = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        let ratio = ((b + j as f64) / bk).powi(k as i32 - 1);
        let w = binom * ratio / ((b + j as f64) * terms[j]);
        let w = if j % 2 == 0 { w } else { -w };
        num += w * sums[j];
        den += w;
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    let v = num / den;
    (den != 0.0 && v.is_finite()).then_some(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SignPattern {
    Alternating,
    Constant,
    Irregular,
}

fn sign_pattern(cells: &[f64]) -> SignPattern {
    if cells.iter().any(|&c| c == 0.0) {
        return SignPattern::Irregular;
    }
    if cells.windows(2).all(|w| w[0].signum() != w[1].signum()) {
        SignPattern::Alternating
    } else if cells.windows(2).all(|w| w[0].signum() == w[1].signum()) {
        SignPattern::Constant
    } else {
        SignPattern::Irregular
    }
}

/// Integrates `f` from the first break point to infinity.
///
/// `f` is integrated over each cell between consecutive break points (at most
/// `max_intervals` cells), and the sequence of partial sums is accelerated with
/// the Levin u-transform. This needs the cell integrals to alternate in sign or
/// keep one sign; otherwise the partial sum is returned with
/// [`QuadratureWarning::IrregularSigns`].
pub fn integrate_oscillatory_tail<F: Fn(f64) -> f64>(
    f: F,
    break_points: &[f64],
    tol: f64,
    max_intervals: usize,
) -> Result<QuadratureResult> {
    if break_points.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "need at least 4 break points, got {}",
            break_points.len()
        )));
    }
    if break_points.windows(2).any(|w| !(w[1] > w[0])) {
        return domain("break points must be strictly increasing");
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }
    let n_cells = (break_points.len() - 1).min(max_intervals.max(3));
    let cell_tol = (1e-3 * tol).max(1e-15);

    let mut cells = Vec::with_capacity(n_cells);
    let mut sums = Vec::with_capacity(n_cells);
    let mut running = CompensatedSum::default();
    let mut evaluations = 0;
    let mut cells_converged = true;
    let mut best: Option<(f64, f64)> = None; // (value, error)
    let mut last_levin: Option<f64> = None;
    let mut last_err = f64::INFINITY;
    let mut done = false;

    for w in break_points.windows(2).take(n_cells) {
        let q = integrate_finite(&f, w[0], w[1], cell_tol)?;
        evaluations += q.evaluations;
        cells_converged &= q.converged;
        cells.push(q.value);
        running.add(q.value);
        sums.push(running.value());

        let n = cells.len();
        if n >= 4 && cells[n - 3..].iter().all(|c| c.abs() < 1e-3 * tol) {
            best = Some((running.value(), cells[n - 3..].iter().map(|c| c.abs()).sum()));
            done = true;
            break;
        }
        if n < 3 || sign_pattern(&cells) == SignPattern::Irregular {
            continue;
        }
        let k = (n - 1).min(LEVIN_WINDOW);
        let start = n - 1 - k;
        let Some(l) = levin_u(&sums[start..], &cells[start..], start) else {
            continue;
        };
        if let Some(prev) = last_levin {
            let err = (l - prev).abs();
            if best.is_none_or(|(_, e)| err < e) {
                best = Some((l, err));
            }
            if err <= tol && last_err <= 10.0 * tol {
                best = Some((l, err));
                done = true;
                break;
            }
            last_err = err;
        }
        last_levin = Some(l);
    }

    let pattern = sign_pattern(&cells);
    if cells.iter().all(|&c| c == 0.0) {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations,
            converged: cells_converged,
            warning: None,
        });
    }
    if pattern == SignPattern::Irregular && !done {
        let last = cells.last().copied().unwrap_or(0.0).abs();
        return Ok(QuadratureResult {
            value: running.value(),
            abs_error_estimate: last,
            evaluations,
            converged: false,
            warning: Some(QuadratureWarning::IrregularSigns),
        });
    }
    let (value, err) = best.unwrap_or((running.value(), f64::INFINITY));
    let converged = err <= tol && cells_converged;
    Ok(QuadratureResult {
        value,
        abs_error_estimate: err,
        evaluations,
        converged,
        warning: (!converged).then_some(if cells_converged {
            QuadratureWarning::SlowAcceleration
        } else {
            QuadratureWarning::SubdivisionLimit
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::spherical_bessel_j;
    use std::f64::consts::PI;

    fn sinc(x: f64) -> f64 {
        if x == 0.0 {
            1.0
        } else {
            x.sin() / x
        }
    }

    fn multiples(step: f64, count: usize) -> Vec<f64> {
        (0..=count).map(|i| i as f64 * step).collect()
    }

    #[test]
    fn dirichlet_integral() {
        let bp = multiples(PI, 60);
        let r = integrate_oscillatory_tail(sinc, &bp, 1e-10, 60).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-8, "{r:?}");
        assert!(r.converged);
    }

    #[test]
    fn acceleration_is_engaged() {
        let bp = multiples(PI, 60);
        let raw = integrate_finite(sinc, 0.0, 60.0 * PI, 1e-13).unwrap().value;
        assert!((raw - PI / 2.0).abs() > 1e-3);
        let r = integrate_oscillatory_tail(sinc, &bp, 1e-10, 60).unwrap();
        assert!((r.value - PI / 2.0).abs() < 1e-8);
    }

    #[test]
    fn constant_sign_cells() {
        let f = |x: f64| {
            if x == 0.0 {
                0.0
            } else {
                x.sin().powi(4) / (x * x)
            }
        };
        let bp = multiples(PI, 200);
        let r = integrate_oscillatory_tail(f, &bp, 1e-9, 200).unwrap();
        assert!((r.value - PI / 4.0).abs() < 1e-8, "{r:?}");
    }

    #[test]
    fn bessel_triple_product() {
        // triangle (1, 0.5, 0.8) closes: pi / (4 * 1 * 0.5 * 0.8)
        let f = |k: f64| {
            k * k
                * spherical_bessel_j(0, k).unwrap()
                * spherical_bessel_j(0, 0.5 * k).unwrap()
                * spherical_bessel_j(0, 0.8 * k).unwrap()
        };
        // every frequency (a +- b +- c) is an odd multiple of 0.1, so cells of
        // width 10 pi alternate
        let bp = multiples(10.0 * PI, 80);
        let r = integrate_oscillatory_tail(f, &bp, 1e-9, 80).unwrap();
        assert!((r.value - PI / 1.6).abs() < 1e-6, "{r:?}");
    }

    #[test]
    fn irregular_signs_degrade_with_warning() {
        let f = |x: f64| (x.sin() + (2.7 * x).sin() * 1.3) / (1.0 + x * x);
        let bp = multiples(1.0, 40);
        let r = integrate_oscillatory_tail(f, &bp, 1e-8, 40).unwrap();
        assert_eq!(r.warning, Some(QuadratureWarning::IrregularSigns));
        assert!(!r.converged);
    }

    #[test]
    fn zero_integrand() {
        let r = integrate_oscillatory_tail(|_| 0.0, &multiples(1.0, 10), 1e-8, 10).unwrap();
        assert_eq!(r.value, 0.0);
    }

    #[test]
    fn too_few_break_points() {
        assert!(matches!(
            integrate_oscillatory_tail(sinc, &[0.0, 1.0, 2.0], 1e-8, 10),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn levin_sums_alternating_harmonic() {
        let terms: Vec<f64> = (0..14).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } / (j + 1) as f64).collect();
        let sums: Vec<f64> = terms
            .iter()
            .scan(0.0, |s, &a| {
                *s += a;
                Some(*s)
            })
            .collect();
        let v = levin_u(&sums, &terms, 0).unwrap();
        assert!((v - 2f64.ln()).abs() < 1e-12);
    }
}
