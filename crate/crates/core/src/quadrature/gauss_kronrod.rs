use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{QuadratureResult, QuadratureWarning};
use crate::error::{domain, Error, Result};

/// Maximum bisection depth of any subinterval.
pub const MAX_DEPTH: u32 = 50;
const MAX_INTERVALS: usize = 200_000;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077208931396890,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

// Gauss weights for the odd-indexed Kronrod nodes.
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn eval<F: Fn(f64) -> f64>(f: &F, x: f64) -> Result<f64> {
    let v = f(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { abscissa: x, value: v })
    }
}

/// One 21-point Kronrod panel with the QUADPACK error heuristic.
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, depth: u32) -> Result<Segment> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = eval(f, center)?;
    let mut res_g = 0.0;
    let mut res_k = WGK[10] * fc;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(f, center - dx)?;
        let f2 = eval(f, center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let value = res_k * half;
    res_abs *= half.abs();
    res_asc *= half.abs();
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok(Segment {
        a,
        b,
        value,
        error,
        depth,
    })
}

/// Integrates `f` over `[a, b]` by globally adaptive 21-point Gauss–Kronrod
/// quadrature.
///
/// Converges when the summed error estimate is at most `max(tol, tol·|value|)`.
/// Hitting the depth limit is not an error: the best value is returned with
/// `converged == false`.
pub fn integrate_finite<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> Result<QuadratureResult> {
    if !(a <= b) {
        return domain(format!("integration bounds out of order: [{a}, {b}]"));
    }
    integrate_partitioned(f, &[a, b], tol)
}

/// Like [`integrate_finite`], but seeded with the given partition of the
/// interval so known features (kinks, oscillation cells) start resolved.
pub fn integrate_partitioned<F: Fn(f64) -> f64>(f: F, breaks: &[f64], tol: f64) -> Result<QuadratureResult> {
    if breaks.len() < 2 {
        return domain("need at least two break points");
    }
    if breaks.windows(2).any(|w| !(w[0] <= w[1])) || breaks.iter().any(|x| !x.is_finite()) {
        return domain("break points must be finite and non-decreasing");
    }
    if !(tol > 0.0) {
        return domain(format!("tolerance must be positive, got {tol}"));
    }

    let mut heap = BinaryHeap::with_capacity(breaks.len() * 2);
    let mut evaluations = 0;
    for w in breaks.windows(2) {
        if w[1] > w[0] {
            heap.push(gk21(&f, w[0], w[1], 0)?);
            evaluations += 21;
        }
    }
    if heap.is_empty() {
        return Ok(QuadratureResult {
            value: 0.0,
            abs_error_estimate: 0.0,
            evaluations: 1,
            converged: true,
            warning: None,
        });
    }

    let totals = |heap: &BinaryHeap<Segment>| {
        heap.iter()
            .fold((0.0, 0.0), |(v, e), s| (v + s.value, e + s.error))
    };
    let (mut value, mut error) = totals(&heap);
    let mut warning = None;
    let mut iterations = 0usize;
    while error > tol.max(tol * value.abs()) {
        if heap.len() >= MAX_INTERVALS {
            warning = Some(QuadratureWarning::SubdivisionLimit);
            break;
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if worst.depth >= MAX_DEPTH || mid <= worst.a || mid >= worst.b {
            heap.push(worst);
            warning = Some(QuadratureWarning::SubdivisionLimit);
            break;
        }
        let left = gk21(&f, worst.a, mid, worst.depth + 1)?;
        let right = gk21(&f, mid, worst.b, worst.depth + 1)?;
        evaluations += 42;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        iterations += 1;
        // running sums drift; refresh them now and then
        if iterations % 256 == 0 {
            (value, error) = totals(&heap);
        }
    }
    (value, error) = totals(&heap);
    Ok(QuadratureResult {
        value,
        abs_error_estimate: error,
        evaluations,
        converged: error <= tol.max(tol * value.abs()),
        warning,
    })
}
