use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use super::{timed, Case, VerifyOptions};
use crate::error::Result;
use crate::extended::{
    extended_direct, extended_series_with_zeros, extended_via_contraction, representation_gap_sweep, ExtendedConfig,
};
use crate::flight::{
    closure_range, density_from_j, density_normalization, flight_integral_direct, flight_recursive,
    flight_series_with_zeros, ks_distance, sample_distances, sample_flight, FlightConfig,
};
use crate::fourier_bessel::{Kernel, KernelSpec};
use crate::quadrature::integrate_partitioned;
use crate::specfun::{addition_theorem_lhs_rhs, contraction_identity_check, sph_j, ZERO_RESIDUAL};

const GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];
const TEST_FUNCTIONS: [(&str, fn(f64) -> f64); 3] = [("1", |_| 1.0), ("z", |z| z), ("z2", |z| z * z)];
const CALIBRATED: &str = "empirically calibrated threshold";

fn rng(opts: &VerifyOptions, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(opts.seed);
    r.set_stream(stream);
    r
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

/// Largest rise between consecutive entries; zero for a non-increasing sequence.
fn largest_rise(seq: &[f64]) -> f64 {
    seq.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
}

fn scale(v: f64) -> f64 {
    v.abs().max(1.0)
}

fn flatten(cases: Vec<Vec<Case>>) -> Vec<Case> {
    cases.into_iter().flatten().collect()
}

pub(super) fn zeros(opts: &VerifyOptions) -> Vec<Case> {
    let mut out = Vec::new();
    let (t, ms) = timed(|| opts.zeros(0, 50));
    let dev = t.map(|t| {
        t.zeros()
            .iter()
            .enumerate()
            .map(|(i, z)| (z - (i + 1) as f64 * PI).abs())
            .fold(0.0, f64::max)
    });
    out.push(Case::new("zeros/order-0-multiples-of-pi", json!({"order": 0, "count": 50}), 0.0, dev, 1e-12, ms));

    let (tables, ms) = timed(|| (0..=11).map(|l| opts.zeros(l, 51)).collect::<Result<Vec<_>>>());
    let violations = tables.as_ref().map_err(Clone::clone).map(|tables| {
        let mut bad = 0usize;
        for l in 0..=10 {
            let (a, b) = (tables[l].zeros(), tables[l + 1].zeros());
            bad += (0..50).filter(|&i| !(a[i] < b[i] && b[i] < a[i + 1])).count();
        }
        bad as f64
    });
    out.push(Case::new(
        "zeros/interlacing",
        json!({"orders": "0..=10", "count": 50}),
        0.0,
        violations,
        0.0,
        ms,
    ));
    if let Ok(tables) = tables {
        for (l, t) in tables.iter().enumerate().take(11) {
            out.push(Case::new(
                format!("zeros/residual/order-{l:02}"),
                json!({"order": l, "count": 51}),
                0.0,
                Ok(t.max_residual()),
                ZERO_RESIDUAL,
                ms / 12.0,
            ));
        }
    }
    out
}

pub(super) fn identities(opts: &VerifyOptions) -> Vec<Case> {
    let mut g = rng(opts, 2);
    let addition: Vec<_> = (0..20)
        .map(|_| {
            let m = g.random_range(0..=3usize);
            (m, uniform(&mut g, 0.5, 3.0), uniform(&mut g, 0.2, 2.0), uniform(&mut g, 0.2, 2.0), uniform(&mut g, 0.2, PI - 0.2))
        })
        .collect();
    let contraction: Vec<_> = (0..50)
        .map(|_| {
            let l = g.random_range(0..=6usize);
            let m = g.random_range(0..=l);
            (l, m, uniform(&mut g, 0.5, 10.0), uniform(&mut g, 0.2, 2.0), uniform(&mut g, 0.2, 2.0))
        })
        .collect();
    let mut out: Vec<Case> = addition
        .par_iter()
        .enumerate()
        .map(|(i, &(m, k, r1, r2, alpha))| {
            let (res, ms) = timed(|| addition_theorem_lhs_rhs(m, k, r1, r2, alpha, 80));
            let inputs = json!({"m": m, "k": k, "r1": r1, "r2": r2, "alpha": alpha, "l_max": 80});
            match res {
                Ok(r) => Case::new(format!("identities/addition/{i:02}"), inputs, r.lhs, Ok(r.rhs), 1e-8, ms),
                Err(e) => Case::new(format!("identities/addition/{i:02}"), inputs, 0.0, Err(e), 1e-8, ms),
            }
        })
        .collect();
    out.par_extend(contraction.par_iter().enumerate().map(|(i, &(l, m, k, r1, r2))| {
        let (res, ms) = timed(|| contraction_identity_check(l, m, k, r1, r2, 1e-9));
        let inputs = json!({"l": l, "m": m, "k": k, "r1": r1, "r2": r2});
        match res {
            Ok(r) => Case::new(format!("identities/contraction/{i:02}"), inputs, r.lhs, Ok(r.rhs), 1e-7, ms),
            Err(e) => Case::new(format!("identities/contraction/{i:02}"), inputs, 0.0, Err(e), 1e-7, ms),
        }
    }));
    out
}

pub(super) fn orthogonality(opts: &VerifyOptions) -> Vec<Case> {
    (0..=5usize)
        .into_par_iter()
        .map(|l| {
            let (dev, ms) = timed(|| -> Result<f64> {
                let a = opts.zeros(l, 10)?;
                let a = a.zeros();
                let mut worst = 0.0f64;
                for i in 0..10 {
                    for j in i..10 {
                        let cells = ((a[i] + a[j]) / PI).ceil() as usize;
                        let breaks: Vec<f64> = (0..=cells).map(|c| c as f64 / cells as f64).collect();
                        let q = integrate_partitioned(
                            |z| z * z * sph_j(l, a[i] * z) * sph_j(l, a[j] * z),
                            &breaks,
                            1e-15,
                        )?;
                        let expected = if i == j { sph_j(l + 1, a[i]).powi(2) / 2.0 } else { 0.0 };
                        worst = worst.max((q.value - expected).abs());
                    }
                }
                Ok(worst)
            });
            Case::new(format!("orthogonality/order-{l}"), json!({"order": l, "count": 10}), 0.0, dev, 1e-10, ms)
        })
        .collect()
}

pub(super) fn specfun_invariants(_opts: &VerifyOptions) -> Vec<Case> {
    let xs: Vec<f64> = (1..=400).map(|i| i as f64 * 0.25).collect();
    let (dev, ms) = timed(|| {
        let mut worst = 0.0f64;
        for n in 1..60 {
            for &x in &xs {
                let (a, b, c) = (sph_j(n - 1, x), sph_j(n, x), sph_j(n + 1, x));
                let size = a.abs().max(c.abs()).max(1e-300);
                worst = worst.max((a + c - (2 * n + 1) as f64 / x * b).abs() / size);
            }
        }
        worst
    });
    let recurrence = Case::new(
        "specfun/three-term-recurrence",
        json!({"orders": "1..60", "x": "0.25..=100"}),
        0.0,
        Ok(dev),
        1e-12,
        ms,
    );
    let (dev, ms) = timed(|| xs.iter().map(|&x| (sph_j(0, x) - x.sin() / x).abs()).fold(0.0, f64::max));
    let closed = Case::new("specfun/order-0-closed-form", json!({"x": "0.25..=100"}), 0.0, Ok(dev), 1e-15, ms);
    vec![recurrence, closed]
}

/// Per-point errors at `n_final` plus the max-over-grid error at each truncation.
fn delta_cases(prefix: &str, m: usize, l: usize, opts: &VerifyOptions, truncations: &[usize], monotone: bool) -> Vec<Case> {
    let n_max = *truncations.last().unwrap();
    TEST_FUNCTIONS
        .par_iter()
        .map(|&(name, f)| {
            let (prepared, ms) = timed(|| -> Result<(Kernel, Vec<f64>)> {
                let spec = KernelSpec::new(m, l, n_max)?;
                let kernel = Kernel::with_zeros(spec, &opts.zeros(l, n_max)?)?;
                let moments = kernel.moments(f, 1e-13)?;
                Ok((kernel, moments))
            });
            let base = format!("{prefix}/m{m}-l{l}/f={name}");
            let (kernel, moments) = match prepared {
                Ok(p) => p,
                Err(e) => return vec![Case::new(base, json!({"m": m, "l": l}), 0.0, Err(e), 1e-2, ms)],
            };
            let mut out: Vec<Case> = GRID
                .iter()
                .map(|&z| {
                    Case::new(
                        format!("{base}/z={z:.1}"),
                        json!({"m": m, "l": l, "f": name, "z": z, "terms": n_max}),
                        f(z),
                        kernel.smoothed(&moments, z, n_max),
                        1e-2,
                        ms,
                    )
                })
                .collect();
            if monotone {
                let errs: Result<Vec<f64>> = truncations
                    .iter()
                    .map(|&n| {
                        GRID.iter().try_fold(0.0f64, |w, &z| Ok(w.max((kernel.smoothed(&moments, z, n)? - f(z)).abs())))
                    })
                    .collect();
                let inputs = json!({"m": m, "l": l, "f": name, "terms": truncations, "errors": errs.as_ref().ok()});
                out.push(Case::new(format!("{base}/decreasing"), inputs, 0.0, errs.map(|e| largest_rise(&e)), 0.0, ms));
            }
            out
        })
        .flatten()
        .collect()
}

pub(super) fn classical_delta(opts: &VerifyOptions) -> Vec<Case> {
    (0..=2).flat_map(|m| delta_cases("classical-delta", m, m, opts, &[400], false)).collect()
}

pub(super) fn completeness_like(opts: &VerifyOptions) -> Vec<Case> {
    [(0, 1), (0, 2), (1, 3), (2, 5)]
        .into_iter()
        .flat_map(|(m, l)| delta_cases("completeness-like", m, l, opts, &[50, 100, 200, 400], true))
        .collect()
}

pub(super) fn kernel_invariants(opts: &VerifyOptions) -> Vec<Case> {
    let mut out = Vec::new();
    let (dev, ms) = timed(|| -> Result<f64> {
        let kernel = Kernel::with_zeros(KernelSpec::new(1, 3, 200)?, &opts.zeros(3, 200)?)?;
        let mut worst = 0.0f64;
        for &z in &GRID {
            for &zp in &GRID {
                worst = worst.max((kernel.partial_sum(z, zp, 200)? - kernel.partial_sum(zp, z, 200)?).abs());
            }
        }
        Ok(worst)
    });
    out.push(Case::new("kernel/symmetry", json!({"m": 1, "l": 3, "terms": 200}), 0.0, dev, 0.0, ms));

    let (v, ms) = timed(|| -> Result<f64> {
        Kernel::with_zeros(KernelSpec::new(0, 2, 100)?, &opts.zeros(2, 100)?)?.partial_sum(0.3, 0.7, 100)
    });
    out.push(Case::new(
        "kernel/reference-sum",
        json!({"m": 0, "l": 2, "z": 0.3, "zprime": 0.7, "terms": 100}),
        -0.063_103_877_319_323_04,
        v,
        1e-12,
        ms,
    ));

    let (v, ms) = timed(|| -> Result<f64> {
        let k = Kernel::with_zeros(KernelSpec::new(0, 0, 400)?, &opts.zeros(0, 400)?)?;
        Ok(k.partial_sum(0.5, 0.5, 400)? / 400.0)
    });
    out.push(
        Case::new(
            "kernel/diagonal-growth",
            json!({"m": 0, "l": 0, "z": 0.5, "terms": 400, "quantity": "K_N(z,z)/N"}),
            2.0,
            v,
            1e-2,
            ms,
        )
        .with_note("K_N(z,z)/N tends to 1/(2 z^2)"),
    );
    out
}

pub(super) fn flight_routes(opts: &VerifyOptions) -> Vec<Case> {
    let mut g = rng(opts, 6);
    let configs: Vec<(usize, Vec<f64>, f64)> = (0..30)
        .map(|_| {
            let m = g.random_range(0..=2usize);
            let n = g.random_range(2..=4usize);
            let lengths: Vec<f64> = (0..n).map(|_| uniform(&mut g, 0.5, 2.0)).collect();
            let s = closure_range(&lengths);
            let r = s.r_min + (s.r_max - s.r_min) * uniform(&mut g, 0.05, 0.95);
            (m, lengths, r)
        })
        .collect();
    let mut out: Vec<Case> = flatten(
        configs
            .par_iter()
            .enumerate()
            .map(|(i, (m, lengths, r))| {
                let inputs = json!({"m": m, "lengths": lengths, "r": r});
                let id = format!("flight-routes/config-{i:02}");
                let cfg = match FlightConfig::new(*m, lengths.clone()) {
                    Ok(c) => c,
                    Err(e) => return vec![Case::new(id, inputs, 0.0, Err(e), 0.0, 0.0)],
                };
                let (direct, ms_d) = timed(|| flight_integral_direct(&cfg, *r, 1e-10));
                let direct = match direct {
                    Ok(d) => d.value,
                    Err(e) => return vec![Case::new(format!("{id}/direct"), inputs, 0.0, Err(e), 0.0, ms_d)],
                };
                let (rec, ms_r) = timed(|| flight_recursive(&cfg, *r, 1e-9).map(|q| q.value));
                let (ser, ms_s) = timed(|| flight_series_with_zeros(&cfg, *r, &opts.zeros(*m, 400)?, 400));
                let mut series_inputs = inputs.clone();
                series_inputs["terms"] = json!(400);
                vec![
                    Case::new(format!("{id}/recursive"), inputs, direct, rec, 1e-5 * scale(direct), ms_d + ms_r),
                    Case::new(format!("{id}/series"), series_inputs, direct, ser, 1e-3 * scale(direct), ms_d + ms_s),
                ]
            })
            .collect(),
    );
    for (name, n, tol) in [("two-unit-steps", 2, 1e-6), ("three-unit-steps", 3, 1e-5)] {
        let (v, ms) = timed(|| flight_integral_direct(&FlightConfig::new(0, vec![1.0; n])?, 1.0, 1e-10).map(|q| q.value));
        out.push(Case::new(
            format!("flight-routes/anchor/{name}"),
            json!({"m": 0, "lengths": vec![1.0; n], "r": 1.0}),
            PI / 4.0,
            v,
            tol,
            ms,
        ));
    }
    out
}

pub(super) fn monte_carlo(opts: &VerifyOptions) -> Vec<Case> {
    const SAMPLES: usize = 1_000_000;
    const BINS: usize = 50;
    let cfg = FlightConfig::new(0, vec![1.0, 1.0]).expect("valid configuration");
    let inputs = json!({"m": 0, "lengths": [1.0, 1.0], "samples": SAMPLES, "seed": opts.seed});
    let mut out = Vec::new();

    let (samples, ms) = timed(|| sample_distances(&cfg, SAMPLES, opts.seed));
    let samples = match samples {
        Ok(s) => s,
        Err(e) => return vec![Case::new("monte-carlo/ks-two-unit-steps", inputs, 0.0, Err(e), 2e-3, ms)],
    };
    let (ks, ms_ks) = timed(|| ks_distance(&samples, |r| (r * r / 4.0).clamp(0.0, 1.0)));
    out.push(Case::new("monte-carlo/ks-two-unit-steps", inputs.clone(), 0.0, Ok(ks), 2e-3, ms + ms_ks));

    let centres: Vec<f64> = (0..BINS).map(|i| 2.0 * (i as f64 + 0.5) / BINS as f64).collect();
    let (sup, ms) = timed(|| -> Result<f64> {
        let c = density_normalization(&cfg, 1e-12)?.c;
        centres
            .iter()
            .try_fold(0.0f64, |w, &r| Ok(w.max((c * density_from_j(&cfg, r, 1e-12)?.density - r / 2.0).abs())))
    });
    out.push(Case::new(
        "monte-carlo/normalised-density",
        json!({"m": 0, "lengths": [1.0, 1.0], "bins": BINS, "law": "r/2"}),
        0.0,
        sup,
        1e-4,
        ms,
    ));

    // histogram against the law it estimates, within 5 binomial standard deviations
    let (dev, ms) = timed(|| -> Result<f64> {
        let h = crate::flight::McHistogram::from_samples(&samples, 0.0, 2.0, BINS, opts.seed)?;
        let width = 2.0 / BINS as f64;
        Ok(h.density()
            .iter()
            .zip(&centres)
            .map(|(&d, &r)| {
                let p = r / 2.0;
                let sigma = (p * width * (1.0 - p * width) / SAMPLES as f64).sqrt() / width;
                (d - p).abs() / sigma
            })
            .fold(0.0, f64::max))
    });
    out.push(
        Case::new(
            "monte-carlo/histogram-within-5-sigma",
            json!({"m": 0, "lengths": [1.0, 1.0], "samples": SAMPLES, "bins": BINS, "seed": opts.seed}),
            0.0,
            dev,
            5.0,
            ms,
        )
        .with_note("actual is the largest bin deviation in binomial standard deviations"),
    );
    out
}

pub(super) fn flight_invariants(opts: &VerifyOptions) -> Vec<Case> {
    let mut g = rng(opts, 7);
    let configs: Vec<(usize, Vec<f64>)> = (0..6)
        .map(|_| {
            let m = g.random_range(0..=2usize);
            let n = g.random_range(2..=4usize);
            (m, (0..n).map(|_| uniform(&mut g, 0.5, 2.0)).collect())
        })
        .collect();
    let mut out: Vec<Case> = flatten(
        configs
            .par_iter()
            .enumerate()
            .map(|(i, (m, lengths))| {
                let cfg = FlightConfig::new(*m, lengths.clone()).expect("valid configuration");
                let s = cfg.support();
                let mut points = vec![("above", 1.05 * s.r_max)];
                if s.r_min > 0.0 {
                    points.push(("below", 0.95 * s.r_min));
                }
                points
                    .into_iter()
                    .map(|(side, r)| {
                        let (v, ms) = timed(|| flight_integral_direct(&cfg, r, 1e-10).map(|q| q.value));
                        Case::new(
                            format!("flight/vanishing/config-{i}/{side}"),
                            json!({"m": m, "lengths": lengths, "r": r}),
                            0.0,
                            v,
                            1e-6,
                            ms,
                        )
                    })
                    .collect()
            })
            .collect(),
    );
    let (diff, ms) = timed(|| -> Result<f64> {
        let cfg = FlightConfig::new(1, vec![1.0, 0.5, 0.7])?;
        let a = sample_flight(&cfg, 20_000, opts.seed, 40)?;
        let b = sample_flight(&cfg, 20_000, opts.seed, 40)?;
        Ok(a.counts.iter().zip(&b.counts).filter(|(x, y)| x != y).count() as f64)
    });
    out.push(Case::new(
        "flight/monte-carlo-determinism",
        json!({"m": 1, "lengths": [1.0, 0.5, 0.7], "samples": 20_000, "bins": 40, "seed": opts.seed}),
        0.0,
        diff,
        0.0,
        ms,
    ));
    out
}

pub(super) fn extended_gap(_opts: &VerifyOptions) -> Vec<Case> {
    const TRUNCATIONS: [usize; 4] = [50, 100, 200, 400];
    const PAIRS: [(usize, usize); 4] = [(1, 0), (2, 0), (3, 1), (5, 2)];
    let triangles = [(1.0, 0.9, 1.1), (0.8, 1.0, 0.7)];
    let jobs: Vec<_> = triangles
        .iter()
        .enumerate()
        .flat_map(|(t, &tri)| PAIRS.iter().map(move |&p| (Some(t), tri, p)))
        .chain(PAIRS.iter().map(|&p| (None, (5.0, 1.0, 1.0), p)))
        .collect();
    flatten(
        jobs.par_iter()
            .map(|&(t, (big_r, x, r1), (l, m))| {
                let (sweep, ms) = timed(|| representation_gap_sweep(l, m, big_r, x, r1, &TRUNCATIONS));
                let inputs = json!({"l": l, "m": m, "R": big_r, "X": x, "r1": r1, "terms": TRUNCATIONS});
                let base = match t {
                    Some(t) => format!("extended-gap/triangle-{t}/l{l}-m{m}"),
                    None => format!("extended-gap/outside/l{l}-m{m}"),
                };
                let sweep = match sweep {
                    Ok(s) => s,
                    Err(e) => return vec![Case::new(base, inputs, 0.0, Err(e), 1e-3, ms)],
                };
                let last = sweep[sweep.len() - 1];
                if t.is_some() {
                    let gaps: Vec<f64> = sweep.iter().map(|g| g.gap).collect();
                    let mut with_gaps = inputs.clone();
                    with_gaps["gaps"] = json!(gaps);
                    vec![
                        Case::new(format!("{base}/gap-at-400"), inputs, 0.0, Ok(last.gap), 1e-3 * scale(last.lhs), ms)
                            .with_note(CALIBRATED),
                        Case::new(format!("{base}/decreasing"), with_gaps, 0.0, Ok(largest_rise(&gaps)), 0.0, ms),
                    ]
                } else {
                    vec![
                        Case::new(format!("{base}/lhs-vanishes"), inputs.clone(), 0.0, Ok(last.lhs), 1e-3, ms),
                        Case::new(format!("{base}/rhs-vanishes"), inputs, 0.0, Ok(last.rhs), 1e-3, ms),
                    ]
                }
            })
            .collect(),
    )
}

fn random_extended(g: &mut ChaCha8Rng, l_max: usize, n_max: usize) -> (usize, usize, f64, f64, Vec<f64>) {
    let l = g.random_range(0..=l_max);
    let m = g.random_range(0..=l);
    let n = g.random_range(1..=n_max);
    let big_r = uniform(g, 0.5, 2.0);
    let lengths: Vec<f64> = (0..n).map(|_| uniform(g, 0.5, 2.0)).collect();
    let mut sides = vec![big_r];
    sides.extend_from_slice(&lengths);
    let s = closure_range(&sides);
    let x = (s.r_min + (s.r_max - s.r_min) * uniform(g, 0.05, 0.95)).max(0.05);
    (l, m, big_r, x, lengths)
}

pub(super) fn extended_invariants(opts: &VerifyOptions) -> Vec<Case> {
    let mut g = rng(opts, 9);
    let reductions: Vec<_> = (0..10)
        .map(|_| {
            let (_, m, big_r, x, lengths) = random_extended(&mut g, 2, 2);
            (m, big_r, x, lengths)
        })
        .collect();
    let routes: Vec<_> = (0..20).map(|_| random_extended(&mut g, 5, 3)).collect();

    let mut out: Vec<Case> = reductions
        .par_iter()
        .enumerate()
        .map(|(i, (m, big_r, x, lengths))| {
            let (v, ms) = timed(|| -> Result<(f64, f64)> {
                let e = extended_direct(&ExtendedConfig::new(*m, *big_r, *x, FlightConfig::new(*m, lengths.clone())?)?, 1e-10)?;
                let mut steps = vec![*big_r];
                steps.extend_from_slice(lengths);
                let f = flight_integral_direct(&FlightConfig::new(*m, steps)?, *x, 1e-10)?;
                Ok((f.value, e.value))
            });
            let inputs = json!({"l": m, "m": m, "R": big_r, "X": x, "lengths": lengths});
            let id = format!("extended/reduction/config-{i}");
            match v {
                Ok((f, e)) => Case::new(id, inputs, f, Ok(e), 1e-5 * scale(f), ms),
                Err(err) => Case::new(id, inputs, 0.0, Err(err), 1e-5, ms),
            }
        })
        .collect();

    out.par_extend(
        routes
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, (l, m, big_r, x, lengths))| {
                let inputs = json!({"l": l, "m": m, "R": big_r, "X": x, "lengths": lengths});
                let id = format!("extended/routes/config-{i:02}");
                let cfg = match FlightConfig::new(*m, lengths.clone()).and_then(|f| ExtendedConfig::new(*l, *big_r, *x, f)) {
                    Ok(c) => c,
                    Err(e) => return vec![Case::new(id, inputs, 0.0, Err(e), 0.0, 0.0)],
                };
                let (direct, ms_d) = timed(|| extended_direct(&cfg, 1e-10));
                let direct = match direct {
                    Ok(d) => d.value,
                    Err(e) => return vec![Case::new(format!("{id}/direct"), inputs, 0.0, Err(e), 0.0, ms_d)],
                };
                let (contr, ms_c) = timed(|| extended_via_contraction(&cfg, 1e-9).map(|q| q.value));
                let (ser, ms_s) = timed(|| extended_series_with_zeros(&cfg, &opts.zeros(*l, 400)?, 400));
                vec![
                    Case::new(format!("{id}/contraction"), inputs.clone(), direct, contr, 1e-5 * scale(direct), ms_d + ms_c),
                    Case::new(format!("{id}/series"), inputs, direct, ser, 1e-3 * scale(direct), ms_d + ms_s),
                ]
            }),
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rise_of_a_sequence() {
        assert_eq!(largest_rise(&[3.0, 2.0, 1.0]), 0.0);
        assert_eq!(largest_rise(&[3.0, 2.0, 2.5, 1.0]), 0.5);
        assert_eq!(largest_rise(&[1.0]), 0.0);
    }

    #[test]
    fn streams_are_reproducible() {
        let opts = VerifyOptions::default();
        let (mut x, mut y) = (rng(&opts, 3), rng(&opts, 3));
        let a: Vec<f64> = (0..5).map(|_| x.random()).collect();
        let b: Vec<f64> = (0..5).map(|_| y.random()).collect();
        assert_eq!(a, b);
        assert_ne!(rng(&opts, 3).random::<u64>(), rng(&opts, 4).random::<u64>());
    }
}
