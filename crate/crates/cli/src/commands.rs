use anyhow::Result;
use thiserror::Error;

use rflight_core::extended::{
    extended_direct, extended_series, extended_via_contraction, representation_gap_sweep, ExtendedConfig,
};
use rflight_core::flight::{
    flight_integral_direct, flight_recursive, flight_series, sample_flight, single_step_delta, FlightConfig,
};
use rflight_core::fourier_bessel::{expand, Kernel, KernelSpec};
use rflight_core::quadrature::QuadratureResult;
use rflight_core::specfun::bessel_zeros;
use rflight_core::verify::{run_suite, VerifyOptions, DEFAULT_SEED};

use crate::output::{emit, Record, Table};
use crate::{Command, ExtendedMethod, FlightMethod, Global, TestFunction};

const FLIGHT_TOL: f64 = 1e-10;
const MOMENT_TOL: f64 = 1e-13;
const DEFAULT_TERMS: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Error)]
#[error("{0}")]
pub struct Usage(String);

fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(Usage(msg.into()).into())
}

/// Bad arguments, whether caught here or by the library's domain checks.
pub fn is_usage(e: &anyhow::Error) -> bool {
    use rflight_core::Error as E;
    e.chain().any(|c| {
        c.is::<Usage>()
            || matches!(
                c.downcast_ref::<E>(),
                Some(E::Domain(_) | E::UnsupportedOrder { .. } | E::Refused(_))
            )
    })
}

fn interior_grid(points: u64) -> Vec<f64> {
    (1..=points).map(|i| i as f64 / (points + 1) as f64).collect()
}

fn test_function(f: TestFunction, s: f64) -> Box<dyn Fn(f64) -> f64 + Sync> {
    match f {
        TestFunction::One => Box::new(|_| 1.0),
        TestFunction::Z => Box::new(|z| z),
        TestFunction::Z2 => Box::new(|z| z * z),
        TestFunction::Parabola => Box::new(move |z| z * (s - z)),
    }
}

fn join(lengths: &[f64]) -> String {
    lengths.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn with_quadrature(record: Record, q: &QuadratureResult) -> Record {
    record
        .with("value", q.value)
        .with("abs_error_estimate", q.abs_error_estimate)
        .with("evaluations", q.evaluations)
        .with("converged", q.converged)
        .with("warning", q.warning.map_or("none".to_string(), |w| format!("{w:?}")))
}

pub fn run(command: Command, g: &Global) -> Result<Status> {
    let out = g.out.as_deref();
    let terms = g.terms.map(|t| t as usize);
    match command {
        Command::Zeros { order, count } => {
            let table = bessel_zeros(order, count as usize)?;
            let mut t = Table::new(&["index", "zero"]);
            for (i, &z) in table.zeros().iter().enumerate() {
                t.push(vec![(i + 1).into(), z.into()]);
            }
            emit(out, &t.render(g.json)?)?;
        }
        Command::Kernel { m, l, grid_size } => {
            let grid = interior_grid(grid_size);
            let kernel = Kernel::new(KernelSpec::with_grid(m, l, terms.unwrap_or(DEFAULT_TERMS), grid.clone())?)?;
            let n = kernel.spec().n;
            let mut t = Table::new(&["z", "zprime", "K_N"]);
            for &z in &grid {
                for &zp in &grid {
                    t.push(vec![z.into(), zp.into(), kernel.partial_sum(z, zp, n)?.into()]);
                }
            }
            emit(out, &t.render(g.json)?)?;
        }
        Command::DeltaTest { m, l, f, grid_size } => {
            let grid = interior_grid(grid_size);
            let n = terms.unwrap_or(DEFAULT_TERMS);
            let kernel = Kernel::new(KernelSpec::with_grid(m, l, n, grid.clone())?)?;
            let f = test_function(f, 1.0);
            let moments = kernel.moments(&f, g.tol.unwrap_or(MOMENT_TOL))?;
            let mut t = Table::new(&["z", "f", "F_N", "abs_error"]);
            for &z in &grid {
                let v = kernel.smoothed(&moments, z, n)?;
                t.push(vec![z.into(), f(z).into(), v.into(), (v - f(z)).abs().into()]);
            }
            emit(out, &t.render(g.json)?)?;
        }
        Command::Expand { l, s, f } => {
            let series = expand(test_function(f, s), l, s, terms.unwrap_or(50))?;
            let mut t = Table::new(&["index", "zero", "coefficient", "converged"]);
            let rows = series.zeros().iter().zip(&series.coefficients).zip(&series.converged);
            for (i, ((&a, &c), &ok)) in rows.enumerate() {
                t.push(vec![(i + 1).into(), a.into(), c.into(), ok.into()]);
            }
            emit(out, &t.render(g.json)?)?;
        }
        Command::Flight { m, lengths, r, method, grid } => {
            let cfg = FlightConfig::new(m, lengths.0)?;
            let tol = g.tol.unwrap_or(FLIGHT_TOL);
            let support = cfg.support();
            if let Some(points) = grid {
                if cfg.n() < 2 {
                    return usage("a one-step flight is a delta; there is no grid to tabulate");
                }
                let n = terms.unwrap_or(DEFAULT_TERMS);
                let mut t = Table::new(&["r", "J_direct", "J_recursive", "J_series"]);
                for i in 1..=points {
                    let r = support.r_min + (support.r_max - support.r_min) * i as f64 / (points + 1) as f64;
                    t.push(vec![
                        r.into(),
                        flight_integral_direct(&cfg, r, tol)?.value.into(),
                        flight_recursive(&cfg, r, tol)?.value.into(),
                        flight_series(&cfg, r, n)?.into(),
                    ]);
                }
                emit(out, &t.render(g.json)?)?;
                return Ok(Status::Pass);
            }
            let r = r.expect("clap requires r without grid");
            let base = Record::default()
                .with("m", m)
                .with("lengths", join(cfg.lengths()))
                .with("r", r);
            if cfg.n() == 1 {
                let d = single_step_delta(&cfg)?;
                let rec = base
                    .with("distribution", "pi/(2 r1^2) delta(r - r1)")
                    .with("delta_location", d.location)
                    .with("delta_weight", d.weight);
                emit(out, &rec.render(g.json))?;
                return Ok(Status::Pass);
            }
            let outside = r < support.r_min || r > support.r_max;
            let base = base.with("outside_support", outside);
            let rec = match method {
                FlightMethod::Series => {
                    let Some(n) = terms else {
                        return usage("method series requires --terms");
                    };
                    let v = if outside { 0.0 } else { flight_series(&cfg, r, n)? };
                    base.with("method", "series").with("terms", n).with("value", v)
                }
                _ if outside => base.with("method", format!("{method:?}").to_lowercase()).with("value", 0.0),
                FlightMethod::Direct => with_quadrature(base.with("method", "direct"), &flight_integral_direct(&cfg, r, tol)?),
                FlightMethod::Recursive => {
                    with_quadrature(base.with("method", "recursive"), &flight_recursive(&cfg, r, tol)?)
                }
            };
            emit(out, &rec.render(g.json))?;
        }
        Command::Extended { l, m, big_r, x, lengths, method } => {
            let cfg = ExtendedConfig::new(l, big_r, x, FlightConfig::new(m, lengths.0)?)?;
            let tol = g.tol.unwrap_or(FLIGHT_TOL);
            let base = Record::default()
                .with("l", l)
                .with("m", m)
                .with("R", big_r)
                .with("X", x)
                .with("lengths", join(cfg.inner().lengths()))
                .with("closes", cfg.closes())
                .with("S_tilde", cfg.s_tilde());
            let rec = match method {
                ExtendedMethod::Direct => with_quadrature(base.with("method", "direct"), &extended_direct(&cfg, tol)?),
                ExtendedMethod::Contraction => {
                    with_quadrature(base.with("method", "contraction"), &extended_via_contraction(&cfg, tol)?)
                }
                ExtendedMethod::Series => {
                    let Some(n) = terms else {
                        return usage("method series requires --terms");
                    };
                    base.with("method", "series")
                        .with("terms", n)
                        .with("value", extended_series(&cfg, n)?)
                }
            };
            emit(out, &rec.render(g.json))?;
        }
        Command::Gap { l, m, big_r, x, r1, sweep } => {
            let sweep = sweep.map_or_else(|| vec![terms.unwrap_or(DEFAULT_TERMS)], |c| c.0);
            let mut t = Table::new(&["l", "m", "R", "X", "r1", "N", "lhs", "rhs", "gap"]);
            for gr in representation_gap_sweep(l, m, big_r, x, r1, &sweep)? {
                t.push(vec![
                    l.into(),
                    m.into(),
                    big_r.into(),
                    x.into(),
                    r1.into(),
                    gr.terms.into(),
                    gr.lhs.into(),
                    gr.rhs.into(),
                    gr.gap.into(),
                ]);
            }
            emit(out, &t.render(g.json)?)?;
        }
        Command::Mc { m, lengths, samples, bins } => {
            let cfg = FlightConfig::new(m, lengths.0)?;
            let h = sample_flight(&cfg, samples as usize, g.seed.unwrap_or(DEFAULT_SEED), bins as usize)?;
            let mut t = Table::new(&["bin_lo", "bin_hi", "count", "density"]);
            for ((e, &c), d) in h.bin_edges.windows(2).zip(&h.counts).zip(h.density()) {
                t.push(vec![e[0].into(), e[1].into(), c.into(), d.into()]);
            }
            emit(out, &t.render(g.json)?)?;
        }
        Command::Verify { suite, perturb_zeros } => {
            if !(perturb_zeros.abs() < 1.0) {
                return usage("--perturb-zeros must lie in (-1, 1)");
            }
            let opts = VerifyOptions {
                seed: g.seed.unwrap_or(DEFAULT_SEED),
                zero_perturbation: perturb_zeros,
            };
            let report = run_suite(suite, &opts);
            emit(out, &format!("{}\n", report.to_json()))?;
            let failing: Vec<_> = report.failures().collect();
            eprintln!(
                "verify {suite}: {}/{} cases pass",
                report.cases.len() - failing.len(),
                report.cases.len()
            );
            for c in failing.iter().take(20) {
                eprintln!("  FAIL {}", c.id);
            }
            if failing.len() > 20 {
                eprintln!("  ... {} more failing cases in the report", failing.len() - 20);
            }
            return Ok(if report.pass { Status::Pass } else { Status::Fail });
        }
    }
    Ok(Status::Pass)
}
