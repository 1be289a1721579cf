//! Verification suites: every invariant and acceptance check as a named case
//! carrying its inputs, expected value, measured value and tolerance.
//!
//! Cases within a group run concurrently; reports list cases sorted by id, so
//! two runs with the same options serialize identically apart from `ms`.

mod groups;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{domain, Error, Result};
use crate::specfun::{bessel_zeros, ZeroTable, ACTIVE_CONVENTION};

pub const DEFAULT_SEED: u64 = 1729;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Kernels,
    Flights,
    Extended,
    All,
}

impl Suite {
    pub const VARIANTS: [Suite; 5] = [Suite::Specfun, Suite::Kernels, Suite::Flights, Suite::Extended, Suite::All];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Kernels => "kernels",
            Suite::Flights => "flights",
            Suite::Extended => "extended",
            Suite::All => "all",
        }
    }

    pub fn groups(self) -> Vec<Group> {
        use Group::*;
        match self {
            Suite::Specfun => vec![Zeros, Identities, Orthogonality, SpecfunInvariants],
            Suite::Kernels => vec![ClassicalDelta, CompletenessLike, KernelInvariants],
            Suite::Flights => vec![FlightRoutes, MonteCarlo, FlightInvariants],
            Suite::Extended => vec![ExtendedGap, ExtendedInvariants],
            Suite::All => [Suite::Specfun, Suite::Kernels, Suite::Flights, Suite::Extended]
                .into_iter()
                .flat_map(Suite::groups)
                .collect(),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::VARIANTS
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

/// A family of related cases; the unit of timing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Group {
    Zeros,
    Identities,
    Orthogonality,
    SpecfunInvariants,
    ClassicalDelta,
    CompletenessLike,
    KernelInvariants,
    FlightRoutes,
    MonteCarlo,
    FlightInvariants,
    ExtendedGap,
    ExtendedInvariants,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::Zeros => "zeros",
            Group::Identities => "identities",
            Group::Orthogonality => "orthogonality",
            Group::SpecfunInvariants => "specfun",
            Group::ClassicalDelta => "classical-delta",
            Group::CompletenessLike => "completeness-like",
            Group::KernelInvariants => "kernel",
            Group::FlightRoutes => "flight-routes",
            Group::MonteCarlo => "monte-carlo",
            Group::FlightInvariants => "flight",
            Group::ExtendedGap => "extended-gap",
            Group::ExtendedInvariants => "extended",
        }
    }

    fn cases(self, opts: &VerifyOptions) -> Vec<Case> {
        match self {
            Group::Zeros => groups::zeros(opts),
            Group::Identities => groups::identities(opts),
            Group::Orthogonality => groups::orthogonality(opts),
            Group::SpecfunInvariants => groups::specfun_invariants(opts),
            Group::ClassicalDelta => groups::classical_delta(opts),
            Group::CompletenessLike => groups::completeness_like(opts),
            Group::KernelInvariants => groups::kernel_invariants(opts),
            Group::FlightRoutes => groups::flight_routes(opts),
            Group::MonteCarlo => groups::monte_carlo(opts),
            Group::FlightInvariants => groups::flight_invariants(opts),
            Group::ExtendedGap => groups::extended_gap(opts),
            Group::ExtendedInvariants => groups::extended_invariants(opts),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Relative shift applied to every zero table the suites use; nonzero
    /// values exist to prove that the suites notice.
    pub zero_perturbation: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            zero_perturbation: 0.0,
        }
    }
}

impl VerifyOptions {
    pub(crate) fn zeros(&self, order: usize, count: usize) -> Result<ZeroTable> {
        let table = bessel_zeros(order, count)?;
        if self.zero_perturbation == 0.0 {
            return Ok(table);
        }
        if !self.zero_perturbation.is_finite() || self.zero_perturbation.abs() >= 1.0 {
            return domain(format!("zero perturbation {} out of range", self.zero_perturbation));
        }
        let shift = 1.0 + self.zero_perturbation;
        ZeroTable::from_values(order, table.zeros().iter().map(|z| z * shift).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub inputs: Value,
    pub expected: f64,
    /// `None` when the computation itself failed; see `note`.
    pub actual: Option<f64>,
    pub tol: f64,
    pub pass: bool,
    pub ms: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Case {
    /// Passes when `|actual - expected| <= tol`.
    pub(crate) fn new(id: impl Into<String>, inputs: Value, expected: f64, actual: Result<f64>, tol: f64, ms: f64) -> Self {
        let (actual, note) = match actual {
            Ok(v) if v.is_finite() => (Some(v), None),
            Ok(v) => (None, Some(format!("non-finite result {v}"))),
            Err(e) => (None, Some(e.to_string())),
        };
        let pass = actual.is_some_and(|a| (a - expected).abs() <= tol);
        Self {
            id: id.into(),
            inputs,
            expected,
            actual,
            tol,
            pass,
            ms: (ms * 1e3).round() / 1e3,
            note,
        }
    }

    pub(crate) fn with_note(mut self, note: &str) -> Self {
        self.note = Some(match self.note.take() {
            Some(n) => format!("{n}; {note}"),
            None => note.to_string(),
        });
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub convention: String,
    pub seeds: Vec<u64>,
    pub cases: Vec<Case>,
    pub pass: bool,
}

impl VerificationReport {
    fn from_cases(suite: Suite, opts: &VerifyOptions, mut cases: Vec<Case>) -> Self {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let pass = cases.iter().all(|c| c.pass);
        Self {
            suite: suite.name().to_string(),
            convention: ACTIVE_CONVENTION.name().to_string(),
            seeds: vec![opts.seed],
            cases,
            pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }

    /// The report with every timing field zeroed.
    pub fn without_timing(&self) -> Self {
        let mut r = self.clone();
        r.cases.iter_mut().for_each(|c| c.ms = 0.0);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }
}

/// Cases of one group with the wall-clock time the group took.
#[derive(Debug, Clone)]
pub struct GroupRun {
    pub group: Group,
    pub cases: Vec<Case>,
    pub seconds: f64,
}

impl GroupRun {
    pub fn pass(&self) -> bool {
        self.cases.iter().all(|c| c.pass)
    }
}

pub fn run_group(group: Group, opts: &VerifyOptions) -> GroupRun {
    let start = Instant::now();
    let mut cases = group.cases(opts);
    cases.sort_by(|a, b| a.id.cmp(&b.id));
    GroupRun {
        group,
        cases,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// Runs the groups of `suite` one after another.
pub fn run_suite_detailed(suite: Suite, opts: &VerifyOptions) -> (VerificationReport, Vec<GroupRun>) {
    let runs: Vec<GroupRun> = suite.groups().into_iter().map(|g| run_group(g, opts)).collect();
    let cases = runs.iter().flat_map(|r| r.cases.iter().cloned()).collect();
    (VerificationReport::from_cases(suite, opts, cases), runs)
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> VerificationReport {
    run_suite_detailed(suite, opts).0
}

pub(crate) fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64() * 1e3)
}
