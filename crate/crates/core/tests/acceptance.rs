//! Acceptance run: every criterion at its stated tolerance and runtime limit,
//! one PASS/FAIL line each. Exits non-zero if any criterion fails.

use std::process::ExitCode;

use rflight_core::verify::{run_suite, run_suite_detailed, Case, Group, GroupRun, Suite, VerifyOptions};

const CRITERIA: [(u8, Group, &str, f64); 8] = [
    (1, Group::Zeros, "zeros of j_l: multiples of pi, interlacing", 1.0),
    (2, Group::Identities, "addition theorem and contraction identity", 30.0),
    (3, Group::Orthogonality, "orthogonality at the zeros", 10.0),
    (4, Group::ClassicalDelta, "classical completeness, delta test at N = 400", 120.0),
    (5, Group::CompletenessLike, "completeness-like relation, delta test over N", 240.0),
    (6, Group::FlightRoutes, "three-route flight equivalence and anchors", 180.0),
    (7, Group::MonteCarlo, "Monte Carlo concordance for the D = 3 two-step law", 30.0),
    (8, Group::ExtendedGap, "representation gap of the extended flight", 120.0),
];

fn describe(c: &Case) -> String {
    let actual = c.actual.map_or("none".to_string(), |a| format!("{a:.6e}"));
    let mut s = format!("      {}: expected {:.6e}, actual {actual}, tol {:.1e}", c.id, c.expected, c.tol);
    if let Some(n) = &c.note {
        s.push_str(&format!(" ({n})"));
    }
    if c.id.ends_with("/decreasing") {
        if let Some(seq) = c.inputs.get("gaps").or_else(|| c.inputs.get("errors")) {
            s.push_str(&format!(" sequence {seq}"));
        }
    }
    s
}

fn report(number: u8, title: &str, limit: f64, run: &GroupRun) -> bool {
    let failing: Vec<&Case> = run.cases.iter().filter(|c| !c.pass).collect();
    let in_time = run.seconds < limit;
    let pass = failing.is_empty() && in_time;
    println!(
        "criterion {number}: {} - {title}: {}/{} cases, {:.2} s (limit {limit} s{})",
        if pass { "PASS" } else { "FAIL" },
        run.cases.len() - failing.len(),
        run.cases.len(),
        run.seconds,
        if in_time { "" } else { ", exceeded" },
    );
    for c in failing.iter().take(12) {
        println!("{}", describe(c));
    }
    if failing.len() > 12 {
        println!("      ... and {} more failing cases", failing.len() - 12);
    }
    pass
}

fn main() -> ExitCode {
    let opts = VerifyOptions::default();
    let (first, runs) = run_suite_detailed(Suite::All, &opts);
    let mut all_pass = true;
    for (number, group, title, limit) in CRITERIA {
        let run = runs.iter().find(|r| r.group == group).expect("suite all runs every group");
        all_pass &= report(number, title, limit, run);
    }

    let second = run_suite(Suite::All, &opts);
    let identical = first.without_timing().to_json() == second.without_timing().to_json();
    println!(
        "criterion 9: {} - verify all twice with seed {} gives identical reports modulo timing ({} cases)",
        if identical { "PASS" } else { "FAIL" },
        opts.seed,
        first.cases.len()
    );
    all_pass &= identical;

    for run in runs.iter().filter(|r| CRITERIA.iter().all(|c| c.1 != r.group)) {
        let failing = run.cases.iter().filter(|c| !c.pass).count();
        println!(
            "invariants {}: {}/{} cases pass, {:.2} s",
            run.group.name(),
            run.cases.len() - failing,
            run.cases.len(),
            run.seconds
        );
        for c in run.cases.iter().filter(|c| !c.pass).take(12) {
            println!("{}", describe(c));
        }
        all_pass &= failing == 0;
    }

    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
