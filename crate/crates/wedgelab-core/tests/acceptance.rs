//! Acceptance run: one pass/fail line per criterion. Sample counts and
//! tolerances are pinned here and must not be loosened.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use wedgelab_core::catalog;
use wedgelab_core::exec::Exec;
use wedgelab_core::report::{Check, SuiteReport};
use wedgelab_core::suites::{self, SuiteConfig};

const SEED: u64 = 20_240_601;
const RESIDUAL_TOL: f64 = 1e-9;
const ANGLE_TOL: f64 = 1e-7;
const BAND: f64 = 1e-6;
const SUITE_BUDGET_SECS: f64 = 60.0;

fn config() -> SuiteConfig {
    // n = None keeps each check at its full default count
    SuiteConfig { seed: SEED, n: None, exec: Exec::Parallel, residual_tol: RESIDUAL_TOL, angle_tol: ANGLE_TOL, band: BAND }
}

struct Suites {
    reports: BTreeMap<String, SuiteReport>,
    slow: Vec<String>,
}

impl Suites {
    fn run() -> Self {
        let cfg = config();
        let mut reports = BTreeMap::new();
        let mut slow = Vec::new();
        for name in ["linop", "liealg", "roots", "polar", "quadric", "wedge"] {
            let start = Instant::now();
            let rep = suites::run_suite(name, &cfg).expect("suite name is valid").remove(0);
            let secs = start.elapsed().as_secs_f64();
            if secs > SUITE_BUDGET_SECS {
                slow.push(format!("{name} took {secs:.1}s"));
            }
            reports.insert(name.to_string(), rep);
        }
        Suites { reports, slow }
    }

    /// Checks of `suite` whose names satisfy `pick`. An empty selection is
    /// reported as a failure by the caller.
    fn select(&self, suite: &str, pick: impl Fn(&str) -> bool) -> Vec<&Check> {
        self.reports[suite].checks.iter().filter(|c| pick(&c.name)).collect()
    }
}

struct Verdict {
    passed: bool,
    summary: String,
}

fn from_checks(checks: &[&Check], expected: usize) -> Verdict {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    let passed = checks.len() == expected && failed.is_empty();
    let worst = checks.iter().filter_map(|c| c.residual).fold(0.0, f64::max);
    let mut summary = format!("{} of {expected} checks", checks.len() - failed.len());
    if worst > 0.0 {
        summary.push_str(&format!(", worst residual {worst:e}"));
    }
    if !failed.is_empty() {
        summary.push_str(&format!(", failed: {}", failed.join(" ")));
    }
    Verdict { passed, summary }
}

fn criteria(s: &Suites) -> Vec<(&'static str, Verdict)> {
    let by_name = |suite: &str, names: &[&str]| {
        let cs = s.select(suite, |n| names.contains(&n));
        from_checks(&cs, names.len())
    };
    let mut out = Vec::new();

    out.push(("sl(2) conjugation, turn and sin(ad y) identities below 1e-9", by_name("liealg", &["sl2_identities"])));

    out.push(("sinhc/cosh kernel formulas on random and planted 6x6 operators", by_name("linop", &["kernel_formulas"])));

    out.push((
        "geodesic law on three branches and quadric closure below 1e-9",
        by_name("quadric", &["geodesic_law", "quadric_closure"]),
    ));

    out.push((
        "four-way flat wedge equality on R^(1,2) and R^(1,4)",
        by_name("quadric", &["minkowski_R12", "minkowski_R14"]),
    ));

    out.push((
        "five-way de Sitter wedge equality on dS2..dS4, base point excluded",
        by_name(
            "quadric",
            &["desitter_dS2", "desitter_dS3", "desitter_dS4", "dS2:base_point", "dS3:base_point", "dS4:base_point"],
        ),
    ));

    out.push((
        "transported polar/positivity/KMS equality and polar-in-positivity on sl(2) models",
        by_name(
            "wedge",
            &[
                "sl2-cayley:equality",
                "sl2xsl2:equality",
                "sl2-cayley:polar_in_positivity",
                "sl2xsl2:polar_in_positivity",
            ],
        ),
    ));

    let inclusions = s.select("roots", |n| n.ends_with(":cmin_in_cmax"));
    let worked = s.select("roots", |n| n == "sl4_worked_example" || n == "sl4:compact_iff_vanishing");
    let all: Vec<&Check> = inclusions.iter().chain(worked.iter()).copied().collect();
    out.push((
        "sl(4) cone example and LP-certified C_min in C_max for every spec",
        from_checks(&all, wedgelab_core::wedge::SPEC_NAMES.len() + 2),
    ));

    let pm = s.select("wedge", |n| n.ends_with(":c_pm_projections"));
    let mut c8 = s.select("liealg", |n| n == "limit_projection" || n == "kappa_cayley_relation");
    let pm_count = pm.len();
    c8.extend(pm);
    out.push((
        "grading limits, projections into the C_+/C_- cones and the Cayley relation",
        from_checks(&c8, 2 + pm_count.max(1)),
    ));

    out.push((
        "regularity criteria agree with invertibility; singular ray parameters at pi/4 and pi/2",
        by_name("polar", &["sl2-cayley:regularity", "sl2xsl2:regularity", "dS3:regularity", "ray_scans"]),
    ));

    out.push(("realized catalog rows: recomputed dim g_1(h) matches exactly", catalog_criterion()));
    out
}

fn catalog_criterion() -> Verdict {
    let checks = match catalog::realized_checks() {
        Ok(c) => c,
        Err(e) => return Verdict { passed: false, summary: format!("error: {e}") },
    };
    let required: Vec<String> = (1..=3)
        .flat_map(|r| [format!("sl({})", 2 * r), format!("sp({})", 2 * r)])
        .chain((3..=4).map(|d| format!("so(2,{d})")))
        .collect();
    let mut missing = Vec::new();
    let mut mismatched = Vec::new();
    for name in &required {
        match checks.iter().find(|c| &c.realization == name) {
            None => missing.push(name.clone()),
            Some(c) if c.computed_g1_dim != c.expected_g1_dim => {
                mismatched.push(format!("{name}: {} vs {}", c.computed_g1_dim, c.expected_g1_dim))
            }
            Some(_) => {}
        }
    }
    let others_ok = checks.iter().all(|c| c.matches());
    Verdict {
        passed: missing.is_empty() && mismatched.is_empty() && others_ok,
        summary: format!(
            "{} required rows, {} realized in total, missing {missing:?}, mismatched {mismatched:?}",
            required.len(),
            checks.len()
        ),
    }
}

fn main() -> ExitCode {
    let suites = Suites::run();
    let results = criteria(&suites);
    let mut all = true;
    for (i, (what, v)) in results.iter().enumerate() {
        println!("criterion {:>2} {}: {what} ({})", i + 1, if v.passed { "PASS" } else { "FAIL" }, v.summary);
        all &= v.passed;
    }
    let timing_ok = suites.slow.is_empty();
    println!("suite time budget {}: {:?}", if timing_ok { "PASS" } else { "FAIL" }, suites.slow);
    if all && timing_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
