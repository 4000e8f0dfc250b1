//! Acceptance criteria, one PASS/FAIL line each.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use car_core::morphisms::{image_dimension_ratio, statistical_dimension};
use car_core::Isometry;
use car_verify::suites::{self, SuiteParams};
use car_verify::{CheckRecord, Report};

const SEED: u64 = 42;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn params(dims: impl IntoIterator<Item = usize>, trials: usize, tol: f64) -> SuiteParams {
    SuiteParams {
        dims: dims.into_iter().collect(),
        trials,
        seed: SEED,
        tol,
    }
}

fn summarize(records: &[CheckRecord], elapsed: Duration, budget: Option<Duration>) -> Outcome {
    let failed: Vec<_> = records.iter().filter(|r| !r.passed).collect();
    let worst = records.iter().map(|r| r.max_error).fold(0.0, f64::max);
    let in_time = budget.is_none_or(|b| elapsed <= b);
    let mut detail = format!(
        "{} records, worst error {worst:.2e}, {:.1} s",
        records.len(),
        elapsed.as_secs_f64()
    );
    if let Some(b) = budget {
        detail += &format!(" (budget {} s)", b.as_secs());
    }
    for r in &failed {
        detail += &format!("; failed {} at m={} ({:.2e})", r.name, r.dim, r.max_error);
    }
    Outcome {
        passed: !records.is_empty() && failed.is_empty() && in_time,
        detail,
    }
}

fn timed(run: impl FnOnce() -> Vec<CheckRecord>) -> (Vec<CheckRecord>, Duration) {
    let start = Instant::now();
    let records = run();
    (records, start.elapsed())
}

fn proposition() -> Outcome {
    let (records, t) = timed(|| suites::proposition(&params(1..=8, 100, 1e-10)));
    summarize(&records, t, Some(Duration::from_secs(30)))
}

fn transport() -> Outcome {
    let (records, t) = timed(|| suites::remark1(&params(2..=6, 50, 1e-10)));
    summarize(&records, t, None)
}

fn car_relations() -> Outcome {
    let (records, t) = timed(|| suites::remark2(&params([2, 4, 6], 100, 1e-12)));
    summarize(&records, t, None)
}

fn left_inverses() -> Outcome {
    let (records, t) = timed(|| suites::remark3(&params(1..=6, 100, 1e-10)));
    summarize(&records, t, None)
}

fn intertwining() -> Outcome {
    // every (m, |ind W|) with m + 1 + |ind W| ≤ 12
    let (records, t) = timed(|| suites::remark4(&params(1..=11, 5, 1e-9)));
    summarize(&records, t, None)
}

fn statistical() -> Outcome {
    let mut records: Vec<_> = suites::proposition(&params(1..=8, 20, 0.0))
        .into_iter()
        .filter(|r| r.name.contains("statistical dimension") || r.name.contains("dimension ratio"))
        .collect();
    // direct sweep of the ratio for every index 0..−3 and domain up to 8
    let mut exact = true;
    for m in 1..=8 {
        for extra in 0..=3 {
            let w = Isometry::random(m, m + extra, 1000 * m as u64 + extra as u64).unwrap();
            let d = statistical_dimension(&w);
            exact &= d.squared() == image_dimension_ratio(&w);
            exact &= d.squared() == 2f64.powi(extra as i32);
            if extra == 1 {
                exact &= d.value() == std::f64::consts::SQRT_2;
            }
        }
    }
    records.push(CheckRecord {
        name: "statistical dimension sweep".into(),
        dim: 8,
        seed: SEED,
        passed: exact,
        max_error: 0.0,
        elapsed_ms: 0.0,
        median_ns: None,
    });
    summarize(&records, Duration::ZERO, None)
}

fn oracle() -> Outcome {
    let (mut records, t) = timed(|| {
        let mut r = suites::oracle(&params(2..=8, 500, 1e-10));
        r.retain(|r| !r.name.contains("norm"));
        r
    });
    let (norm, t2) = timed(|| {
        let mut r = suites::oracle(&params(2..=8, 50, 1e-9));
        r.retain(|r| r.name.contains("norm"));
        r
    });
    records.extend(norm);
    summarize(&records, t + t2, None)
}

fn strip_elapsed(json: &str) -> String {
    let key = "\"elapsed_ms\":";
    let mut out = String::with_capacity(json.len());
    let mut rest = json;
    while let Some(pos) = rest.find(key) {
        out.push_str(&rest[..pos + key.len()]);
        rest = &rest[pos + key.len()..];
        let end = rest.find([',', '}']).unwrap_or(rest.len());
        rest = &rest[end..];
    }
    out.push_str(rest);
    out
}

fn determinism() -> Outcome {
    let run = || {
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_car-verify"))
            .args(["run", "--format", "json"])
            .output()
            .expect("binary runs");
        (out, start.elapsed())
    };
    let (a, ta) = run();
    let (b, tb) = run();
    let same = strip_elapsed(&String::from_utf8_lossy(&a.stdout))
        == strip_elapsed(&String::from_utf8_lossy(&b.stdout));
    let report: Option<Report> = serde_json::from_slice(&a.stdout).ok();
    let all_passed = report.as_ref().is_some_and(Report::all_passed);
    let budget = Duration::from_secs(60);
    Outcome {
        passed: same && all_passed && a.status.code() == Some(0) && ta.max(tb) <= budget,
        detail: format!(
            "identical={same}, all passed={all_passed}, exit={:?}, runs {:.1} s and {:.1} s (budget 60 s)",
            a.status.code(),
            ta.as_secs_f64(),
            tb.as_secs_f64()
        ),
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "sigma is a unital *-isomorphism onto the even subalgebra",
            proposition,
        ),
        ("transport unitary and sign covariance", transport),
        ("CAR relations and Fock vacuum", car_relations),
        ("left inverses and conditional expectation", left_inverses),
        ("intertwining with W", intertwining),
        ("statistical dimension", statistical),
        (
            "symbolic backend agrees with Jordan-Wigner matrices",
            oracle,
        ),
        ("deterministic reports and default runtime", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = check();
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        println!("{status} criterion {}: {name}: {}", i + 1, outcome.detail);
        failures += usize::from(!outcome.passed);
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failures,
        criteria.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
