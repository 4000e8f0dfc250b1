use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Text,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Format::Json),
            "text" => Ok(Format::Text),
            other => Err(format!("unknown format {other:?} (expected json or text)")),
        }
    }
}

/// One check at one dimension, aggregated over trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub name: String,
    pub dim: usize,
    pub seed: u64,
    pub passed: bool,
    pub max_error: f64,
    /// Wall-clock time; not part of the determinism contract.
    pub elapsed_ms: f64,
    /// Median time per operation, benchmarks only; not part of the determinism contract.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub median_ns: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    pub fn new(checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        Self { checks, summary }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// Process exit status: 0 if every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

pub fn emit_report(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string(report).expect("report serializes"),
        Format::Text => {
            let mut out = String::new();
            for c in &report.checks {
                let _ = write!(
                    out,
                    "{} {} dim={} seed={} max_error={:.3e} elapsed_ms={:.3}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.dim,
                    c.seed,
                    c.max_error,
                    c.elapsed_ms
                );
                if let Some(ns) = c.median_ns {
                    let _ = write!(out, " median_ns={ns:.1}");
                }
                out.push('\n');
            }
            let s = report.summary;
            let _ = writeln!(
                out,
                "total={} passed={} failed={}",
                s.total, s.passed, s.failed
            );
            out
        }
    }
}
