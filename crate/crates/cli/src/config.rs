use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::report::Format;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Proposition,
    Remark1,
    Remark2,
    Remark3,
    Remark4,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Proposition,
        Suite::Remark1,
        Suite::Remark2,
        Suite::Remark3,
        Suite::Remark4,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Proposition => "proposition",
            Suite::Remark1 => "remark1",
            Suite::Remark2 => "remark2",
            Suite::Remark3 => "remark3",
            Suite::Remark4 => "remark4",
            Suite::Oracle => "oracle",
        }
    }

    /// Whether the suite builds Jordan–Wigner matrices.
    pub fn uses_matrices(self) -> bool {
        matches!(
            self,
            Suite::Proposition | Suite::Remark2 | Suite::Remark4 | Suite::Oracle
        )
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.trim())
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("--dim-in must be at least 1")]
    DimTooSmall,
    #[error("--dim-in {dim} exceeds {cap} for the selected suites")]
    DimTooLarge { dim: usize, cap: usize },
    #[error("--trials must be at least 1")]
    NoTrials,
    #[error("--tol must be a finite non-negative number, got {0}")]
    BadTolerance(f64),
    #[error("--density must lie in [0, 1], got {0}")]
    BadDensity(f64),
    #[error("--reps must be at least 1")]
    NoReps,
    #[error("no suites selected")]
    NoSuites,
}

/// Largest `dim_in` for suites that build matrices (the codomain has `dim_in + 1` generators
/// only for the isomorphism checks, which cap their own matrix sweeps).
pub const MATRIX_DIM_CAP: usize = 12;
pub const SYMBOLIC_DIM_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    /// Largest domain dimension of the sweep; suites run `m = 1..=dim_in`.
    pub dim_in: usize,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    pub format: Format,
    pub suites: Vec<Suite>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            dim_in: 4,
            trials: 100,
            seed: 42,
            tol: 1e-10,
            format: Format::Json,
            suites: Suite::ALL.to_vec(),
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.dim_in == 0 {
            return Err(ConfigError::DimTooSmall);
        }
        if self.trials == 0 {
            return Err(ConfigError::NoTrials);
        }
        if !self.tol.is_finite() || self.tol < 0.0 {
            return Err(ConfigError::BadTolerance(self.tol));
        }
        if self.suites.is_empty() {
            return Err(ConfigError::NoSuites);
        }
        let cap = if self.suites.iter().any(|s| s.uses_matrices()) {
            MATRIX_DIM_CAP
        } else {
            SYMBOLIC_DIM_CAP
        };
        if self.dim_in > cap {
            return Err(ConfigError::DimTooLarge {
                dim: self.dim_in,
                cap,
            });
        }
        Ok(())
    }
}

/// Parses `a,b,c` into suites in canonical order, without repeats.
pub fn parse_suites(list: &str) -> Result<Vec<Suite>, ConfigError> {
    let mut suites = list
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(Suite::from_str)
        .collect::<Result<Vec<_>, _>>()?;
    suites.sort();
    suites.dedup();
    if suites.is_empty() {
        return Err(ConfigError::NoSuites);
    }
    Ok(suites)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = SuiteConfig::default();
        assert_eq!(
            (cfg.dim_in, cfg.trials, cfg.seed, cfg.tol),
            (4, 100, 42, 1e-10)
        );
        assert_eq!(cfg.validate(), Ok(()));
    }

    #[test]
    fn invalid_configs() {
        let base = SuiteConfig::default();
        let cases = [
            (
                SuiteConfig {
                    dim_in: 0,
                    ..base.clone()
                },
                ConfigError::DimTooSmall,
            ),
            (
                SuiteConfig {
                    trials: 0,
                    ..base.clone()
                },
                ConfigError::NoTrials,
            ),
            (
                SuiteConfig {
                    tol: -1.0,
                    ..base.clone()
                },
                ConfigError::BadTolerance(-1.0),
            ),
            (
                SuiteConfig {
                    dim_in: 13,
                    ..base.clone()
                },
                ConfigError::DimTooLarge { dim: 13, cap: 12 },
            ),
            (
                SuiteConfig {
                    suites: vec![],
                    ..base.clone()
                },
                ConfigError::NoSuites,
            ),
        ];
        for (cfg, err) in cases {
            assert_eq!(cfg.validate(), Err(err));
        }
        let symbolic = SuiteConfig {
            dim_in: 14,
            suites: vec![Suite::Remark1, Suite::Remark3],
            ..base
        };
        assert_eq!(symbolic.validate(), Ok(()));
    }

    #[test]
    fn suite_lists() {
        assert_eq!(
            parse_suites("remark3, proposition,remark3").unwrap(),
            vec![Suite::Proposition, Suite::Remark3]
        );
        assert_eq!(
            parse_suites("bogus"),
            Err(ConfigError::UnknownSuite("bogus".into()))
        );
        assert_eq!(parse_suites(","), Err(ConfigError::NoSuites));
    }
}
