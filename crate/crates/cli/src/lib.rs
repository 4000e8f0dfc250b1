//! Batch verification harness for `car-core`.
//!
//! [`run_suite`] runs the selected suites over a sweep of input dimensions
//! and returns a [`Report`] with one record per check and dimension. Every
//! trial draws its inputs from a seed derived with [`seeds::derive`], so the
//! outcome depends only on the configuration.

pub mod bench;
pub mod config;
pub mod report;
pub mod seeds;
pub mod suites;

pub use bench::bench_multiply;
pub use config::{ConfigError, Suite, SuiteConfig};
pub use report::{emit_report, CheckRecord, Format, Report, Summary};
pub use suites::run_suite;
