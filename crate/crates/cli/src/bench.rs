//! Timing of the sparse multiplication kernel.

use std::time::Instant;

use car_core::repr::{represent, DEFAULT_GENERATOR_CAP};
use car_core::{AlgElement, ConjSpace};

use crate::config::{ConfigError, SYMBOLIC_DIM_CAP};
use crate::report::{CheckRecord, Report};
use crate::seeds::split;

/// Largest dimension whose products are spot-checked against matrices.
pub const SPOT_CHECK_DIM: usize = 8;

/// Multiplies `reps` pairs of random sparse elements of `C(ℂ^dim)` and
/// reports the median time per product. For `dim ≤ 8` a second record
/// compares every product with the Jordan–Wigner matrix product.
pub fn bench_multiply(
    dim: usize,
    density: f64,
    reps: usize,
    seed: u64,
) -> Result<Report, ConfigError> {
    if dim == 0 {
        return Err(ConfigError::DimTooSmall);
    }
    if dim > SYMBOLIC_DIM_CAP {
        return Err(ConfigError::DimTooLarge {
            dim,
            cap: SYMBOLIC_DIM_CAP,
        });
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(ConfigError::BadDensity(density));
    }
    if reps == 0 {
        return Err(ConfigError::NoReps);
    }
    let space = ConjSpace::new(dim).expect("dim is positive");
    let pairs: Vec<(AlgElement, AlgElement)> = (0..reps as u64)
        .map(|r| {
            let s = split(seed, r);
            let a = AlgElement::random_sparse(space, density, split(s, 0));
            let b = AlgElement::random_sparse(space, density, split(s, 1));
            (a.expect("dim within cap"), b.expect("dim within cap"))
        })
        .collect();

    let start = Instant::now();
    let mut times = Vec::with_capacity(reps);
    let mut products = Vec::with_capacity(reps);
    for (a, b) in &pairs {
        let t = Instant::now();
        let p = a * b;
        times.push(t.elapsed().as_nanos() as f64);
        products.push(p);
    }
    let elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    times.sort_by(f64::total_cmp);
    let median = if reps % 2 == 1 {
        times[reps / 2]
    } else {
        (times[reps / 2 - 1] + times[reps / 2]) / 2.0
    };
    let mut records = vec![CheckRecord {
        name: "bench: multiply timing".into(),
        dim,
        seed,
        passed: true,
        max_error: 0.0,
        elapsed_ms,
        median_ns: Some(median),
    }];

    if dim <= SPOT_CHECK_DIM.min(DEFAULT_GENERATOR_CAP) {
        let start = Instant::now();
        let mut max_error: f64 = 0.0;
        let mut ok = true;
        for ((a, b), p) in pairs.iter().zip(&products) {
            let err = (|| {
                let lhs = represent(p)?.into_matrix();
                let rhs = represent(a)?.into_matrix() * represent(b)?.into_matrix();
                Ok::<_, car_core::Error>((lhs - rhs).iter().map(|c| c.norm()).fold(0.0, f64::max))
            })();
            match err {
                Ok(e) => max_error = max_error.max(e),
                Err(_) => ok = false,
            }
        }
        records.push(CheckRecord {
            name: "bench: multiply matches matrices".into(),
            dim,
            seed,
            passed: ok && max_error <= car_core::NUMERICAL_TOL,
            max_error,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
            median_ns: None,
        });
    }
    Ok(Report::new(records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_dim8_passes() {
        let r = bench_multiply(8, 0.1, 100, 42).unwrap();
        assert_eq!(r.checks.len(), 2);
        assert!(r.all_passed());
        assert!(r.checks[0].median_ns.unwrap() >= 0.0);
    }

    #[test]
    fn single_generator_is_exact() {
        let r = bench_multiply(1, 1.0, 1, 9).unwrap();
        assert!(r.all_passed());
        assert_eq!(r.checks[1].max_error, 0.0);
    }

    #[test]
    fn no_spot_check_above_eight() {
        let r = bench_multiply(9, 0.01, 3, 1).unwrap();
        assert_eq!(r.checks.len(), 1);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert_eq!(
            bench_multiply(17, 0.1, 1, 0).unwrap_err(),
            ConfigError::DimTooLarge { dim: 17, cap: 16 }
        );
        assert_eq!(
            bench_multiply(0, 0.1, 1, 0).unwrap_err(),
            ConfigError::DimTooSmall
        );
        assert_eq!(
            bench_multiply(4, 1.5, 1, 0).unwrap_err(),
            ConfigError::BadDensity(1.5)
        );
        assert_eq!(
            bench_multiply(4, 0.5, 0, 0).unwrap_err(),
            ConfigError::NoReps
        );
    }
}
