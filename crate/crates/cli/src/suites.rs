//! The verification suites.
//!
//! Each suite sweeps a list of domain dimensions `m` and, for every `m`,
//! runs `trials` independent trials. Trial 0 uses the shift isometry
//! `K_m → K_{m+1}`; the others draw a random index −1 isometry. A check's
//! record carries the worst error over all trials at that dimension, and it
//! passes when every trial met its structural condition and the worst error
//! stays within `min(check tolerance, configured tolerance)`.

use std::time::{Duration, Instant};

use car_core::algebra::{car_annihilator, car_creator};
use car_core::morphisms::{
    bogoliubov, image_dimension_ratio, intertwining_check, statistical_dimension, transport_unitary,
};
use car_core::repr::{matrix_intertwining_check, operator_norm, represent, vacuum};
use car_core::space::polarization_basis;
use car_core::{AlgElement, Complex64, ConjSpace, EvenIsomorphism, Isometry, Vector};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{Suite, SuiteConfig, MATRIX_DIM_CAP};
use crate::report::{CheckRecord, Report};
use crate::seeds::{derive, split};

/// Largest domain dimension for which the proposition suite also runs matrix checks.
pub const PROPOSITION_MATRIX_DIM: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteParams {
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
}

type CoreResult<T> = car_core::Result<T>;

/// Result of one measurement: a structural verdict and an error magnitude.
struct Observation {
    ok: bool,
    error: f64,
}

impl From<f64> for Observation {
    fn from(error: f64) -> Self {
        Self { ok: true, error }
    }
}

impl From<bool> for Observation {
    fn from(ok: bool) -> Self {
        Self { ok, error: 0.0 }
    }
}

struct Check {
    name: String,
    dim: usize,
    seed: u64,
    threshold: f64,
    max_error: f64,
    ok: bool,
    elapsed: Duration,
}

impl Check {
    fn new(suite: Suite, name: &str, dim: usize, params: &SuiteParams, tol: f64) -> Self {
        Self {
            name: format!("{suite}: {name}"),
            dim,
            seed: params.seed,
            threshold: tol.min(params.tol),
            max_error: 0.0,
            ok: true,
            elapsed: Duration::ZERO,
        }
    }

    fn measure<O: Into<Observation>>(&mut self, f: impl FnOnce() -> CoreResult<O>) {
        let start = Instant::now();
        let outcome = f();
        self.elapsed += start.elapsed();
        match outcome {
            Ok(o) => {
                let o = o.into();
                self.ok &= o.ok;
                // NaN must not hide behind f64::max
                if o.error.is_nan() {
                    self.ok = false;
                }
                self.max_error = self.max_error.max(o.error);
            }
            Err(_) => self.ok = false,
        }
    }

    fn finish(self) -> CheckRecord {
        CheckRecord {
            passed: self.ok && self.max_error <= self.threshold,
            name: self.name,
            dim: self.dim,
            seed: self.seed,
            max_error: self.max_error,
            elapsed_ms: self.elapsed.as_secs_f64() * 1e3,
            median_ns: None,
        }
    }
}

fn space(m: usize) -> ConjSpace {
    ConjSpace::new(m).expect("sweep dimensions are positive")
}

fn diff(a: &AlgElement, b: &AlgElement) -> CoreResult<f64> {
    a.max_abs_diff(b)
}

fn max_entry(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

fn orthogonality_defect(u: &DMatrix<f64>) -> f64 {
    let n = u.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let a = (u.transpose() * u - &id).amax();
    let b = (u * u.transpose() - &id).amax();
    a.max(b)
}

/// Shift for trial 0, a seeded random index −1 isometry otherwise.
fn trial_isometry(m: usize, trial: usize, seed: u64) -> CoreResult<Isometry> {
    if trial == 0 {
        Isometry::shift(m)
    } else {
        Isometry::random(m, m + 1, seed)
    }
}

fn trial_seed(params: &SuiteParams, suite: Suite, m: usize, trial: usize) -> u64 {
    derive(params.seed, &[suite as u64, m as u64, trial as u64])
}

fn generators(m: usize) -> impl Iterator<Item = AlgElement> {
    (0..m).map(move |j| AlgElement::generator(space(m), j).expect("index below m"))
}

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

fn random_vector(m: usize, seed: u64) -> Vector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Vector::new(space(m), (0..m).map(|_| random_complex(&mut rng)).collect())
        .expect("length matches")
}

/// `Σ_a α_a f_a` with seeded coefficients.
fn random_polarized(m: usize, seed: u64) -> CoreResult<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Vector::zero(space(m));
    for fa in polarization_basis(m)? {
        f = f.add(&fa.scale(random_complex(&mut rng)))?;
    }
    Ok(f)
}

/// σ_V is a unital *-isomorphism onto the even subalgebra, u_V is unitary
/// with u_V² = k_V, and the statistical dimension bookkeeping.
pub fn proposition(params: &SuiteParams) -> Vec<CheckRecord> {
    let suite = Suite::Proposition;
    let mut out = Vec::new();
    for &m in &params.dims {
        let new = |name, tol| Check::new(suite, name, m, params, tol);
        let mut unital = new("sigma unital", 1e-12);
        let mut multiplicative = new("sigma multiplicative", 1e-10);
        let mut adjoint = new("sigma adjoint", 1e-10);
        let mut closed_form = new("sigma on generators = k_V rho_V", 1e-12);
        let mut trace = new("sigma trace preserving", 1e-10);
        let mut u_unitary = new("u unitary", 1e-12);
        let mut u_square = new("u squared = k", 1e-12);
        let mut k_unitary = new("k skew-adjoint unitary", 1e-12);
        let mut image = new("sigma image = even subalgebra", 1e-12);
        let mut norm = (m <= PROPOSITION_MATRIX_DIM).then(|| new("sigma norm isometric", 1e-9));
        let mut stat = new("statistical dimension = sqrt2", 0.0);
        let mut ratio = new("dimension ratio = stat dim squared", 0.0);

        for trial in 0..params.trials {
            let t = trial_seed(params, suite, m, trial);
            let Ok(v) = trial_isometry(m, trial, split(t, 0)) else {
                unital.ok = false;
                continue;
            };
            let sigma = match EvenIsomorphism::new(&v) {
                Ok(s) => s,
                Err(_) => {
                    unital.ok = false;
                    continue;
                }
            };
            let dom = space(m);
            let cod = space(m + 1);
            let a = AlgElement::random(dom, m, split(t, 1));
            let b = AlgElement::random(dom, m, split(t, 2));
            let (Ok(a), Ok(b)) = (a, b) else {
                multiplicative.ok = false;
                continue;
            };

            unital.measure(|| diff(&sigma.apply(&AlgElement::one(dom))?, &AlgElement::one(cod)));
            multiplicative.measure(|| {
                let lhs = sigma.apply(&(&a * &b))?;
                diff(&lhs, &(&sigma.apply(&a)? * &sigma.apply(&b)?))
            });
            adjoint.measure(|| diff(&sigma.apply(&a.adjoint())?, &sigma.apply(&a)?.adjoint()));
            closed_form.measure(|| {
                let k = sigma.odd_unitary().element();
                let mut worst: f64 = 0.0;
                for j in 0..m {
                    let e = Vector::basis(dom, j)?;
                    let lhs = sigma.apply(&AlgElement::b_of(&e))?;
                    let rhs = k * &AlgElement::b_of(&v.apply(&e)?);
                    worst = worst.max(diff(&lhs, &rhs)?);
                }
                let kv = random_vector(m, split(t, 3));
                let lhs = sigma.apply(&AlgElement::b_of(&kv))?;
                worst = worst.max(diff(&lhs, &(k * &AlgElement::b_of(&v.apply(&kv)?)))?);
                Ok(worst)
            });
            trace.measure(|| {
                let sa = sigma.apply(&a)?;
                Ok(((&sa.adjoint() * &sa).trace() - (&a.adjoint() * &a).trace()).norm())
            });
            let u = sigma.twist_unitary().element();
            let k = sigma.odd_unitary().element();
            let one = AlgElement::one(cod);
            u_unitary.measure(|| {
                Ok(diff(&(u * &u.adjoint()), &one)?.max(diff(&(&u.adjoint() * u), &one)?))
            });
            u_square.measure(|| diff(&(u * u), k));
            k_unitary.measure(|| {
                let skew = diff(&k.adjoint(), &-k)?;
                let unit = diff(&(k * &k.adjoint()), &one)?;
                let square = diff(&(k * k), &-&one)?;
                Ok(skew.max(unit).max(square))
            });
            image.measure(|| {
                let images = sigma.basis_images();
                let odd = images
                    .iter()
                    .map(|x| x.odd_part().trace_norm())
                    .fold(0.0, f64::max);
                let full_rank = sigma.image_rank() == 1 << m;
                Ok(Observation {
                    ok: full_rank,
                    error: odd,
                })
            });
            if let Some(norm) = norm.as_mut() {
                norm.measure(|| Ok((operator_norm(&sigma.apply(&a)?)? - operator_norm(&a)?).abs()));
            }
            stat.measure(|| {
                let d = statistical_dimension(&v);
                Ok((d.value() - std::f64::consts::SQRT_2).abs())
            });
            ratio.measure(|| {
                let mut worst: f64 = 0.0;
                for extra in 0..=3 {
                    let w = Isometry::random(m, m + extra, split(t, 10 + extra as u64))?;
                    let d = statistical_dimension(&w);
                    worst = worst.max((d.squared() - image_dimension_ratio(&w)).abs());
                    worst = worst.max((d.squared() - 2f64.powi(extra as i32)).abs());
                }
                Ok(worst)
            });
        }
        let mut checks = vec![
            unital,
            multiplicative,
            adjoint,
            closed_form,
            trace,
            u_unitary,
            u_square,
            k_unitary,
            image,
        ];
        checks.extend(norm);
        checks.push(stat);
        checks.push(ratio);
        out.extend(checks.into_iter().map(Check::finish));
    }
    out
}

/// Transport between two even isomorphisms and the sign freedom of k_V.
pub fn remark1(params: &SuiteParams) -> Vec<CheckRecord> {
    let suite = Suite::Remark1;
    let mut out = Vec::new();
    for &m in &params.dims {
        let new = |name, tol| Check::new(suite, name, m, params, tol);
        let mut orthogonal = new("transport unitary orthogonal", 1e-12);
        let mut transitive = new("transport intertwines sigma", 1e-10);
        let mut covariance = new("sign flip = sigma after gamma", 1e-12);
        for trial in 0..params.trials {
            let t = trial_seed(params, suite, m, trial);
            let pair = trial_isometry(m, trial, split(t, 0))
                .and_then(|v| Ok((v, Isometry::random(m, m + 1, split(t, 1))?)));
            let Ok((v, v2)) = pair else {
                orthogonal.ok = false;
                continue;
            };
            let setup = || -> CoreResult<_> {
                Ok((
                    transport_unitary(&v, &v2)?,
                    EvenIsomorphism::new(&v)?,
                    EvenIsomorphism::new(&v2)?,
                ))
            };
            let Ok((u, sigma, sigma2)) = setup() else {
                orthogonal.ok = false;
                continue;
            };
            orthogonal.measure(|| {
                Ok(Observation {
                    ok: u.index() == 0,
                    error: orthogonality_defect(u.matrix()),
                })
            });
            transitive.measure(|| {
                let mut worst: f64 = 0.0;
                for c in generators(m) {
                    let lhs = bogoliubov(&u, &sigma.apply(&c)?)?;
                    worst = worst.max(diff(&lhs, &sigma2.apply(&c)?)?);
                }
                Ok(worst)
            });
            covariance.measure(|| {
                let flipped = sigma.flipped();
                let kv = random_vector(m, split(t, 2));
                let mut worst = diff(
                    &flipped.odd_unitary().element().clone(),
                    &-sigma.odd_unitary().element(),
                )?;
                for b in generators(m).chain(std::iter::once(AlgElement::b_of(&kv))) {
                    worst = worst.max(diff(&flipped.apply(&b)?, &sigma.apply(&b.gamma())?)?);
                }
                Ok(worst)
            });
        }
        out.extend([orthogonal, transitive, covariance].map(Check::finish));
    }
    out
}

/// CAR relations for a polarization and the Fock vacuum. Odd dimensions are skipped.
pub fn remark2(params: &SuiteParams) -> Vec<CheckRecord> {
    let suite = Suite::Remark2;
    let mut out = Vec::new();
    for &m in params.dims.iter().filter(|m| *m % 2 == 0) {
        let new = |name, tol| Check::new(suite, name, m, params, tol);
        let mut aa = new("car {a(f),a(g)} = 0", 1e-12);
        let mut aa_star = new("car {a(f),a(g)*} = <g,f>1", 1e-12);
        let mut annihilated = new("vacuum annihilated", 1e-12);
        let mut one_particle = new("one-particle states orthonormal", 1e-12);
        let s = space(m);
        for trial in 0..params.trials {
            let t = trial_seed(params, suite, m, trial);
            aa.measure(|| {
                let f = car_annihilator(&random_polarized(m, split(t, 0))?)?;
                let g = car_annihilator(&random_polarized(m, split(t, 1))?)?;
                diff(&f.anticommutator(&g)?, &AlgElement::zero(s))
            });
            aa_star.measure(|| {
                let fv = random_polarized(m, split(t, 0))?;
                let gv = random_polarized(m, split(t, 1))?;
                let lhs = car_annihilator(&fv)?.anticommutator(&car_creator(&gv)?)?;
                diff(&lhs, &AlgElement::scalar(s, gv.inner(&fv)?))
            });
        }
        let basis = polarization_basis(m);
        annihilated.measure(|| {
            let omega = vacuum(m)?;
            let mut worst: f64 = 0.0;
            for f in basis.clone()? {
                worst = worst.max((represent(&car_annihilator(&f)?)?.matrix() * &omega).norm());
            }
            Ok(worst)
        });
        one_particle.measure(|| {
            let omega = vacuum(m)?;
            let states = basis
                .clone()?
                .iter()
                .map(|f| Ok(represent(&car_creator(f)?)?.into_matrix() * &omega))
                .collect::<CoreResult<Vec<_>>>()?;
            let mut worst: f64 = 0.0;
            for (i, x) in states.iter().enumerate() {
                for (j, y) in states.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((x.dotc(y) - expected).norm());
                }
            }
            Ok(worst)
        });
        out.extend([aa, aa_star, annihilated, one_particle].map(Check::finish));
    }
    out
}

/// Left inverses, the decomposition a = a₀ + k_V a₁ + b₁ and the conditional expectation.
pub fn remark3(params: &SuiteParams) -> Vec<CheckRecord> {
    let suite = Suite::Remark3;
    let mut out = Vec::new();
    for &m in &params.dims {
        let new = |name, tol| Check::new(suite, name, m, params, tol);
        let mut phi = new("phi left inverse of sigma", 1e-10);
        let mut big_phi = new("Phi left inverse of rho", 1e-10);
        let mut decomposition = new("decomposition reassembles", 1e-12);
        let mut mean = new("expectation = mean over Z2 on monomial basis", 1e-12);
        let mut expectation = new("expectation idempotent and positive", 1e-12);
        let (dom, cod) = (space(m), space(m + 1));
        for trial in 0..params.trials {
            let t = trial_seed(params, suite, m, trial);
            let setup = || -> CoreResult<_> {
                let v = trial_isometry(m, trial, split(t, 0))?;
                let sigma = EvenIsomorphism::new(&v)?;
                let a = AlgElement::random(dom, m, split(t, 1))?;
                let x = AlgElement::random(cod, m + 1, split(t, 2))?;
                Ok((v, sigma, a, x))
            };
            let Ok((v, sigma, a, x)) = setup() else {
                phi.ok = false;
                continue;
            };
            phi.measure(|| diff(&sigma.left_inverse(&sigma.apply(&a)?)?, &a));
            big_phi.measure(|| diff(&sigma.bogoliubov_left_inverse(&bogoliubov(&v, &a)?)?, &a));
            decomposition.measure(|| {
                let d = sigma.decompose(&x)?;
                let graded = d.even.odd_part().trace_norm()
                    + d.kernel_odd.even_part().trace_norm()
                    + d.odd_rest.even_part().trace_norm();
                Ok(diff(&d.reassemble(sigma.odd_unitary()), &x)?.max(graded))
            });
            mean.measure(|| {
                let half = Complex64::new(0.5, 0.0);
                let mut worst: f64 = 0.0;
                for mask in 0..1u64 << (m + 1) {
                    let c = AlgElement::monomial(cod, mask, Complex64::ONE)?;
                    let expected = (&c + &c.gamma()).scale(half);
                    worst = worst.max(diff(&sigma.conditional_expectation(&c)?, &expected)?);
                }
                Ok(worst)
            });
            expectation.measure(|| {
                let e = sigma.conditional_expectation(&x)?;
                let idempotent = diff(&sigma.conditional_expectation(&e)?, &e)?;
                let pos = sigma.conditional_expectation(&(&x.adjoint() * &x))?.trace();
                Ok(Observation {
                    ok: pos.re >= 0.0,
                    error: idempotent.max(pos.im.abs()),
                })
            });
        }
        out.extend([phi, big_phi, decomposition, mean, expectation].map(Check::finish));
    }
    out
}

/// ρ_W ∘ σ_V = Ad(ρ_W(u_V)) ∘ ρ_{WV}, symbolically and in the Jordan–Wigner
/// representation, for every `|ind W| = d` with `m + 1 + d ≤ 12`.
pub fn remark4(params: &SuiteParams) -> Vec<CheckRecord> {
    let suite = Suite::Remark4;
    let mut out = Vec::new();
    for &m in params.dims.iter().filter(|m| **m < MATRIX_DIM_CAP) {
        let new = |name, tol| Check::new(suite, name, m, params, tol);
        let mut index = new("index bookkeeping ind WV = ind W - 1", 0.0);
        let mut symbolic = new("intertwining symbolic", 1e-10);
        let mut matrix = new("intertwining matrix", 1e-9);
        let mut unitary = new("intertwiner unitary", 1e-10);
        for d in 0..=(MATRIX_DIM_CAP - m - 1) {
            for trial in 0..params.trials {
                let t = derive(
                    params.seed,
                    &[suite as u64, m as u64, d as u64, trial as u64],
                );
                let setup = || -> CoreResult<_> {
                    let v = trial_isometry(m, trial, split(t, 0))?;
                    let w = if trial == 0 && d == 0 {
                        Isometry::identity(m + 1)?
                    } else {
                        Isometry::random(m + 1, m + 1 + d, split(t, 1))?
                    };
                    let sample = AlgElement::random(space(m), m.min(3), split(t, 2))?;
                    Ok((v, w, sample))
                };
                let Ok((v, w, sample)) = setup() else {
                    index.ok = false;
                    continue;
                };
                index.measure(|| {
                    Ok(w.compose(&v)?.index() == w.index() - 1 && w.index() == -(d as i64))
                });
                symbolic.measure(|| {
                    let r = intertwining_check(&w, &v, std::slice::from_ref(&sample))?;
                    Ok(Observation {
                        ok: r.index_additive,
                        error: r.max_error,
                    })
                });
                let mut unitarity = None;
                matrix.measure(|| {
                    let r = matrix_intertwining_check(&w, &v)?;
                    unitarity = Some(r.unitarity_error);
                    Ok(Observation {
                        ok: r.index_additive,
                        error: r.max_error,
                    })
                });
                unitary
                    .measure(|| Ok(unitarity.map_or(Observation::from(false), Observation::from)));
            }
        }
        out.extend([index, symbolic, matrix, unitary].map(Check::finish));
    }
    out
}

/// Symbolic product, adjoint and trace against the Jordan–Wigner matrices,
/// and operator-norm isometry of σ_V.
pub fn oracle(params: &SuiteParams) -> Vec<CheckRecord> {
    let suite = Suite::Oracle;
    let mut out = Vec::new();
    for &m in params.dims.iter().filter(|m| **m <= MATRIX_DIM_CAP) {
        let new = |name, tol| Check::new(suite, name, m, params, tol);
        let mut product = new("matrix product", 1e-10);
        let mut adjoint = new("matrix adjoint", 1e-10);
        let mut trace = new("matrix trace", 1e-10);
        let mut norm = (m < MATRIX_DIM_CAP).then(|| new("sigma norm isometric", 1e-9));
        let s = space(m);
        for trial in 0..params.trials {
            let t = trial_seed(params, suite, m, trial);
            let pair = AlgElement::random(s, m, split(t, 0))
                .and_then(|a| Ok((a, AlgElement::random(s, m, split(t, 1))?)));
            let Ok((a, b)) = pair else {
                product.ok = false;
                continue;
            };
            product.measure(|| {
                let lhs = represent(&(&a * &b))?.into_matrix();
                Ok(max_entry(
                    &(lhs - represent(&a)?.matrix() * represent(&b)?.matrix()),
                ))
            });
            adjoint.measure(|| {
                Ok(max_entry(
                    &(represent(&a.adjoint())?.into_matrix() - represent(&a)?.matrix().adjoint()),
                ))
            });
            trace.measure(|| Ok((represent(&a)?.normalized_trace() - a.trace()).norm()));
            if let Some(norm) = norm.as_mut() {
                norm.measure(|| {
                    let v = trial_isometry(m, trial, split(t, 2))?;
                    let sigma = EvenIsomorphism::new(&v)?;
                    Ok((operator_norm(&sigma.apply(&a)?)? - operator_norm(&a)?).abs())
                });
            }
        }
        let mut checks = vec![product, adjoint, trace];
        checks.extend(norm);
        out.extend(checks.into_iter().map(Check::finish));
    }
    out
}

pub fn run_one(suite: Suite, params: &SuiteParams) -> Vec<CheckRecord> {
    match suite {
        Suite::Proposition => proposition(params),
        Suite::Remark1 => remark1(params),
        Suite::Remark2 => remark2(params),
        Suite::Remark3 => remark3(params),
        Suite::Remark4 => remark4(params),
        Suite::Oracle => oracle(params),
    }
}

/// Runs the configured suites over `m = 1..=dim_in` (even `m ≥ 2` for remark2).
/// The configuration must already be valid.
pub fn run_suite(cfg: &SuiteConfig) -> Report {
    let mut checks = Vec::new();
    for &suite in &cfg.suites {
        let dims = match suite {
            Suite::Remark2 => (2..=cfg.dim_in.max(2)).step_by(2).collect(),
            _ => (1..=cfg.dim_in).collect(),
        };
        let params = SuiteParams {
            dims,
            trials: cfg.trials,
            seed: cfg.seed,
            tol: cfg.tol,
        };
        checks.extend(run_one(suite, &params));
    }
    Report::new(checks)
}
