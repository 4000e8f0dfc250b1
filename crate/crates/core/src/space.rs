//! Conjugation spaces and conjugation-commuting isometries.
//!
//! A [`ConjSpace`] of dimension `m` is `ℂ^m` with the orthonormal basis
//! `e_1..e_m` fixed by the conjugation, so conjugating a vector conjugates
//! its coordinates. An isometry commutes with this conjugation exactly when
//! its matrix in these bases is real, which is how [`Isometry`] stores it.
//!
//! Inner products are conjugate-linear in the first argument.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result, NUMERICAL_TOL, STRUCTURAL_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConjSpace {
    dim: usize,
}

impl ConjSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        Ok(Self { dim })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check_same(&self, other: &ConjSpace) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

/// A vector of a [`ConjSpace`], stored by its coordinates in the self-conjugate basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector {
    space: ConjSpace,
    coords: Vec<Complex64>,
}

impl Vector {
    pub fn new(space: ConjSpace, coords: Vec<Complex64>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::DimensionMismatch {
                expected: space.dim(),
                found: coords.len(),
            });
        }
        Ok(Self { space, coords })
    }

    pub fn from_real(space: ConjSpace, coords: &[f64]) -> Result<Self> {
        Self::new(
            space,
            coords.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        )
    }

    pub fn zero(space: ConjSpace) -> Self {
        Self {
            space,
            coords: vec![Complex64::ZERO; space.dim()],
        }
    }

    /// The self-conjugate basis vector `e_{j+1}` (zero-based `j`).
    pub fn basis(space: ConjSpace, j: usize) -> Result<Self> {
        if j >= space.dim() {
            return Err(Error::GeneratorOutOfRange {
                index: j,
                dim: space.dim(),
            });
        }
        let mut v = Self::zero(space);
        v.coords[j] = Complex64::ONE;
        Ok(v)
    }

    pub fn space(&self) -> ConjSpace {
        self.space
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.coords
    }

    pub fn conjugate(&self) -> Self {
        Self {
            space: self.space,
            coords: self.coords.iter().map(|c| c.conj()).collect(),
        }
    }

    /// `⟨self, other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Vector) -> Result<Complex64> {
        self.space.check_same(&other.space)?;
        Ok(self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            space: self.space,
            coords: self.coords.iter().map(|c| c * factor).collect(),
        }
    }

    pub fn add(&self, other: &Vector) -> Result<Self> {
        self.space.check_same(&other.space)?;
        Ok(Self {
            space: self.space,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// True if every coordinate is real, i.e. the vector is fixed by conjugation.
    pub fn is_self_conjugate(&self, tol: f64) -> bool {
        self.coords.iter().all(|c| c.im.abs() <= tol)
    }
}

/// A linear isometry `V: K_in → K_out` commuting with conjugation.
#[derive(Debug, Clone, PartialEq)]
pub struct Isometry {
    domain: ConjSpace,
    codomain: ConjSpace,
    matrix: DMatrix<f64>,
}

impl Isometry {
    /// Wraps a real matrix of shape `codomain × domain`; its columns must be
    /// orthonormal within [`STRUCTURAL_TOL`].
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        let (rows, cols) = matrix.shape();
        if cols == 0 || rows < cols {
            return Err(Error::Shape {
                domain: cols,
                codomain: rows,
            });
        }
        let gram = matrix.transpose() * &matrix;
        let deviation = (gram - DMatrix::<f64>::identity(cols, cols)).amax();
        if deviation > STRUCTURAL_TOL {
            return Err(Error::NotIsometric(deviation));
        }
        Ok(Self {
            domain: ConjSpace::new(cols)?,
            codomain: ConjSpace::new(rows)?,
            matrix,
        })
    }

    /// Accepts a complex matrix only if it is real; nothing is projected away.
    pub fn from_complex(matrix: &DMatrix<Complex64>) -> Result<Self> {
        let worst = matrix.iter().map(|c| c.im.abs()).fold(0.0, f64::max);
        if worst > 0.0 {
            return Err(Error::NotConjugationCommuting(worst));
        }
        Self::new(matrix.map(|c| c.re))
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::new(DMatrix::identity(m, m))
    }

    /// `−1` on `K_m`; its Bogoliubov automorphism is the grading.
    pub fn minus_identity(m: usize) -> Result<Self> {
        Self::new(-DMatrix::<f64>::identity(m, m))
    }

    /// `e_j ↦ e_{j+1}` from `K_m` into `K_{m+1}`; index −1 with cokernel `span(e_1)`.
    pub fn shift(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroDimension);
        }
        let matrix = DMatrix::from_fn(m + 1, m, |i, j| if i == j + 1 { 1.0 } else { 0.0 });
        Self::new(matrix)
    }

    /// Seeded random isometry `K_{m_in} → K_{m_out}`: a standard Gaussian
    /// matrix orthonormalized by QR, with signs fixed so that the triangular
    /// factor has a positive diagonal.
    pub fn random(m_in: usize, m_out: usize, seed: u64) -> Result<Self> {
        if m_in == 0 {
            return Err(Error::ZeroDimension);
        }
        if m_in > m_out {
            return Err(Error::Shape {
                domain: m_in,
                codomain: m_out,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // column-major fill keeps the draw order independent of nalgebra internals
        let mut gaussian = DMatrix::<f64>::zeros(m_out, m_in);
        for j in 0..m_in {
            for i in 0..m_out {
                gaussian[(i, j)] = StandardNormal.sample(&mut rng);
            }
        }
        let qr = gaussian.qr();
        let r = qr.r();
        let mut q = qr.q();
        for j in 0..m_in {
            if r[(j, j)] < 0.0 {
                q.column_mut(j).neg_mut();
            }
        }
        Self::new(q)
    }

    pub fn domain(&self) -> ConjSpace {
        self.domain
    }

    pub fn codomain(&self) -> ConjSpace {
        self.codomain
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Fredholm index `−dim ker V*`, which for an isometry between finite
    /// spaces is `dim K_in − dim K_out`.
    pub fn index(&self) -> i64 {
        self.domain.dim() as i64 - self.codomain.dim() as i64
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &Isometry) -> Result<Self> {
        inner.codomain.check_same(&self.domain)?;
        Self::new(&self.matrix * &inner.matrix)
    }

    pub fn apply(&self, k: &Vector) -> Result<Vector> {
        self.domain.check_same(&k.space())?;
        Ok(Vector {
            space: self.codomain,
            coords: real_times(&self.matrix, k.coords()),
        })
    }

    /// `V* k`.
    pub fn adjoint_apply(&self, k: &Vector) -> Result<Vector> {
        self.codomain.check_same(&k.space())?;
        Ok(Vector {
            space: self.domain,
            coords: real_times(&self.matrix.transpose(), k.coords()),
        })
    }

    /// `V e_{j+1}` as a real vector of the codomain.
    pub fn column(&self, j: usize) -> Vector {
        let coords = self
            .matrix
            .column(j)
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        Vector {
            space: self.codomain,
            coords,
        }
    }

    /// The self-conjugate unit vector spanning `ker V*` for an index −1
    /// isometry, signed so that its first non-negligible coordinate is positive.
    pub fn kernel_selfconjugate_unit(&self) -> Result<Vector> {
        let e = self.kernel_real_unit()?;
        Ok(Vector {
            space: self.codomain,
            coords: e.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        })
    }

    pub(crate) fn kernel_real_unit(&self) -> Result<DVector<f64>> {
        if self.index() != -1 {
            return Err(Error::IndexMismatch {
                expected: -1,
                found: self.index(),
            });
        }
        let n = self.codomain.dim();
        let project = |x: &DVector<f64>| x - &self.matrix * (self.matrix.transpose() * x);
        // the basis vector with the largest residual gives the best-conditioned start
        let mut best = DVector::zeros(n);
        let mut best_norm = -1.0;
        for i in 0..n {
            let residual = project(&DVector::from_fn(n, |r, _| if r == i { 1.0 } else { 0.0 }));
            let norm = residual.norm();
            if norm > best_norm {
                best_norm = norm;
                best = residual;
            }
        }
        let mut e = best / best_norm;
        e = project(&e);
        e /= e.norm();
        if let Some(first) = e.iter().find(|x| x.abs() > NUMERICAL_TOL) {
            if *first < 0.0 {
                e.neg_mut();
            }
        }
        Ok(e)
    }
}

fn real_times(matrix: &DMatrix<f64>, coords: &[Complex64]) -> Vec<Complex64> {
    (0..matrix.nrows())
        .map(|i| {
            coords
                .iter()
                .enumerate()
                .map(|(j, c)| c * matrix[(i, j)])
                .sum()
        })
        .collect()
}

/// `f_a = (e_{2a−1} + i e_{2a}) / √2` for `a = 1..m/2`, an orthonormal basis
/// of a polarization `H` with `K = H ⊕ H*`.
pub fn polarization_basis(m: usize) -> Result<Vec<Vector>> {
    let space = ConjSpace::new(m)?;
    if m % 2 == 1 {
        return Err(Error::OddDimension(m));
    }
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok((0..m / 2)
        .map(|a| {
            let mut f = Vector::zero(space);
            f.coords[2 * a] = Complex64::new(s, 0.0);
            f.coords[2 * a + 1] = Complex64::new(0.0, s);
            f
        })
        .collect())
}
