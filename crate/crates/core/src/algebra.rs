//! The CAR algebra `C(K)` over a finite [`ConjSpace`].
//!
//! Elements are sparse tables from Majorana monomials to complex
//! coefficients. For `K = ℂ^m` with self-conjugate basis `e_1..e_m` the
//! Majorana generators are `c_j = √2·B(e_j)`; they are self-adjoint, square
//! to `1` and anticommute pairwise. A monomial `c_S` is the product of the
//! `c_j`, `j ∈ S`, in ascending order, and `S` is stored as a bitmask with
//! bit `j` standing for `c_{j+1}`.
//!
//! The product of two monomials is `c_S c_T = sign(S, T) c_{S △ T}`, where
//! the sign counts the transpositions needed to bring the concatenated word
//! into ascending order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::space::{polarization_basis, ConjSpace, Vector};
use crate::{Error, Result, NUMERICAL_TOL};

/// Bitmask of a Majorana monomial; bit `j` is generator `c_{j+1}`.
pub type Mask = u64;

/// Coefficients at or below this magnitude are dropped.
pub const PRUNE_TOL: f64 = 1e-14;

/// Largest number of generators a [`Mask`] can address.
pub const MAX_GENERATORS: usize = 63;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Grade {
    Even,
    Odd,
}

impl Grade {
    pub fn of_mask(mask: Mask) -> Self {
        if mask.count_ones().is_multiple_of(2) {
            Grade::Even
        } else {
            Grade::Odd
        }
    }

    pub fn value(self) -> u8 {
        match self {
            Grade::Even => 0,
            Grade::Odd => 1,
        }
    }
}

impl Add for Grade {
    type Output = Grade;

    fn add(self, rhs: Grade) -> Grade {
        if self == rhs {
            Grade::Even
        } else {
            Grade::Odd
        }
    }
}

/// Sign of `c_S c_T` relative to `c_{S △ T}`: every `t ∈ T` has to move past
/// the elements of `S` larger than it.
#[inline]
pub fn product_sign(s: Mask, t: Mask) -> f64 {
    let mut swaps = 0u32;
    let mut rest = t;
    while rest != 0 {
        let bit = rest.trailing_zeros();
        swaps += ((s >> bit) >> 1).count_ones();
        rest &= rest - 1;
    }
    if swaps & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Sign of `(c_S)* = ± c_S`, i.e. `(−1)^{k(k−1)/2}` for `k = |S|`.
#[inline]
fn reversal_sign(mask: Mask) -> f64 {
    match mask.count_ones() % 4 {
        0 | 1 => 1.0,
        _ => -1.0,
    }
}

#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "WireElement", try_from = "WireElement")]
pub struct AlgElement {
    space: ConjSpace,
    terms: BTreeMap<Mask, Complex64>,
}

impl AlgElement {
    pub fn zero(space: ConjSpace) -> Self {
        Self {
            space,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(space: ConjSpace) -> Self {
        Self::scalar(space, Complex64::ONE)
    }

    pub fn scalar(space: ConjSpace, value: Complex64) -> Self {
        Self::from_terms(space, [(0, value)]).expect("empty monomial fits any space")
    }

    /// `coeff · c_S`.
    pub fn monomial(space: ConjSpace, mask: Mask, coeff: Complex64) -> Result<Self> {
        Self::from_terms(space, [(mask, coeff)])
    }

    /// The Majorana generator `c_{j+1}` (zero-based `j`).
    pub fn generator(space: ConjSpace, j: usize) -> Result<Self> {
        if j >= space.dim() {
            return Err(Error::GeneratorOutOfRange {
                index: j,
                dim: space.dim(),
            });
        }
        Self::monomial(space, 1 << j, Complex64::ONE)
    }

    /// Builds an element from `(mask, coefficient)` pairs, summing repeats.
    pub fn from_terms(
        space: ConjSpace,
        terms: impl IntoIterator<Item = (Mask, Complex64)>,
    ) -> Result<Self> {
        if space.dim() > MAX_GENERATORS {
            return Err(Error::TooManyGenerators {
                dim: space.dim(),
                cap: MAX_GENERATORS,
            });
        }
        let limit = full_mask(space.dim());
        let mut table = BTreeMap::new();
        for (mask, coeff) in terms {
            if mask & !limit != 0 {
                return Err(Error::GeneratorOutOfRange {
                    index: (63 - mask.leading_zeros()) as usize,
                    dim: space.dim(),
                });
            }
            *table.entry(mask).or_insert(Complex64::ZERO) += coeff;
        }
        table.retain(|_, c| c.norm() > PRUNE_TOL);
        Ok(Self {
            space,
            terms: table,
        })
    }

    /// `B(k) = Σ_j k_j c_j / √2`, the image of `k ∈ K` in `C(K)`.
    pub fn b_of(k: &Vector) -> Self {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_terms(
            k.space(),
            k.coords().iter().enumerate().map(|(j, &c)| (1 << j, c * s)),
        )
        .expect("vector coordinates index valid generators")
    }

    pub fn space(&self) -> ConjSpace {
        self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, mask: Mask) -> Complex64 {
        self.terms.get(&mask).copied().unwrap_or(Complex64::ZERO)
    }

    /// Terms in ascending mask order.
    pub fn terms(&self) -> impl Iterator<Item = (Mask, Complex64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    fn check_same(&self, other: &AlgElement) -> Result<()> {
        if self.space != other.space {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    fn from_table_unchecked(space: ConjSpace, mut terms: BTreeMap<Mask, Complex64>) -> Self {
        terms.retain(|_, c| c.norm() > PRUNE_TOL);
        Self { space, terms }
    }

    pub fn try_mul(&self, other: &AlgElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.product(other))
    }

    fn product(&self, other: &AlgElement) -> Self {
        let dim = self.dim();
        let pairs = self.terms.len().saturating_mul(other.terms.len());
        let dense = dim <= 10 || (dim <= 20 && (1usize << dim) <= pairs.saturating_mul(4));
        if dense {
            let mut acc = vec![Complex64::ZERO; 1 << dim];
            let mut touched = vec![false; 1 << dim];
            for (&s, &a) in &self.terms {
                for (&t, &b) in &other.terms {
                    let idx = (s ^ t) as usize;
                    acc[idx] += a * b * product_sign(s, t);
                    touched[idx] = true;
                }
            }
            let terms = acc
                .into_iter()
                .enumerate()
                .filter(|(i, c)| touched[*i] && c.norm() > PRUNE_TOL)
                .map(|(i, c)| (i as Mask, c))
                .collect();
            Self {
                space: self.space,
                terms,
            }
        } else {
            let mut acc: HashMap<Mask, Complex64> = HashMap::with_capacity(pairs.min(1 << 16));
            for (&s, &a) in &self.terms {
                for (&t, &b) in &other.terms {
                    *acc.entry(s ^ t).or_insert(Complex64::ZERO) += a * b * product_sign(s, t);
                }
            }
            Self::from_table_unchecked(self.space, acc.into_iter().collect())
        }
    }

    pub fn try_add(&self, other: &AlgElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.sum_with(other, Complex64::ONE))
    }

    fn sum_with(&self, other: &AlgElement, factor: Complex64) -> Self {
        let mut terms = self.terms.clone();
        for (&m, &c) in &other.terms {
            *terms.entry(m).or_insert(Complex64::ZERO) += factor * c;
        }
        Self::from_table_unchecked(self.space, terms)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_table_unchecked(
            self.space,
            self.terms.iter().map(|(&m, &c)| (m, c * factor)).collect(),
        )
    }

    /// `Σ λ_i a_i` over a common space.
    pub fn linear_combine(space: ConjSpace, pairs: &[(Complex64, &AlgElement)]) -> Result<Self> {
        let mut terms = BTreeMap::new();
        for (lambda, a) in pairs {
            if a.space != space {
                return Err(Error::DimensionMismatch {
                    expected: space.dim(),
                    found: a.dim(),
                });
            }
            for (&m, &c) in &a.terms {
                *terms.entry(m).or_insert(Complex64::ZERO) += lambda * c;
            }
        }
        Ok(Self::from_table_unchecked(space, terms))
    }

    pub fn adjoint(&self) -> Self {
        Self {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(&m, &c)| (m, c.conj() * reversal_sign(m)))
                .collect(),
        }
    }

    /// The grading automorphism, `c_S ↦ (−1)^{|S|} c_S`.
    pub fn gamma(&self) -> Self {
        Self {
            space: self.space,
            terms: self
                .terms
                .iter()
                .map(|(&m, &c)| match Grade::of_mask(m) {
                    Grade::Even => (m, c),
                    Grade::Odd => (m, -c),
                })
                .collect(),
        }
    }

    pub fn grade_project(&self, grade: Grade) -> Self {
        Self {
            space: self.space,
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| Grade::of_mask(m) == grade)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    pub fn even_part(&self) -> Self {
        self.grade_project(Grade::Even)
    }

    pub fn odd_part(&self) -> Self {
        self.grade_project(Grade::Odd)
    }

    /// `Some(grade)` if every term has that grade; the zero element is even.
    pub fn pure_grade(&self) -> Option<Grade> {
        let mut grades = self.terms.keys().map(|&m| Grade::of_mask(m));
        let first = grades.next().unwrap_or(Grade::Even);
        grades.all(|g| g == first).then_some(first)
    }

    /// Normalized trace: the coefficient of the empty monomial.
    pub fn trace(&self) -> Complex64 {
        self.coefficient(0)
    }

    /// Norm of the trace inner product `τ(a* a)^{1/2}`; monomials are orthonormal for it.
    pub fn trace_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| c.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &AlgElement) -> Result<f64> {
        self.check_same(other)?;
        let mut worst: f64 = 0.0;
        for (&m, &c) in &self.terms {
            worst = worst.max((c - other.coefficient(m)).norm());
        }
        for (&m, &c) in &other.terms {
            if !self.terms.contains_key(&m) {
                worst = worst.max(c.norm());
            }
        }
        Ok(worst)
    }

    pub fn approx_eq(&self, other: &AlgElement, tol: f64) -> Result<bool> {
        Ok(self.max_abs_diff(other)? <= tol)
    }

    /// True if no term involves generator `j`.
    pub fn avoids_generator(&self, j: usize) -> bool {
        self.terms.keys().all(|m| m & (1 << j) == 0)
    }

    /// Writes `self = x + c_{j+1}·y` with neither `x` nor `y` involving `c_{j+1}`.
    pub fn split_off_generator(&self, j: usize) -> (Self, Self) {
        let bit: Mask = 1 << j;
        let below = bit - 1;
        let mut x = BTreeMap::new();
        let mut y = BTreeMap::new();
        for (&m, &c) in &self.terms {
            if m & bit == 0 {
                x.insert(m, c);
            } else {
                // moving c_j to the front passes the generators below it
                let sign = if (m & below).count_ones().is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                y.insert(m ^ bit, c * sign);
            }
        }
        (
            Self {
                space: self.space,
                terms: x,
            },
            Self {
                space: self.space,
                terms: y,
            },
        )
    }

    /// `ab + ba`.
    pub fn anticommutator(&self, other: &AlgElement) -> Result<Self> {
        self.check_same(other)?;
        Ok(self
            .product(other)
            .sum_with(&other.product(self), Complex64::ONE))
    }

    /// Seeded element with a coefficient on every monomial of degree at most `max_degree`.
    /// Real and imaginary parts are uniform on `[−1, 1)`.
    pub fn random(space: ConjSpace, max_degree: usize, seed: u64) -> Result<Self> {
        let dim = space.dim();
        if max_degree > dim {
            return Err(Error::DegreeTooLarge {
                degree: max_degree,
                dim,
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<_> = (0..=full_mask(dim))
            .filter(|m| m.count_ones() as usize <= max_degree)
            .map(|m| {
                let re = rng.random_range(-1.0..1.0);
                let im = rng.random_range(-1.0..1.0);
                (m, Complex64::new(re, im))
            })
            .collect();
        Self::from_terms(space, terms)
    }

    /// Seeded element keeping each monomial independently with probability `density`.
    pub fn random_sparse(space: ConjSpace, density: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut terms = Vec::new();
        for m in 0..=full_mask(space.dim()) {
            let keep = rng.random::<f64>() < density;
            let re = rng.random_range(-1.0..1.0);
            let im = rng.random_range(-1.0..1.0);
            if keep {
                terms.push((m, Complex64::new(re, im)));
            }
        }
        Self::from_terms(space, terms)
    }

    /// The unital homomorphism extending `c_j ↦ Σ_i M_ij c_i` for a real
    /// matrix `M` of shape `target.dim × self.dim`.
    pub fn substitute_generators(&self, matrix: &DMatrix<f64>, target: ConjSpace) -> Result<Self> {
        if matrix.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: matrix.ncols(),
            });
        }
        if matrix.nrows() != target.dim() {
            return Err(Error::DimensionMismatch {
                expected: target.dim(),
                found: matrix.nrows(),
            });
        }
        let images: Vec<AlgElement> = (0..self.dim())
            .map(|j| {
                Self::from_terms(
                    target,
                    matrix
                        .column(j)
                        .iter()
                        .enumerate()
                        .map(|(i, &x)| (1 << i, Complex64::new(x, 0.0))),
                )
            })
            .collect::<Result<_>>()?;
        let mut cache: HashMap<Mask, AlgElement> = HashMap::new();
        cache.insert(0, Self::one(target));
        let mut acc = BTreeMap::new();
        for (&m, &c) in &self.terms {
            let image = monomial_image(m, &images, &mut cache);
            for (&t, &d) in &image.terms {
                *acc.entry(t).or_insert(Complex64::ZERO) += c * d;
            }
        }
        Ok(Self::from_table_unchecked(target, acc))
    }
}

/// Image of `c_S` as the product of generator images, memoized on prefixes.
fn monomial_image<'a>(
    mask: Mask,
    images: &[AlgElement],
    cache: &'a mut HashMap<Mask, AlgElement>,
) -> &'a AlgElement {
    if !cache.contains_key(&mask) {
        let top = 63 - mask.leading_zeros() as usize;
        let prefix = mask & !(1 << top);
        let head = monomial_image(prefix, images, cache).product(&images[top]);
        cache.insert(mask, head);
    }
    &cache[&mask]
}

fn full_mask(dim: usize) -> Mask {
    if dim >= 64 {
        Mask::MAX
    } else {
        (1 << dim) - 1
    }
}

/// `a(f) = B(f)` for `f` in the polarization `H = span{f_a}`.
pub fn car_annihilator(f: &Vector) -> Result<AlgElement> {
    let basis = polarization_basis(f.space().dim())?;
    let mut projection = Vector::zero(f.space());
    for fa in &basis {
        projection = projection.add(&fa.scale(fa.inner(f)?))?;
    }
    let residual = f.add(&projection.scale(-Complex64::ONE))?.norm();
    if residual > NUMERICAL_TOL {
        return Err(Error::NotInPolarization(residual));
    }
    Ok(AlgElement::b_of(f))
}

/// `a(f)*`.
pub fn car_creator(f: &Vector) -> Result<AlgElement> {
    Ok(car_annihilator(f)?.adjoint())
}

impl fmt::Debug for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgElement(dim={}; {})", self.dim(), self)
    }
}

impl fmt::Display for AlgElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({:.6}{:+.6}i)", c.re, c.im)?;
            if m == 0 {
                write!(f, "·1")?;
            }
            let mut rest = m;
            while rest != 0 {
                write!(f, "·c{}", rest.trailing_zeros() + 1)?;
                rest &= rest - 1;
            }
        }
        Ok(())
    }
}

// Operators panic on mismatched spaces; the `try_*` methods report them instead.

impl Mul<&AlgElement> for &AlgElement {
    type Output = AlgElement;

    fn mul(self, rhs: &AlgElement) -> AlgElement {
        self.try_mul(rhs)
            .expect("multiplying elements of different algebras")
    }
}

impl Add<&AlgElement> for &AlgElement {
    type Output = AlgElement;

    fn add(self, rhs: &AlgElement) -> AlgElement {
        self.try_add(rhs)
            .expect("adding elements of different algebras")
    }
}

impl Sub<&AlgElement> for &AlgElement {
    type Output = AlgElement;

    fn sub(self, rhs: &AlgElement) -> AlgElement {
        self.check_same(rhs)
            .expect("subtracting elements of different algebras");
        self.sum_with(rhs, -Complex64::ONE)
    }
}

impl Neg for &AlgElement {
    type Output = AlgElement;

    fn neg(self) -> AlgElement {
        self.scale(-Complex64::ONE)
    }
}

impl Mul<Complex64> for &AlgElement {
    type Output = AlgElement;

    fn mul(self, rhs: Complex64) -> AlgElement {
        self.scale(rhs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl $tr<AlgElement> for AlgElement {
            type Output = AlgElement;

            fn $method(self, rhs: AlgElement) -> AlgElement {
                (&self).$method(&rhs)
            }
        }

        impl $tr<&AlgElement> for AlgElement {
            type Output = AlgElement;

            fn $method(self, rhs: &AlgElement) -> AlgElement {
                (&self).$method(rhs)
            }
        }

        impl $tr<AlgElement> for &AlgElement {
            type Output = AlgElement;

            fn $method(self, rhs: AlgElement) -> AlgElement {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Mul::mul, Add::add, Sub::sub);

impl Neg for AlgElement {
    type Output = AlgElement;

    fn neg(self) -> AlgElement {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    mask: Mask,
    re: f64,
    im: f64,
}

#[derive(Serialize, Deserialize)]
struct WireElement {
    dim: usize,
    terms: Vec<WireTerm>,
}

impl From<AlgElement> for WireElement {
    fn from(a: AlgElement) -> Self {
        Self {
            dim: a.dim(),
            terms: a
                .terms
                .iter()
                .map(|(&mask, c)| WireTerm {
                    mask,
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl TryFrom<WireElement> for AlgElement {
    type Error = Error;

    fn try_from(w: WireElement) -> Result<Self> {
        AlgElement::from_terms(
            ConjSpace::new(w.dim)?,
            w.terms
                .into_iter()
                .map(|t| (t.mask, Complex64::new(t.re, t.im))),
        )
    }
}
