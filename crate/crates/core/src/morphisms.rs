//! Bogoliubov endomorphisms and the isomorphism onto the even subalgebra.
//!
//! A conjugation-commuting isometry `V: K_in → K_out` induces the unital
//! *-homomorphism `ρ_V: C(K_in) → C(K_out)` with `B(k) ↦ B(Vk)`. When
//! `ind V = −1` the cokernel is spanned by a self-conjugate unit vector `e`,
//! `k_V = B(i√2·e)` is a skew-adjoint unitary, `u_V = (1 + k_V)/√2` is
//! unitary, and `σ_V = Ad(u_V) ∘ ρ_V` maps `C(K_in)` isomorphically onto the
//! even part of `C(K_out)`.
//!
//! Left inverses and the decomposition `a = a₀ + k_V a₁ + b₁` are computed in
//! a rotated frame where `e` is the first basis vector and `V e_j = e_{j+1}`;
//! there the kernel direction is the generator `c_1` and everything reduces
//! to [`AlgElement::split_off_generator`].

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::AlgElement;
use crate::linalg;
use crate::space::{Isometry, Vector};
use crate::{Error, Result, STRUCTURAL_TOL};

/// `ρ_V(a)`.
pub fn bogoliubov(v: &Isometry, a: &AlgElement) -> Result<AlgElement> {
    if a.space() != v.domain() {
        return Err(Error::DimensionMismatch {
            expected: v.domain().dim(),
            found: a.dim(),
        });
    }
    a.substitute_generators(v.matrix(), v.codomain())
}

/// The skew-adjoint unitary `k_V = B(i√2·e)` in the codomain algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct OddUnitary {
    vector: Vector,
    element: AlgElement,
}

impl OddUnitary {
    fn from_kernel(e: &Vector) -> Self {
        let vector = e.scale(Complex64::new(0.0, std::f64::consts::SQRT_2));
        let element = AlgElement::b_of(&vector);
        Self { vector, element }
    }

    /// `i√2·e` as a vector of `ker V*`.
    pub fn vector(&self) -> &Vector {
        &self.vector
    }

    pub fn element(&self) -> &AlgElement {
        &self.element
    }

    /// `−k_V`, the other admissible choice.
    pub fn flipped(&self) -> Self {
        Self {
            vector: self.vector.scale(-Complex64::ONE),
            element: -&self.element,
        }
    }
}

/// `u_V = (1 + k_V)/√2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwistUnitary {
    element: AlgElement,
}

impl TwistUnitary {
    pub fn from_odd(k: &OddUnitary) -> Self {
        let one = AlgElement::one(k.element.space());
        let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        let element = (&one + &k.element).scale(h);
        Self { element }
    }

    pub fn element(&self) -> &AlgElement {
        &self.element
    }
}

pub fn odd_unitary(v: &Isometry) -> Result<OddUnitary> {
    Ok(OddUnitary::from_kernel(&v.kernel_selfconjugate_unit()?))
}

pub fn twist_unitary(v: &Isometry) -> Result<TwistUnitary> {
    Ok(TwistUnitary::from_odd(&odd_unitary(v)?))
}

/// The pieces of `a = a₀ + k_V·a₁ + b₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    /// `a₀ ∈ C(ran V)₀`.
    pub even: AlgElement,
    /// `a₁ ∈ C(ran V)₁`.
    pub kernel_odd: AlgElement,
    /// `b₁ ∈ C(K)₁`.
    pub odd_rest: AlgElement,
}

impl Decomposition {
    pub fn reassemble(&self, k: &OddUnitary) -> AlgElement {
        &(&self.even + &(k.element() * &self.kernel_odd)) + &self.odd_rest
    }
}

/// `σ_V` together with everything derived from `V`.
#[derive(Debug, Clone)]
pub struct EvenIsomorphism {
    isometry: Isometry,
    kernel: DVector<f64>,
    odd: OddUnitary,
    twist: TwistUnitary,
    twist_adjoint: AlgElement,
    // rows: e, then the columns of V
    rotation: DMatrix<f64>,
    rotation_back: DMatrix<f64>,
}

impl EvenIsomorphism {
    /// Fails unless `ind V = −1`.
    pub fn new(v: &Isometry) -> Result<Self> {
        let e = v.kernel_real_unit()?;
        Ok(Self::with_kernel(v, e))
    }

    fn with_kernel(v: &Isometry, e: DVector<f64>) -> Self {
        let n = v.codomain().dim();
        let mut rotation = DMatrix::zeros(n, n);
        rotation.row_mut(0).copy_from(&e.transpose());
        rotation
            .rows_mut(1, n - 1)
            .copy_from(&v.matrix().transpose());
        let rotation_back = rotation.transpose();
        let kernel_vec = Vector::from_real(v.codomain(), e.as_slice())
            .expect("kernel vector lives in the codomain");
        let odd = OddUnitary::from_kernel(&kernel_vec);
        let twist = TwistUnitary::from_odd(&odd);
        let twist_adjoint = twist.element.adjoint();
        Self {
            isometry: v.clone(),
            kernel: e,
            odd,
            twist,
            twist_adjoint,
            rotation,
            rotation_back,
        }
    }

    /// The same construction with `k_V` replaced by `−k_V`.
    pub fn flipped(&self) -> Self {
        Self::with_kernel(&self.isometry, -&self.kernel)
    }

    pub fn isometry(&self) -> &Isometry {
        &self.isometry
    }

    pub fn odd_unitary(&self) -> &OddUnitary {
        &self.odd
    }

    pub fn twist_unitary(&self) -> &TwistUnitary {
        &self.twist
    }

    /// `σ_V(a) = u_V ρ_V(a) u_V*`.
    pub fn apply(&self, a: &AlgElement) -> Result<AlgElement> {
        let moved = bogoliubov(&self.isometry, a)?;
        Ok(&(self.twist.element() * &moved) * &self.twist_adjoint)
    }

    /// `σ_V(c_S)` for every monomial of the domain, in mask order.
    pub fn basis_images(&self) -> Vec<AlgElement> {
        let domain = self.isometry.domain();
        (0..1u64 << domain.dim())
            .map(|mask| {
                let c = AlgElement::monomial(domain, mask, Complex64::ONE)
                    .expect("mask within the domain");
                self.apply(&c).expect("domain element")
            })
            .collect()
    }

    /// Rank of `{σ_V(c_S)}` in the coordinates of the even monomials of the codomain.
    pub fn image_rank(&self) -> usize {
        rank_in_even_coordinates(&self.basis_images(), self.isometry.codomain().dim())
    }

    /// True iff the images of the monomial basis are all even and span the
    /// whole even subspace, i.e. `σ_V` is onto `C(K)₀`.
    pub fn image_is_even_subalgebra(&self) -> bool {
        let images = self.basis_images();
        let even = images
            .iter()
            .all(|x| x.odd_part().trace_norm() <= STRUCTURAL_TOL);
        let n = self.isometry.codomain().dim();
        even && rank_in_even_coordinates(&images, n) == 1 << (n - 1)
    }

    fn check_codomain(&self, a: &AlgElement) -> Result<()> {
        if a.space() != self.isometry.codomain() {
            return Err(Error::DimensionMismatch {
                expected: self.isometry.codomain().dim(),
                found: a.dim(),
            });
        }
        Ok(())
    }

    /// Splits `ρ_R(a) = x + c_1·y` in the rotated frame.
    fn rotated_split(&self, a: &AlgElement) -> Result<(AlgElement, AlgElement)> {
        self.check_codomain(a)?;
        let rotated = a.substitute_generators(&self.rotation, a.space())?;
        Ok(rotated.split_off_generator(0))
    }

    /// The unique `a = a₀ + k_V a₁ + b₁` with `a_g ∈ C(ran V)_g` and `b₁` odd.
    pub fn decompose(&self, a: &AlgElement) -> Result<Decomposition> {
        let space = a.space();
        let (x, y) = self.rotated_split(a)?;
        let c1 = AlgElement::generator(space, 0)?;
        // in the rotated frame k_V = i·c_1, so c_1·y_odd = k_V·(−i·y_odd)
        let even = x.even_part();
        let kernel_odd = y.odd_part().scale(-Complex64::I);
        let odd_rest = &x.odd_part() + &(&c1 * &y.even_part());
        let back = |z: &AlgElement| z.substitute_generators(&self.rotation_back, space);
        Ok(Decomposition {
            even: back(&even)?,
            kernel_odd: back(&kernel_odd)?,
            odd_rest: back(&odd_rest)?,
        })
    }

    /// `φ_V(a) = ρ_V⁻¹(a₀ + a₁)`, a left inverse of `σ_V`.
    pub fn left_inverse(&self, a: &AlgElement) -> Result<AlgElement> {
        let (x, y) = self.rotated_split(a)?;
        let z = &x.even_part() + &y.odd_part().scale(-Complex64::I);
        // the rotated frame maps c_{j+1} back to ρ_V(c_j)
        AlgElement::from_terms(self.isometry.domain(), z.terms().map(|(m, c)| (m >> 1, c)))
    }

    /// `Φ_V(a) = φ_V(u_V a u_V*)`, a left inverse of `ρ_V`.
    pub fn bogoliubov_left_inverse(&self, a: &AlgElement) -> Result<AlgElement> {
        self.check_codomain(a)?;
        let twisted = &(self.twist.element() * a) * &self.twist_adjoint;
        self.left_inverse(&twisted)
    }

    /// `σ_V(φ_V(a))`.
    pub fn conditional_expectation(&self, a: &AlgElement) -> Result<AlgElement> {
        self.apply(&self.left_inverse(a)?)
    }
}

fn rank_in_even_coordinates(images: &[AlgElement], n: usize) -> usize {
    let even_masks: Vec<u64> = (0..1u64 << n).filter(|m| m.count_ones() % 2 == 0).collect();
    let rows = images
        .iter()
        .map(|x| even_masks.iter().map(|&m| x.coefficient(m)).collect())
        .collect();
    linalg::rank(rows, 1e-9)
}

pub fn even_isomorphism(v: &Isometry, a: &AlgElement) -> Result<AlgElement> {
    EvenIsomorphism::new(v)?.apply(a)
}

pub fn image_is_even_subalgebra(v: &Isometry) -> Result<bool> {
    Ok(EvenIsomorphism::new(v)?.image_is_even_subalgebra())
}

pub fn decompose(v: &Isometry, a: &AlgElement) -> Result<Decomposition> {
    EvenIsomorphism::new(v)?.decompose(a)
}

pub fn even_left_inverse(v: &Isometry, a: &AlgElement) -> Result<AlgElement> {
    EvenIsomorphism::new(v)?.left_inverse(a)
}

pub fn bogoliubov_left_inverse(v: &Isometry, a: &AlgElement) -> Result<AlgElement> {
    EvenIsomorphism::new(v)?.bogoliubov_left_inverse(a)
}

pub fn conditional_expectation(v: &Isometry, a: &AlgElement) -> Result<AlgElement> {
    EvenIsomorphism::new(v)?.conditional_expectation(a)
}

/// `2^{−ind/2}`, kept symbolic so that its square is an exact power of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StatisticalDimension {
    index: i64,
}

impl StatisticalDimension {
    pub fn from_index(index: i64) -> Self {
        Self { index }
    }

    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn value(&self) -> f64 {
        let exponent = -self.index;
        let whole = 2f64.powi(exponent.div_euclid(2) as i32);
        if exponent.rem_euclid(2) == 1 {
            whole * std::f64::consts::SQRT_2
        } else {
            whole
        }
    }

    /// `2^{−ind}`.
    pub fn squared(&self) -> f64 {
        2f64.powi(-self.index as i32)
    }
}

pub fn statistical_dimension(v: &Isometry) -> StatisticalDimension {
    StatisticalDimension::from_index(v.index())
}

/// `dim C(K_out) / dim ρ_V(C(K_in)) = 2^{m_out} / 2^{m_in}`.
pub fn image_dimension_ratio(v: &Isometry) -> f64 {
    2f64.powi(v.codomain().dim() as i32) / 2f64.powi(v.domain().dim() as i32)
}

/// The orthogonal `U = V′V* + e′⟨e, ·⟩` with `ρ_U ∘ σ_V = σ_{V′}`.
pub fn transport_unitary(v: &Isometry, v_prime: &Isometry) -> Result<Isometry> {
    if v.domain() != v_prime.domain() || v.codomain() != v_prime.codomain() {
        return Err(Error::DimensionMismatch {
            expected: v.codomain().dim(),
            found: v_prime.codomain().dim(),
        });
    }
    let e = v.kernel_real_unit()?;
    let e_prime = v_prime.kernel_real_unit()?;
    let u = v_prime.matrix() * v.matrix().transpose() + e_prime * e.transpose();
    Isometry::new(u)
}

/// Outcome of comparing `ρ_W ∘ σ_V` with `Ad(ρ_W(u_V)) ∘ ρ_{WV}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Intertwining {
    pub max_error: f64,
    pub index_additive: bool,
}

impl Intertwining {
    pub fn holds(&self, tol: f64) -> bool {
        self.index_additive && self.max_error <= tol
    }
}

/// Checks `ρ_W(σ_V(a)) = ρ_W(u_V) ρ_{WV}(a) ρ_W(u_V)*` on every generator
/// and on `samples`, and that `ind WV = ind W − 1`.
pub fn intertwining_check(
    w: &Isometry,
    v: &Isometry,
    samples: &[AlgElement],
) -> Result<Intertwining> {
    let sigma = EvenIsomorphism::new(v)?;
    let wv = w.compose(v)?;
    let intertwiner = bogoliubov(w, sigma.twist_unitary().element())?;
    let intertwiner_adj = intertwiner.adjoint();
    let domain = v.domain();
    let generators = (0..domain.dim()).map(|j| AlgElement::generator(domain, j));
    let mut max_error: f64 = 0.0;
    for a in generators.chain(samples.iter().cloned().map(Ok)) {
        let a = a?;
        let lhs = bogoliubov(w, &sigma.apply(&a)?)?;
        let rhs = &(&intertwiner * &bogoliubov(&wv, &a)?) * &intertwiner_adj;
        max_error = max_error.max(lhs.max_abs_diff(&rhs)?);
    }
    Ok(Intertwining {
        max_error,
        index_additive: wv.index() == w.index() - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::ConjSpace;
    use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};

    const I: Complex64 = Complex64::I;
    const ONE: Complex64 = Complex64::ONE;

    fn space(m: usize) -> ConjSpace {
        ConjSpace::new(m).unwrap()
    }

    fn mono(m: usize, mask: u64, coeff: Complex64) -> AlgElement {
        AlgElement::monomial(space(m), mask, coeff).unwrap()
    }

    fn close(a: &AlgElement, b: &AlgElement) -> bool {
        a.max_abs_diff(b).unwrap() <= 1e-12
    }

    #[test]
    fn bogoliubov_examples() {
        let v = Isometry::shift(1).unwrap();
        assert_eq!(
            bogoliubov(&v, &mono(1, 1, ONE)).unwrap(),
            mono(2, 0b10, ONE)
        );
        let minus = Isometry::minus_identity(3).unwrap();
        let a = AlgElement::random(space(3), 3, 4).unwrap();
        assert!(close(&bogoliubov(&minus, &a).unwrap(), &a.gamma()));
        assert!(bogoliubov(&v, &mono(2, 1, ONE)).is_err());
    }

    #[test]
    fn odd_and_twist_unitaries_for_shift() {
        let v = Isometry::shift(1).unwrap();
        let k = odd_unitary(&v).unwrap();
        assert!(close(k.element(), &mono(2, 0b01, I)));
        assert_eq!(k.vector().norm(), SQRT_2);
        let one = AlgElement::one(space(2));
        let anti =
            &(&k.element().adjoint() * k.element()) + &(k.element() * &k.element().adjoint());
        assert!(close(&anti, &one.scale(Complex64::new(2.0, 0.0))));
        assert!(close(&(k.element() * k.element()), &-&one));

        let u = twist_unitary(&v).unwrap();
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let expected = &mono(2, 0, h) + &mono(2, 0b01, h * I);
        assert!(close(u.element(), &expected));
        assert!(close(&(u.element() * &u.element().adjoint()), &one));
        assert!(close(&(u.element() * u.element()), k.element()));
        assert!(matches!(
            odd_unitary(&Isometry::identity(2).unwrap()),
            Err(Error::IndexMismatch { .. })
        ));
    }

    #[test]
    fn sigma_examples() {
        let v = Isometry::shift(1).unwrap();
        let s = EvenIsomorphism::new(&v).unwrap();
        assert!(close(
            &s.apply(&mono(1, 1, ONE)).unwrap(),
            &mono(2, 0b11, I)
        ));
        assert!(close(
            &s.apply(&AlgElement::one(space(1))).unwrap(),
            &AlgElement::one(space(2))
        ));
        let v = Isometry::shift(2).unwrap();
        let s = EvenIsomorphism::new(&v).unwrap();
        assert!(close(
            &s.apply(&mono(2, 0b11, ONE)).unwrap(),
            &mono(3, 0b110, ONE)
        ));
        assert!(s.apply(&mono(3, 1, ONE)).is_err());
    }

    #[test]
    fn image_examples() {
        for m in 1..=3 {
            let s = EvenIsomorphism::new(&Isometry::shift(m).unwrap()).unwrap();
            assert_eq!(s.image_rank(), 1 << m);
            assert!(s.image_is_even_subalgebra());
        }
        assert!(image_is_even_subalgebra(&Isometry::random(3, 4, 2).unwrap()).unwrap());
    }

    #[test]
    fn decompose_examples() {
        let v = Isometry::shift(1).unwrap();
        let s = EvenIsomorphism::new(&v).unwrap();
        let zero = AlgElement::zero(space(2));
        let d = s.decompose(&mono(2, 0b11, I)).unwrap();
        assert!(
            close(&d.even, &zero)
                && close(&d.kernel_odd, &mono(2, 0b10, ONE))
                && close(&d.odd_rest, &zero)
        );
        let d = s.decompose(&mono(2, 0b10, ONE)).unwrap();
        assert!(
            close(&d.even, &zero)
                && close(&d.kernel_odd, &zero)
                && close(&d.odd_rest, &mono(2, 0b10, ONE))
        );
        let d = s.decompose(&AlgElement::one(space(2))).unwrap();
        assert!(
            close(&d.even, &AlgElement::one(space(2)))
                && d.kernel_odd.is_zero()
                && d.odd_rest.is_zero()
        );
    }

    #[test]
    fn left_inverse_examples() {
        let v = Isometry::shift(1).unwrap();
        let s = EvenIsomorphism::new(&v).unwrap();
        assert!(close(
            &s.left_inverse(&mono(2, 0b11, I)).unwrap(),
            &mono(1, 1, ONE)
        ));
        assert!(s.left_inverse(&mono(2, 0b10, ONE)).unwrap().is_zero());
        assert!(close(
            &s.bogoliubov_left_inverse(&mono(2, 0b10, ONE)).unwrap(),
            &mono(1, 1, ONE)
        ));
        assert!(close(
            &s.bogoliubov_left_inverse(&AlgElement::one(space(2)))
                .unwrap(),
            &AlgElement::one(space(1))
        ));
    }

    #[test]
    fn expectation_examples() {
        let v = Isometry::shift(1).unwrap();
        let s = EvenIsomorphism::new(&v).unwrap();
        assert!(s
            .conditional_expectation(&mono(2, 0b10, ONE))
            .unwrap()
            .is_zero());
        assert!(close(
            &s.conditional_expectation(&mono(2, 0b11, I)).unwrap(),
            &mono(2, 0b11, I)
        ));
    }

    #[test]
    fn statistical_dimension_values() {
        assert_eq!(
            statistical_dimension(&Isometry::identity(3).unwrap()).value(),
            1.0
        );
        assert_eq!(
            statistical_dimension(&Isometry::shift(3).unwrap()).value(),
            SQRT_2
        );
        assert_eq!(StatisticalDimension::from_index(-2).value(), 2.0);
        assert_eq!(StatisticalDimension::from_index(-3).value(), 2.0 * SQRT_2);
        assert_eq!(StatisticalDimension::from_index(-3).squared(), 8.0);
        assert_eq!(image_dimension_ratio(&Isometry::shift(4).unwrap()), 2.0);
        assert_eq!(image_dimension_ratio(&Isometry::identity(4).unwrap()), 1.0);
        assert_eq!(
            image_dimension_ratio(&Isometry::random(2, 4, 1).unwrap()),
            4.0
        );
    }

    #[test]
    fn transport_of_shift_to_itself_is_identity() {
        let v = Isometry::shift(3).unwrap();
        let u = transport_unitary(&v, &v).unwrap();
        assert!((u.matrix() - DMatrix::identity(4, 4)).amax() <= 1e-15);
        assert_eq!(u.index(), 0);
        let other = Isometry::shift(2).unwrap();
        assert!(transport_unitary(&v, &other).is_err());
    }

    #[test]
    fn intertwining_examples() {
        let v = Isometry::shift(2).unwrap();
        let id = Isometry::identity(3).unwrap();
        assert!(intertwining_check(&id, &v, &[]).unwrap().holds(1e-12));
        let w = Isometry::shift(3).unwrap();
        let r = intertwining_check(&w, &v, &[]).unwrap();
        assert!(r.holds(1e-12), "{r:?}");
        let w = Isometry::random(3, 5, 8).unwrap();
        let r = intertwining_check(&w, &v, &[]).unwrap();
        assert!(r.index_additive && w.compose(&v).unwrap().index() == -3);
        assert!(intertwining_check(&v, &v, &[]).is_err());
    }
}
