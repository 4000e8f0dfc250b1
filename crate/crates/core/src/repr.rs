//! Jordan–Wigner matrices for `C(K)`.
//!
//! On `n` qubits, `π(c_{2a−1}) = Z^{⊗(a−1)} ⊗ X ⊗ I…` and
//! `π(c_{2a}) = Z^{⊗(a−1)} ⊗ Y ⊗ I…`. An odd number `m` of generators uses
//! `n = (m + 1)/2` qubits, which keeps the representation faithful. Qubit 1
//! is the leftmost tensor factor, i.e. the most significant bit of a basis
//! index.
//!
//! The algebra is mapped monomial by monomial through Pauli strings, which
//! never touches the Majorana sign kernel in [`crate::algebra`]; this is what
//! makes the matrices usable as an oracle for it.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::algebra::{car_annihilator, car_creator, AlgElement, Mask};
use crate::morphisms::{bogoliubov, EvenIsomorphism};
use crate::space::{polarization_basis, Isometry};
use crate::{Error, Result};

pub const DEFAULT_GENERATOR_CAP: usize = 12;
pub const HARD_GENERATOR_CAP: usize = 16;

pub fn qubits_for(m: usize) -> usize {
    m.div_ceil(2)
}

/// A dense matrix image `π(a)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixRep {
    source_dim: usize,
    qubits: usize,
    matrix: DMatrix<Complex64>,
}

impl MatrixRep {
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    /// `tr(π(a)) / 2^n`.
    pub fn normalized_trace(&self) -> Complex64 {
        self.matrix.trace() / Complex64::new(self.matrix.nrows() as f64, 0.0)
    }

    /// Largest singular value.
    pub fn operator_norm(&self) -> f64 {
        self.matrix.clone().singular_values().max()
    }
}

/// Pauli string `phase · ⊗_q X^{x_q} Z^{z_q}`, with `x`, `z` indexed by basis-index bit.
#[derive(Debug, Clone, Copy)]
struct PauliString {
    x: u64,
    z: u64,
    phase: Complex64,
}

impl PauliString {
    fn identity() -> Self {
        Self {
            x: 0,
            z: 0,
            phase: Complex64::ONE,
        }
    }

    fn generator(j: usize, qubits: usize) -> Self {
        let bit = qubits - 1 - j / 2;
        let string = ((1u64 << qubits) - 1) & !((1u64 << (bit + 1)) - 1);
        if j.is_multiple_of(2) {
            Self {
                x: 1 << bit,
                z: string,
                phase: Complex64::ONE,
            }
        } else {
            // Y = i·XZ
            Self {
                x: 1 << bit,
                z: string | (1 << bit),
                phase: Complex64::I,
            }
        }
    }

    fn then(self, rhs: Self) -> Self {
        // Z^{z1} X^{x2} = (−1)^{z1·x2} X^{x2} Z^{z1}
        let sign = if (self.z & rhs.x).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        Self {
            x: self.x ^ rhs.x,
            z: self.z ^ rhs.z,
            phase: self.phase * rhs.phase * sign,
        }
    }

    fn of_monomial(mask: Mask, qubits: usize) -> Self {
        let mut p = Self::identity();
        let mut rest = mask;
        while rest != 0 {
            p = p.then(Self::generator(rest.trailing_zeros() as usize, qubits));
            rest &= rest - 1;
        }
        p
    }
}

/// Jordan–Wigner representation with a cap on the number of generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JordanWigner {
    cap: usize,
}

impl Default for JordanWigner {
    fn default() -> Self {
        Self {
            cap: DEFAULT_GENERATOR_CAP,
        }
    }
}

impl JordanWigner {
    pub fn with_cap(cap: usize) -> Result<Self> {
        if cap > HARD_GENERATOR_CAP {
            return Err(Error::TooManyGenerators {
                dim: cap,
                cap: HARD_GENERATOR_CAP,
            });
        }
        Ok(Self { cap })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    fn check(&self, m: usize) -> Result<()> {
        if m > self.cap {
            return Err(Error::TooManyGenerators {
                dim: m,
                cap: self.cap,
            });
        }
        Ok(())
    }

    pub fn represent(&self, a: &AlgElement) -> Result<MatrixRep> {
        let m = a.dim();
        self.check(m)?;
        let qubits = qubits_for(m);
        let size = 1usize << qubits;
        let mut matrix = DMatrix::zeros(size, size);
        for (mask, coeff) in a.terms() {
            let p = PauliString::of_monomial(mask, qubits);
            let scaled = coeff * p.phase;
            for col in 0..size {
                let sign = if (p.z & col as u64).count_ones().is_multiple_of(2) {
                    1.0
                } else {
                    -1.0
                };
                matrix[(col ^ p.x as usize, col)] += scaled * sign;
            }
        }
        Ok(MatrixRep {
            source_dim: m,
            qubits,
            matrix,
        })
    }

    pub fn operator_norm(&self, a: &AlgElement) -> Result<f64> {
        Ok(self.represent(a)?.operator_norm())
    }
}

pub fn represent(a: &AlgElement) -> Result<MatrixRep> {
    JordanWigner::default().represent(a)
}

pub fn operator_norm(a: &AlgElement) -> Result<f64> {
    JordanWigner::default().operator_norm(a)
}

const PAULI_X: [[Complex64; 2]; 2] = [
    [Complex64::ZERO, Complex64::ONE],
    [Complex64::ONE, Complex64::ZERO],
];
const PAULI_Y: [[Complex64; 2]; 2] = [
    [Complex64::ZERO, Complex64::new(0.0, -1.0)],
    [Complex64::I, Complex64::ZERO],
];
const PAULI_Z: [[Complex64; 2]; 2] = [
    [Complex64::ONE, Complex64::ZERO],
    [Complex64::ZERO, Complex64::new(-1.0, 0.0)],
];

fn pauli(p: &[[Complex64; 2]; 2]) -> DMatrix<Complex64> {
    DMatrix::from_fn(2, 2, |i, j| p[i][j])
}

/// `π(c_{j+1})` on `⌈m/2⌉` qubits, built as an explicit Kronecker product.
pub fn jw_generator(j: usize, m: usize) -> Result<DMatrix<Complex64>> {
    if j >= m {
        return Err(Error::GeneratorOutOfRange { index: j, dim: m });
    }
    if m > HARD_GENERATOR_CAP {
        return Err(Error::TooManyGenerators {
            dim: m,
            cap: HARD_GENERATOR_CAP,
        });
    }
    let site = j / 2;
    let local = if j.is_multiple_of(2) {
        pauli(&PAULI_X)
    } else {
        pauli(&PAULI_Y)
    };
    let mut out = DMatrix::from_element(1, 1, Complex64::ONE);
    for q in 0..qubits_for(m) {
        let factor = match q.cmp(&site) {
            std::cmp::Ordering::Less => pauli(&PAULI_Z),
            std::cmp::Ordering::Equal => local.clone(),
            std::cmp::Ordering::Greater => DMatrix::identity(2, 2),
        };
        out = out.kronecker(&factor);
    }
    Ok(out)
}

/// The Fock vacuum for the polarization spanned by `f_a = (e_{2a−1} + i e_{2a})/√2`:
/// the range of `∏_a a(f_a) a(f_a)*`, normalized.
pub fn vacuum(m: usize) -> Result<DVector<Complex64>> {
    let basis = polarization_basis(m)?;
    let rep = JordanWigner::default();
    let size = 1usize << qubits_for(m);
    let mut projector = DMatrix::<Complex64>::identity(size, size);
    for f in &basis {
        let a = car_annihilator(f)?;
        let number_hole = &a * &car_creator(f)?;
        projector = rep.represent(&number_hole)?.into_matrix() * projector;
    }
    let (best, _) = projector
        .column_iter()
        .enumerate()
        .map(|(i, col)| (i, col.norm()))
        .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let omega = projector.column(best).into_owned();
    let norm = omega.norm();
    Ok(omega.unscale(norm))
}

/// Errors of the matrix form of the intertwining identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatrixIntertwining {
    /// `max_j ‖π(ρ_W σ_V(c_j)) − M π(ρ_{WV}(c_j)) M†‖` (largest entry).
    pub max_error: f64,
    /// `‖M M† − I‖` (largest entry) for `M = π(ρ_W(u_V))`.
    pub unitarity_error: f64,
    pub index_additive: bool,
}

impl MatrixIntertwining {
    pub fn holds(&self, tol: f64) -> bool {
        self.index_additive && self.max_error <= tol && self.unitarity_error <= tol
    }
}

/// Matrix form of `π∘ρ_W∘σ_V ≃ π∘ρ_{WV}` with the explicit intertwiner `π(ρ_W(u_V))`.
pub fn matrix_intertwining_check(w: &Isometry, v: &Isometry) -> Result<MatrixIntertwining> {
    let rep = JordanWigner::default();
    rep.check(w.codomain().dim())?;
    let sigma = EvenIsomorphism::new(v)?;
    let wv = w.compose(v)?;
    let m = rep
        .represent(&bogoliubov(w, sigma.twist_unitary().element())?)?
        .into_matrix();
    let m_adj = m.adjoint();
    let size = m.nrows();
    let unitarity_error = (&m * &m_adj - DMatrix::<Complex64>::identity(size, size))
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let domain = v.domain();
    let mut max_error: f64 = 0.0;
    for j in 0..domain.dim() {
        let c = AlgElement::generator(domain, j)?;
        let lhs = rep
            .represent(&bogoliubov(w, &sigma.apply(&c)?)?)?
            .into_matrix();
        let rhs = &m * rep.represent(&bogoliubov(&wv, &c)?)?.matrix() * &m_adj;
        let err = (lhs - rhs).iter().map(|c| c.norm()).fold(0.0, f64::max);
        max_error = max_error.max(err);
    }
    Ok(MatrixIntertwining {
        max_error,
        unitarity_error,
        index_additive: wv.index() == w.index() - 1,
    })
}
