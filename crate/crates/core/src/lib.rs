//! Finite-dimensional selfdual CAR algebras.
//!
//! The crate models a complex Hilbert space `K` with a distinguished
//! conjugation, the CAR algebra `C(K)` generated by `K` (as sparse sums of
//! ordered Majorana monomials), the Bogoliubov endomorphisms induced by
//! conjugation-commuting isometries, and the twisted endomorphisms
//! `a ↦ u ρ_V(a) u*` that map `C(K)` onto its even subalgebra when the
//! isometry has index −1.
//!
//! Module map:
//!
//! * [`space`] – conjugation spaces, vectors and real isometries with their Fredholm index.
//! * [`algebra`] – the sparse Majorana-monomial algebra, grading, adjoint, trace.
//! * [`morphisms`] – Bogoliubov maps, the even isomorphism, left inverses and expectations.
//! * [`repr`] – Jordan–Wigner matrices used as an independent numerical oracle.

pub mod algebra;
mod error;
mod linalg;
pub mod morphisms;
pub mod repr;
pub mod space;

pub use algebra::{AlgElement, Grade, Mask};
pub use error::{Error, Result};
pub use morphisms::{EvenIsomorphism, OddUnitary, TwistUnitary};
pub use repr::{JordanWigner, MatrixRep};
pub use space::{ConjSpace, Isometry, Vector};

pub use num_complex::Complex64;

/// Tolerance for structural checks (orthonormality, unitarity, exact sign algebra).
pub const STRUCTURAL_TOL: f64 = 1e-12;

/// Tolerance for derived numerical checks that accumulate rounding error.
pub const NUMERICAL_TOL: f64 = 1e-10;
