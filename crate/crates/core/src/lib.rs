//! Hopfological homology for finite-dimensional comodules over k[ℤʳ]#B.
//!
//! The crate computes the homology functors H_n, the stable category
//! (suspension, cones, stable Hom), and K₀ of the stable category for
//! comodules over smash products of a free abelian group algebra with a
//! quantum linear space. All arithmetic is exact over cyclotomic fields.

pub mod comodule;
pub mod error;
pub mod homology;
pub mod homrep;
pub mod hopf;
pub mod io;
pub mod ktheory;
pub mod linalg;
pub mod random;
pub mod scalars;
pub mod stable;
pub mod suites;

pub use error::{Error, Result};
pub use hopf::{HopfAlgebra, HopfDatum};
pub use scalars::CycScalar;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Sparse vector over the cyclotomic field of a datum.
pub type Vector = linalg::SparseVec<CycScalar>;
/// Sparse matrix over the cyclotomic field of a datum.
pub type Matrix = linalg::SparseMatrix<CycScalar>;
