//! Exact sparse linear algebra, generic over the scalar field.

mod echelon;
mod field;
mod sparse;

pub use echelon::{kernel_from_equations, solve_affine, Echelon};
pub use field::{Field, Ring};
pub use sparse::{SparseMatrix, SparseVec};
