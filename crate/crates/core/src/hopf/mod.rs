//! The smash product H = k[ℤʳ]#B of a group algebra with a quantum linear
//! space, as a normal-form rewriting system.

mod algebra;
mod axioms;
mod datum;
mod element;
mod integral;

pub use algebra::HopfAlgebra;
pub use axioms::{check_hopf_axioms, AxiomCheck};
pub use datum::{DatumReport, Generator, HopfDatum, Orientation};
pub use element::{format_tensor, Combination, HElement, HMonomial, HTensor3Element, HTensorElement};
pub use integral::{
    left_identity_holds, left_integral, left_integral_image, quantum_determinant, right_identity_holds,
    right_integral_image, IntegralFunctional,
};
