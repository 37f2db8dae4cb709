//! Finite-dimensional graded comodules and colinear maps.

pub mod constructors;
mod model;
pub mod ops;

pub use constructors::{
    b_lower, from_complex, from_mixed, from_n_complex, projective_p, read_differential, regular_b,
    restrict_to_coordinates, semisimple, simple, unit, GradedComplex, MixedComplex,
};
pub use model::{is_colinear, ComodMap, Comodule, ValidationReport};
pub use ops::{
    character, cokernel, direct_sum, direct_sum_maps, hom_dim, hom_space, image, kernel, rank, tensor,
    tensor_maps, HomSystem, Subcomodule,
};
