//! Laurent polynomials and K₀ of the stable category.

mod k0;
mod laurent;

pub use k0::{
    ideal_generator, integer_class, k0_class, k0_equal, k0_presentation, reduce_rank1, K0Class, K0Presentation,
};
pub use laurent::{divides, format_power, reduce_univariate, variable_name, IntLaurent, LaurentPoly};
