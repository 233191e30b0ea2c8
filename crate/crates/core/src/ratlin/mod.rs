//! Exact rational linear algebra: matrices, canonical subspaces, quotients
//! and signatures of symmetric forms.

pub mod form;
pub mod matrix;
pub mod rat;
pub mod subspace;

pub use form::{gram, signature, Signature};
pub use matrix::RatMatrix;
pub use rat::{format_rat, parse_rat, rat, ratio, Rat};
pub use subspace::{contains, image, intersect, kernel, quotient_map, subspace_sum, Subspace};
