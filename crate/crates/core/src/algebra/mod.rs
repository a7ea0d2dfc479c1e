//! Exact scalars, polynomials, matrices and subspaces.

pub mod matrix;
pub mod poly;
mod rat;
pub mod scalar;
pub mod subspace;

pub use matrix::{poly_apply, trace_of_product, Matrix};
pub use poly::{check_distinct, expand_in_poly_basis, falling_products, tau_eta_polys, Poly};
pub use scalar::{Field, Scalar};
pub use subspace::Subspace;
