//! Exact construction and verification of Leonard systems.
//!
//! A Leonard system is described by its parameter array
//! `(theta; theta_star; varphi; phi)`. From a valid array this crate builds
//! the split-basis matrices `A` (lower bidiagonal) and `A*` (upper
//! bidiagonal), their primitive idempotents, the switching element `S` and
//! its dual `S*`, and then checks a long list of exact identities relating
//! them: polynomial representations, closed-form triangular entries, flag
//! and decomposition actions, and the eigenvalues of group commutators such
//! as `S* S^-1 S*^-1 S`.
//!
//! All arithmetic is exact, over the rationals or a prime field.
//!
//! ```
//! use leonard_core::algebra::Field;
//! use leonard_core::parameter_array::{solve_splits, Solution};
//! use leonard_core::realization::realize;
//!
//! let f = Field::Rational;
//! let theta: Vec<_> = [2, 0, -2].iter().map(|&k| f.from_i64(k)).collect();
//! let Solution::Valid(arr) = solve_splits(&theta, &theta, &f.from_i64(4)).unwrap() else {
//!     panic!("expected a valid array");
//! };
//! let real = realize(&arr).unwrap();
//! // S = (A^2 - 2I)/2 for this array.
//! let a2 = &(real.a() * real.a()) - &leonard_core::algebra::Matrix::identity(f, 3).scale(&f.from_i64(2));
//! assert_eq!(real.s(), &a2.scale(&f.ratio(1, 2).unwrap()));
//! ```

pub mod algebra;
pub mod error;
pub mod outcome;
pub mod flags;
pub mod parameter_array;
pub mod realization;
pub mod recognizer;
pub mod suite;

#[cfg(test)]
mod invariants;

pub use error::Error;
