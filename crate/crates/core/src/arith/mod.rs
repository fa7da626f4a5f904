//! Exact arithmetic substrate: rationals, matrices, Laurent polynomials and
//! Smith normal form. Everything downstream routes its linear algebra
//! through this module.

pub mod laurent;
pub mod matrix;
pub mod rational;
pub mod snf;

pub use laurent::{laurent_reduce, LaurentPoly};
pub use matrix::{integer_entries, rank_inverse_solve, Matrix, SolveReport};
pub use rational::Rat;
pub use snf::{smith_normal_form, Snf};
