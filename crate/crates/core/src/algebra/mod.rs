//! Exact arithmetic over Q: rationals, polynomials, dense matrices.
//!
//! Nothing in here touches floating point.

mod adjugate;
mod charpoly;
mod matrix;
mod multipoly;
mod rational;
mod squarefree;
mod unipoly;

pub use adjugate::{adjugate, PolyMatrix, SymPolyMatrix};
pub use charpoly::charpoly;
pub use matrix::{echelon_basis, RatMatrix};
pub use multipoly::{Monomial, MultiPoly};
pub use rational::{normalize_integral, rat, Rational};
pub use squarefree::{distinct_root_count, squarefree_decomposition, SquarefreeFactor};
pub use unipoly::UniPoly;
