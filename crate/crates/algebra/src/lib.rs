//! Exact arithmetic for symbolic normal-form computations.
//!
//! The scalar field is `Q(i)(x1, ..., xn)`: rational functions in a fixed list of
//! symbols with Gaussian-rational coefficients. Values are immutable and every
//! operation returns a canonical representative, so equality is structural.

mod error;
mod gauss;
mod gcd;
mod matrix;
mod parse;
mod poly;
mod rat;
mod ratfn;
mod symbols;

pub use error::AlgebraError;
pub use gauss::GaussRat;
pub use gcd::poly_gcd;
pub use matrix::{rf_rank, rf_solve, RFMatrix, Rref};
pub use parse::parse_ratfn;
pub use poly::{Exps, Mono, Poly};
pub use rat::{parse_bigrat, BigRat};
pub use ratfn::{ratfn_canonicalize, RatFn};
pub use symbols::{SymbolKind, SymbolTable};
