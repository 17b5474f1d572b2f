//! The commutative coefficient ring: canonical rational functions in even
//! symbols over the Gaussian rationals, with `sqrt2` adjoined.

mod gaussian;
pub mod linalg;
mod poly;
mod ratfunc;
mod symbol;

pub use gaussian::GaussRat;
pub use poly::{gcd, Monomial, Poly};
pub use ratfunc::RatFunc;
pub use symbol::{Symbol, SQRT2};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at substitution in {expr}")]
    PoleAtSubstitution { expr: String },
    #[error("unbound symbol while evaluating {expr}")]
    Unbound { expr: String },
}
