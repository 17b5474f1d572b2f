//! Grassmann algebra over the coefficient ring.

mod generator;
pub mod matrep;
mod number;

pub use generator::{with_order, Generator, MAX_GENERATORS};
pub use number::{BodySoul, Parity, SuperNumber};

pub(crate) use number::bits;

use thiserror::Error;

use crate::ring::RingError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GrassmannError {
    #[error("cannot invert {value}: body is zero")]
    ZeroBody { value: String },
    #[error(transparent)]
    Ring(#[from] RingError),
}
