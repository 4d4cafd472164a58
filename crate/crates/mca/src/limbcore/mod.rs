//! Canonical representation of arbitrary-precision naturals and signed
//! integers, plus the schoolbook baseline operations.
//!
//! Everything here is quadratic or better and deliberately simple: the fast
//! algorithms in the other modules are all verified against these routines.

mod convert;
mod integer;
mod natural;

pub use integer::{Integer, Sign};
pub use natural::Natural;

/// Number of bits in one limb.
pub const WORD_BITS: u32 = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("natural subtraction underflow")]
    Underflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid digit {0:?} for base {1}")]
    InvalidDigit(char, u32),
    #[error("invalid base {0}, expected 2..=36")]
    InvalidBase(u32),
}
