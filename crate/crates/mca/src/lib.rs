//! Arbitrary-precision arithmetic: integers with subquadratic and NTT-based
//! multiplication, fast division and GCDs, modular arithmetic, correctly
//! rounded binary floating point, and elementary functions with a rounding
//! retry loop.
//!
//! Every fast algorithm is checked against a slow, obviously-correct
//! baseline; see the tests in each module and the `acceptance` suite.

pub mod cli;
pub mod divgcd;
pub mod elemfun;
pub mod fastmul;
pub mod limbcore;
pub mod modring;
pub mod mpfloat;
pub mod rational;
