// The quadrature node tables keep their published digits, and comparisons are
// written in negated form where they must also reject NaN.
#![allow(clippy::excessive_precision)]
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::manual_is_multiple_of)]

//! Numerical machinery for spectral summation formulas on the modular surface:
//! complex special functions, Bessel-kernel integral transforms and their Mellin
//! closed forms, exact Kloosterman/Ramanujan identities, dyadic and short-interval
//! test-function triples, and the dual-moment transforms built from them.
//!
//! The crate is organised so that every closed form has an independent numeric
//! route next to it (direct quadrature, brute-force summation, or a second
//! integral representation), and the verification suites in [`cli`] drive both
//! routes against each other.

pub mod arith;
pub mod besselkern;
pub mod cli;
pub mod complexfn;
pub mod error;
pub mod mellin;
pub mod oscillatory;
pub mod quad;
pub mod reciprocity;
pub mod transforms;

pub use error::{Error, Result};
pub use num_complex::Complex64;
