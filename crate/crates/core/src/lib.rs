//! Exact computations with (twisted) superpotentials on quivers.
//!
//! Everything is exact: scalars live in a cyclotomic field Q(z_N) and all
//! linear algebra is done with arbitrary-precision rationals.

pub mod cli;
pub mod complexes;
pub mod error;
pub mod exactfield;
pub mod mckay;
pub mod pathalg;
pub mod quotient;
pub mod sklyanin;

pub use error::{Error, Result};
