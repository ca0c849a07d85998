//! Exact and numerical evaluation of Galerkin matrix elements for
//! logarithmic and power-law kernels in the shifted Legendre basis.

pub mod comb5;
pub mod error;
pub mod exactnum;
pub mod gegenbauer;
pub mod hyper;
pub mod matelem;
pub mod oracle;
pub mod par;
pub mod polyops;
pub mod report;
pub mod suites;

pub use error::{Error, Result};
pub use exactnum::Rational;
