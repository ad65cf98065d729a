//! Special functions and closed-form solutions for generalized fractional
//! kinetic equations driven by the generalized modified k-Bessel function,
//! together with the brute-force machinery (Riemann–Liouville product
//! integration, a Volterra solver, numerical Laplace transforms) used to
//! check them.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel_family;
pub mod curve;
pub mod error;
pub mod fracops;
pub mod kinetic;
pub mod kspecial;
pub mod mittag_leffler;
pub mod oracle;
pub mod series;
pub mod summation;

pub use error::{Error, Result};
pub use series::{Diagnostics, EvalResult, SeriesControl, Status};
