//! Exact q-Fibonomial arithmetic: dense big-integer polynomials, the
//! weighted path-domino tiling model, chain decompositions of `T_{m,2}` and
//! unimodality characterizations for products of q-analogs.

pub mod chains;
pub mod error;
pub mod fib;
pub mod fibonomial;
pub mod lab;
pub mod poly;
pub mod svg;
pub mod tiling;

pub use error::{Error, Result};
pub use fib::{fib, zeckendorf, FibSequence};
pub use fibonomial::{qfibonomial, FibonomialQuery};
pub use poly::Polynomial;
