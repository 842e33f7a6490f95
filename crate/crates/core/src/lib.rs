//! Exact-arithmetic toolkit for the quartic equation `x⁴ - y⁴ = n·z^p` over
//! `Q` and quadratic fields: Frey curves, S-unit equations, the Legendre
//! lambda line, criterion checks and a squarefree density survey.

pub mod arith;
pub mod error;
pub mod qfield;
pub mod serde_util;
pub mod sunit;
pub mod frey;
pub mod legendre;
pub mod criteria;
pub mod density;

pub use error::{Error, Result};
