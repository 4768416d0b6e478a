//! Subwavelength resonances of periodic bubble screens above a sound-soft plane.
//!
//! The crate is layered bottom-up: special functions, quasi-periodic Green's
//! functions, boundary discretization, layer-potential operators, and finally
//! the resonance and reflection analysis.

// `!(x > 0.0)` guards are written that way on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod boundary;
pub mod error;
pub mod lattice_green;
pub mod layer_ops;
pub mod resonance;
pub mod specfun;

pub use error::{Error, Result};
