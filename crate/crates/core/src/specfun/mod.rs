//! Special functions used by the lattice sums and boundary operators.

mod bessel;
mod expint;
mod faddeeva;
mod polylog;

pub use bessel::{bessel_j0, bessel_j1, bessel_y0, hankel1_0};
pub use expint::{expint_en, expint_table};
pub use faddeeva::{erf, erfc_complex, exp_erfc, faddeeva};
pub use polylog::dilog_exp;
