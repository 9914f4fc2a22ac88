//! Exact rational linear algebra for principal minors.
//!
//! Determinants clear denominators row by row and run Bareiss elimination over
//! the integers; inverses and Schur complements use Gauss–Jordan over the
//! rationals. Nothing here touches floating point.

mod identities;
mod matrix;
mod rational;

pub use identities::{
    check_mdiamond_identity, hyperdet3, koteljanskii_check, mdiamond_sides, offdiag_minor,
};
pub use matrix::{MatrixJson, MinorVector, RationalSymMatrix};
pub use rational::{det, format_rational, int, parse_rational, ratio, sign_of, Rational};
