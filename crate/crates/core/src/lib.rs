//! Exact polynomial-identity toolkit for finite-dimensional algebras over
//! the rationals.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: exact rational matrices, fraction-free elimination, kernels.
//! * [`ncpoly`]: the free algebra `Q<x1, x2, ...>`, its parser and printer.
//! * [`linearize`]: polarization and multilinearization.
//! * [`algebra`]: algebras given by structure constants.
//! * [`multalg`]: left/right multiplication operators and the multiplication algebra.
//! * [`identity`]: identity, central-polynomial and identity-space checks.
//! * [`kaplansky`]: central simplicity, the operator-identity verifier and
//!   the finite-rank witness construction.
//! * [`posner`]: ideals, central values and central quotients for integer matrix rings.

pub mod algebra;
mod enumerate;
pub mod identity;
pub mod kaplansky;
pub mod linalg;
pub mod linearize;
pub mod multalg;
pub mod ncpoly;
pub mod posner;

/// Exact rational scalar used throughout.
pub type Rational = num_rational::BigRational;
