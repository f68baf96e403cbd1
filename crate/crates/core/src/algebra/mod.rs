//! Exact scalars, supermatrices and the linear algebra underneath everything else.

pub mod gaussian;
pub mod linalg;
pub mod matrix;

pub use gaussian::{fmt_rational, int, parse_rational, rat, GaussianRational, Rational};
pub use matrix::{ad_in_unit_basis, ad_matrix, bracket, Parity, SuperDims, SuperMatrix};
