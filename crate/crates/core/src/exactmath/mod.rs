//! Exact arithmetic: rationals, quadratic fields `Q(θ)` with `θ² = m`, and
//! dense linear algebra over them. No floating point anywhere.

mod matrix;
mod quad;
mod rational;

pub use matrix::{determinant, rref, solve, FieldElement, MatQ, Matrix, Rref};
pub use quad::{check_generator, qsign, QuadExt};
pub use rational::{
    format_rational, int, is_rational_square, parse_rational, rat, rational_sqrt, serde_rational,
    serde_rational_rows, sign, Rational,
};
