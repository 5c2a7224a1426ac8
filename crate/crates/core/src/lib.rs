//! Exact computation of the loci of period matrices on which triples of
//! integral Néron-Severi classes of a complex torus stay of type (1,1).
//!
//! The crate is layered bottom-up:
//!
//! * [`exactmath`]: rationals, quadratic fields, exact linear algebra.
//! * [`polyring`]: multivariate polynomials over `Q`, Gröbner bases,
//!   saturation, homogenization, dimension and degree.
//! * [`torus`]: Néron-Severi classes, period matrices, the Riemann relation,
//!   Picard rank and polarizations.
//! * [`nslocus`]: the locus pipeline for class triples.

pub mod error;
pub mod exactmath;
pub mod nslocus;
pub mod polyring;
pub mod torus;

pub use error::{Error, Result};
