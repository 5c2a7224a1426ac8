//! Multivariate polynomials over `Q`: monomial orders, Buchberger's
//! algorithm, normal forms, saturation, homogenization and the dimension and
//! degree of zero-dimensional ideals.

mod groebner;
mod ideal;
mod monomial;
mod poly;
mod zpoly;

pub use groebner::{
    buchberger, interreduce, leading_monomials, normal_form, reduce_basis, reduced_groebner_basis,
    s_polynomial, GroebnerBasis,
};
pub use ideal::{
    all_in, combinatorial_dimension, count_standard_monomials, exact_division, unit_ideal, Ideal,
};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Poly, PolyRing};
