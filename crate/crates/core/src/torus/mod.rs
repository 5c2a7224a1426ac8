//! Complex tori `C^g / (τZ^g + Z^g)` and integral alternating classes on
//! their lattices: the Riemann relation, the formal Néron-Severi rank,
//! Hermitian forms and polarization search.

mod class;
mod hermitian;
mod period;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use class::{binom2, NSClass};
pub use hermitian::{find_polarization, hermitian_form, HermitianForm, Polarization};
pub use period::{PeriodMatrix, Validity};

use crate::error::{Error, Result};
use crate::exactmath::{rref, MatQ, Matrix, QuadExt, Rational};

pub(crate) fn quad_mul(x: &Matrix<QuadExt>, y: &Matrix<QuadExt>, m: &Rational) -> Matrix<QuadExt> {
    let zero = QuadExt::rational(Rational::zero(), m);
    Matrix::from_fn(x.rows(), y.cols(), |i, j| {
        (0..x.cols()).fold(zero.clone(), |acc, k| &acc + &(&x[(i, k)] * &y[(k, j)]))
    })
}

pub(crate) fn embed(q: &MatQ, m: &Rational) -> Matrix<QuadExt> {
    q.map(|x| QuadExt::rational(x.clone(), m))
}

/// `R = A − Bτ + τᵗBᵗ + τᵗCτ`. The class is of type (1,1) at `τ` exactly
/// when `R = 0`.
pub fn riemann_residual(e: &NSClass, tau: &PeriodMatrix) -> Result<Matrix<QuadExt>> {
    if e.g() != tau.g() {
        return Err(Error::DimensionMismatch { expected: tau.g(), found: e.g() });
    }
    let m = tau.m();
    let t = tau.entries();
    let bt = quad_mul(&embed(&e.b_matrix(), m), &t, m);
    let tct = quad_mul(&quad_mul(&t.transpose(), &embed(&e.c_matrix(), m), m), &t, m);
    let a = embed(&e.a_matrix(), m);
    let g = e.g();
    let mut r = Matrix::from_fn(g, g, |_, _| QuadExt::rational(Rational::zero(), m));
    for i in 0..g {
        for j in 0..g {
            let v = a[(i, j)].try_sub(&bt[(i, j)])?;
            let v = v.try_add(&bt[(j, i)])?;
            r[(i, j)] = v.try_add(&tct[(i, j)])?;
        }
    }
    Ok(r)
}

/// Formal rank of the space of classes of type (1,1) at `τ`, with a basis of
/// primitive integral classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NsRank {
    pub rank: usize,
    pub basis: Vec<NSClass>,
}

/// Solves `riemann_residual(E, τ) = 0` for `E` as a rational linear system.
///
/// Each strictly upper residual entry contributes its two coordinates over
/// `{1, θ}`. For real `τ` this is the formal count; it is the Picard number
/// only on a valid torus.
pub fn ns_rank(tau: &PeriodMatrix) -> Result<NsRank> {
    let g = tau.g();
    let n = binom2(2 * g);
    let mut columns = Vec::with_capacity(n);
    for k in 0..n {
        let mut unit = vec![0; n];
        unit[k] = 1;
        let r = riemann_residual(&NSClass::from_coordinates(g, &unit)?, tau)?;
        let mut col = Vec::with_capacity(2 * binom2(g));
        for i in 0..g {
            for j in i + 1..g {
                col.push(r[(i, j)].a().clone());
                col.push(r[(i, j)].b().clone());
            }
        }
        columns.push(col);
    }
    let rows = 2 * binom2(g);
    let system = Matrix::from_fn(rows, n, |i, j| columns[j][i].clone());
    let red = rref(&system);
    let basis = red
        .kernel
        .iter()
        .map(|v| NSClass::from_rational_coordinates(g, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(NsRank { rank: basis.len(), basis })
}

/// Canonical form of the span of three classes: the RREF of their
/// coordinate vectors, which depends only on the span.
pub fn triple_span(classes: &[NSClass]) -> Result<MatQ> {
    if classes.len() != 3 {
        return Err(Error::DimensionMismatch { expected: 3, found: classes.len() });
    }
    let g = classes[0].g();
    if let Some(e) = classes.iter().find(|e| e.g() != g) {
        return Err(Error::DimensionMismatch { expected: g, found: e.g() });
    }
    let rows = classes.iter().map(NSClass::rational_coordinates).collect();
    let red = rref(&Matrix::from_rows(rows)?);
    if red.rank < 3 {
        return Err(Error::RankDeficient { rank: red.rank });
    }
    Ok(red.reduced)
}
