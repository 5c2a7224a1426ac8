use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{
    check_generator, determinant, serde_rational, sign, MatQ, Matrix, QuadExt, Rational,
};

/// Whether `(τ, 1_g)` spans a lattice of full rank in `C^g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Validity {
    ValidTorus,
    /// All entries real, so `Im τ = 0`.
    RealDegenerate,
    /// Non-real entries, but `det(Im τ) = 0`.
    SingularImaginary,
}

/// A `g × g` period matrix `τ = P + θ·Q` with rational `P`, `Q` and
/// `θ² = m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PeriodRepr", into = "PeriodRepr")]
pub struct PeriodMatrix {
    g: usize,
    m: Rational,
    p: MatQ,
    q: MatQ,
}

#[derive(Serialize, Deserialize)]
struct PeriodRepr {
    g: usize,
    #[serde(with = "serde_rational")]
    m: Rational,
    #[serde(rename = "P")]
    p: MatQ,
    #[serde(rename = "Q")]
    q: MatQ,
}

impl TryFrom<PeriodRepr> for PeriodMatrix {
    type Error = Error;
    fn try_from(r: PeriodRepr) -> Result<Self> {
        let pm = PeriodMatrix::new(r.m, r.p, r.q)?;
        if pm.g != r.g {
            return Err(Error::DimensionMismatch { expected: r.g, found: pm.g });
        }
        Ok(pm)
    }
}

impl From<PeriodMatrix> for PeriodRepr {
    fn from(t: PeriodMatrix) -> Self {
        PeriodRepr { g: t.g, m: t.m, p: t.p, q: t.q }
    }
}

impl PeriodMatrix {
    pub fn new(m: Rational, p: MatQ, q: MatQ) -> Result<Self> {
        check_generator(&m)?;
        let g = p.rows();
        for dims in [(p.rows(), p.cols()), (q.rows(), q.cols())] {
            if dims != (g, g) {
                return Err(Error::DimensionMismatch { expected: g, found: dims.0.max(dims.1) });
            }
        }
        Ok(PeriodMatrix { g, m, p, q })
    }

    /// A period matrix with all entries rational. `m` only labels the
    /// ambient field.
    pub fn real(m: Rational, p: MatQ) -> Result<Self> {
        let g = p.rows();
        PeriodMatrix::new(m, p, MatQ::zeros(g, g))
    }

    /// Assembles `τ` from entries over one quadratic field; rational entries
    /// adopt `m`.
    pub fn from_entries(m: Rational, entries: &Matrix<QuadExt>) -> Result<Self> {
        let g = entries.rows();
        let mut p = MatQ::zeros(g, entries.cols());
        let mut q = MatQ::zeros(g, entries.cols());
        for i in 0..g {
            for j in 0..entries.cols() {
                let x = entries[(i, j)].in_field(&m)?;
                p[(i, j)] = x.a().clone();
                q[(i, j)] = x.b().clone();
            }
        }
        PeriodMatrix::new(m, p, q)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn real_part(&self) -> &MatQ {
        &self.p
    }

    /// The `θ`-coefficient matrix `Q`.
    pub fn theta_part(&self) -> &MatQ {
        &self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> QuadExt {
        QuadExt::new(self.p[(i, j)].clone(), self.q[(i, j)].clone(), self.m.clone())
            .expect("generator checked at construction")
    }

    pub fn entries(&self) -> Matrix<QuadExt> {
        Matrix::from_fn(self.g, self.g, |i, j| self.entry(i, j))
    }

    /// Row-major entries.
    pub fn flatten(&self) -> Vec<QuadExt> {
        (0..self.g * self.g).map(|k| self.entry(k / self.g, k % self.g)).collect()
    }

    pub fn validity(&self) -> Validity {
        if self.q.is_zero() || sign(&self.m) > 0 {
            return Validity::RealDegenerate;
        }
        // m < 0: Im τ = √(−m)·Q
        if determinant(&self.q).is_zero() {
            Validity::SingularImaginary
        } else {
            Validity::ValidTorus
        }
    }

    /// Entrywise max-norm distance `max(|P − P'|, |Q − Q'|)`.
    pub fn distance(&self, other: &PeriodMatrix) -> Result<Rational> {
        if self.g != other.g {
            return Err(Error::DimensionMismatch { expected: self.g, found: other.g });
        }
        let mut d = Rational::zero();
        for i in 0..self.g {
            for j in 0..self.g {
                for x in [&self.p[(i, j)] - &other.p[(i, j)], &self.q[(i, j)] - &other.q[(i, j)]] {
                    let x = if sign(&x) < 0 { -x } else { x };
                    if x > d {
                        d = x;
                    }
                }
            }
        }
        Ok(d)
    }
}
