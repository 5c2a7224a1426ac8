use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::quad::QuadExt;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type MatQ = Matrix<Rational>;

impl<T: Clone> Matrix<T> {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn submatrix(&self, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self[(i, j)].clone())
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl MatQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| Rational::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl Serialize for MatQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MatQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Matrix::from_rows(parsed).map_err(serde::de::Error::custom)
    }
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub reduced: MatQ,
    /// Basis of the right kernel, one vector per free column in increasing
    /// column order, each scaled so its first nonzero coordinate is 1.
    pub kernel: Vec<Vec<Rational>>,
}

pub fn rref(m: &MatQ) -> Rref {
    let mut r = m.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == rows {
            break;
        }
        let Some(sel) = (prow..rows).find(|&i| !r[(i, col)].is_zero()) else {
            continue;
        };
        if sel != prow {
            for j in 0..cols {
                r.data.swap(sel * cols + j, prow * cols + j);
            }
        }
        let inv = r[(prow, col)].recip();
        for j in col..cols {
            r[(prow, j)] = &r[(prow, j)] * &inv;
        }
        for i in 0..rows {
            if i == prow || r[(i, col)].is_zero() {
                continue;
            }
            let f = r[(i, col)].clone();
            for j in col..cols {
                let d = &f * &r[(prow, j)];
                r[(i, j)] -= d;
            }
        }
        pivots.push(col);
        prow += 1;
    }

    let mut kernel = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![Rational::zero(); cols];
        v[free] = Rational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -r[(i, free)].clone();
        }
        let lead = v.iter().find(|x| !x.is_zero()).cloned().expect("free column is nonzero");
        for x in &mut v {
            *x /= &lead;
        }
        kernel.push(v);
    }

    Rref { rank: pivots.len(), pivots, reduced: r, kernel }
}

/// Solves `m·x = rhs`; `None` if inconsistent. Free variables are set to 0.
pub fn solve(m: &MatQ, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let aug = Matrix::from_fn(m.rows, m.cols + 1, |i, j| {
        if j < m.cols {
            m[(i, j)].clone()
        } else {
            rhs[i].clone()
        }
    });
    let red = rref(&aug);
    if red.pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (i, &p) in red.pivots.iter().enumerate() {
        x[p] = red.reduced[(i, m.cols)].clone();
    }
    Some(x)
}

/// Minimal field interface for elimination-based determinants.
pub trait FieldElement: Clone {
    fn is_zero_elem(&self) -> bool;
    fn sub_elem(&self, other: &Self) -> Self;
    fn mul_elem(&self, other: &Self) -> Self;
    fn div_elem(&self, other: &Self) -> Self;
    fn neg_elem(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl FieldElement for Rational {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_elem(&self, o: &Self) -> Self {
        self / o
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
}

impl FieldElement for QuadExt {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self * o
    }
    fn div_elem(&self, o: &Self) -> Self {
        self.try_div(o).expect("division in Q(theta)")
    }
    fn neg_elem(&self) -> Self {
        -self
    }
    fn one_like(&self) -> Self {
        QuadExt::rational(Rational::one(), self.m())
    }
}

/// Determinant by fraction-based Gaussian elimination. Panics on a
/// non-square or empty matrix.
pub fn determinant<T: FieldElement>(m: &Matrix<T>) -> T {
    assert_eq!(m.rows, m.cols, "determinant of a non-square matrix");
    assert!(m.rows > 0, "determinant of an empty matrix");
    let n = m.rows;
    let mut a = m.clone();
    let mut det = a[(0, 0)].one_like();
    for col in 0..n {
        let Some(sel) = (col..n).find(|&i| !a[(i, col)].is_zero_elem()) else {
            return a[(0, 0)].sub_elem(&a[(0, 0)]);
        };
        if sel != col {
            for j in 0..n {
                a.data.swap(sel * n + j, col * n + j);
            }
            det = det.neg_elem();
        }
        let p = a[(col, col)].clone();
        det = det.mul_elem(&p);
        for i in col + 1..n {
            if a[(i, col)].is_zero_elem() {
                continue;
            }
            let f = a[(i, col)].div_elem(&p);
            for j in col..n {
                let d = f.mul_elem(&a[(col, j)]);
                a[(i, j)] = a[(i, j)].sub_elem(&d);
            }
        }
    }
    det
}
