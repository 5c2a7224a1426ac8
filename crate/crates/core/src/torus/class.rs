use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{int, MatQ, Matrix, Rational};

pub fn binom2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// An integral alternating form on the lattice of a `g`-dimensional torus,
/// in block form `E = [[A, B], [−Bᵗ, C]]` with `A`, `C` alternating.
///
/// `a` and `c` hold the strict upper triangles of `A` and `C` row by row;
/// `b` holds `B` row-major. The coordinate vector is `(a, b, c)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ClassRepr", into = "FlatRepr")]
pub struct NSClass {
    g: usize,
    a: Vec<i64>,
    b: Vec<i64>,
    c: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct FlatRepr {
    g: usize,
    a: Vec<i64>,
    b: Vec<i64>,
    c: Vec<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ClassRepr {
    Flat(FlatRepr),
    Blocks {
        #[serde(rename = "A")]
        a: Vec<Vec<i64>>,
        #[serde(rename = "B")]
        b: Vec<Vec<i64>>,
        #[serde(rename = "C")]
        c: Vec<Vec<i64>>,
    },
}

impl TryFrom<ClassRepr> for NSClass {
    type Error = Error;
    fn try_from(r: ClassRepr) -> Result<Self> {
        match r {
            ClassRepr::Flat(f) => NSClass::new(f.g, f.a, f.b, f.c),
            ClassRepr::Blocks { a, b, c } => NSClass::from_blocks(&a, &b, &c),
        }
    }
}

impl From<NSClass> for FlatRepr {
    fn from(e: NSClass) -> Self {
        FlatRepr { g: e.g, a: e.a, b: e.b, c: e.c }
    }
}

fn upper_triangle(m: &[Vec<i64>], g: usize, name: &str) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(binom2(g));
    for i in 0..g {
        if m[i].len() != g {
            return Err(Error::DimensionMismatch { expected: g, found: m[i].len() });
        }
    }
    for i in 0..g {
        if m[i][i] != 0 {
            return Err(Error::Parse(format!("{name} has a nonzero diagonal entry")));
        }
        for j in i + 1..g {
            if m[j][i] != -m[i][j] {
                return Err(Error::Parse(format!("{name} is not alternating")));
            }
            out.push(m[i][j]);
        }
    }
    Ok(out)
}

impl NSClass {
    pub fn new(g: usize, a: Vec<i64>, b: Vec<i64>, c: Vec<i64>) -> Result<Self> {
        for (v, n) in [(&a, binom2(g)), (&b, g * g), (&c, binom2(g))] {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, found: v.len() });
            }
        }
        Ok(NSClass { g, a, b, c })
    }

    pub fn zero(g: usize) -> Self {
        NSClass { g, a: vec![0; binom2(g)], b: vec![0; g * g], c: vec![0; binom2(g)] }
    }

    /// Builds a class from the blocks `A`, `B`, `C` written out in full.
    pub fn from_blocks(a: &[Vec<i64>], b: &[Vec<i64>], c: &[Vec<i64>]) -> Result<Self> {
        let g = b.len();
        for m in [a, c] {
            if m.len() != g {
                return Err(Error::DimensionMismatch { expected: g, found: m.len() });
            }
        }
        let mut flat_b = Vec::with_capacity(g * g);
        for row in b {
            if row.len() != g {
                return Err(Error::DimensionMismatch { expected: g, found: row.len() });
            }
            flat_b.extend(row);
        }
        NSClass::new(g, upper_triangle(a, g, "A")?, flat_b, upper_triangle(c, g, "C")?)
    }

    /// Inverse of [`NSClass::coordinates`].
    pub fn from_coordinates(g: usize, coords: &[i64]) -> Result<Self> {
        let (na, nb) = (binom2(g), g * g);
        if coords.len() != 2 * na + nb {
            return Err(Error::DimensionMismatch { expected: 2 * na + nb, found: coords.len() });
        }
        Ok(NSClass {
            g,
            a: coords[..na].to_vec(),
            b: coords[na..na + nb].to_vec(),
            c: coords[na + nb..].to_vec(),
        })
    }

    /// Clears denominators of a rational coordinate vector and divides out
    /// the content.
    pub fn from_rational_coordinates(g: usize, coords: &[Rational]) -> Result<Self> {
        let den = coords.iter().fold(BigInt::from(1), |l, q| l.lcm(q.denom()));
        let ints: Vec<BigInt> = coords.iter().map(|q| (q * &den).to_integer()).collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        let ints = ints
            .into_iter()
            .map(|x| {
                let x = if content.is_zero() { x } else { x / &content };
                x.to_i64().ok_or_else(|| Error::Overflow(format!("class coordinate {x}")))
            })
            .collect::<Result<Vec<_>>>()?;
        NSClass::from_coordinates(g, &ints)
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    pub fn b(&self) -> &[i64] {
        &self.b
    }

    pub fn c(&self) -> &[i64] {
        &self.c
    }

    /// `(a, b, c)`, of length `binom(2g, 2)`.
    pub fn coordinates(&self) -> Vec<i64> {
        [&self.a[..], &self.b[..], &self.c[..]].concat()
    }

    pub fn rational_coordinates(&self) -> Vec<Rational> {
        self.coordinates().into_iter().map(int).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coordinates().iter().all(|&x| x == 0)
    }

    fn alternating(&self, upper: &[i64]) -> MatQ {
        let g = self.g;
        let mut m = MatQ::zeros(g, g);
        let mut k = 0;
        for i in 0..g {
            for j in i + 1..g {
                m[(i, j)] = int(upper[k]);
                m[(j, i)] = int(-upper[k]);
                k += 1;
            }
        }
        m
    }

    pub fn a_matrix(&self) -> MatQ {
        self.alternating(&self.a)
    }

    pub fn b_matrix(&self) -> MatQ {
        Matrix::from_fn(self.g, self.g, |i, j| int(self.b[i * self.g + j]))
    }

    pub fn c_matrix(&self) -> MatQ {
        self.alternating(&self.c)
    }

    /// The assembled `2g × 2g` skew-symmetric matrix.
    pub fn block_matrix(&self) -> MatQ {
        let g = self.g;
        let (a, b, c) = (self.a_matrix(), self.b_matrix(), self.c_matrix());
        Matrix::from_fn(2 * g, 2 * g, |i, j| match (i < g, j < g) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - g)].clone(),
            (false, true) => -b[(j, i - g)].clone(),
            (false, false) => c[(i - g, j - g)].clone(),
        })
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        let coords = self
            .coordinates()
            .into_iter()
            .map(|x| x.checked_mul(k).ok_or_else(|| Error::Overflow(format!("{x} * {k}"))))
            .collect::<Result<Vec<_>>>()?;
        NSClass::from_coordinates(self.g, &coords)
    }

    /// Integer linear combination `Σ kᵢ·Eᵢ` of classes of the same dimension.
    pub fn combination(classes: &[&NSClass], coeffs: &[i64]) -> Result<Self> {
        let g = classes.first().map_or(0, |e| e.g);
        let mut acc = vec![0i64; 2 * binom2(g) + g * g];
        for (e, &k) in classes.iter().zip(coeffs) {
            if e.g != g {
                return Err(Error::DimensionMismatch { expected: g, found: e.g });
            }
            for (s, x) in acc.iter_mut().zip(e.coordinates()) {
                *s = x
                    .checked_mul(k)
                    .and_then(|y| s.checked_add(y))
                    .ok_or_else(|| Error::Overflow("class combination".into()))?;
            }
        }
        NSClass::from_coordinates(g, &acc)
    }

    /// Divides all entries by their gcd, keeping the sign. The zero class is
    /// returned unchanged.
    pub fn primitive(&self) -> Self {
        let coords = self.coordinates();
        let d = coords.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if d == 0 {
            return self.clone();
        }
        let coords: Vec<i64> = coords.iter().map(|x| x / d.abs()).collect();
        NSClass::from_coordinates(self.g, &coords).expect("same shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_layout() {
        let e = NSClass::from_blocks(
            &[vec![0, 0, 0], vec![0, 0, 2], vec![0, -2, 0]],
            &[vec![1, 1, 0], vec![1, 1, 2], vec![1, 1, 2]],
            &[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]],
        )
        .unwrap();
        assert_eq!(e.coordinates(), vec![0, 0, 2, 1, 1, 0, 1, 1, 2, 1, 1, 2, 1, 0, 0]);
        let m = e.block_matrix();
        assert_eq!(m.transpose(), m.map(|x| -x));
        assert_eq!(m[(0, 4)], int(1));
        assert_eq!(m[(4, 0)], int(-1));
        assert_eq!(m[(3, 4)], int(1));
    }

    #[test]
    fn rejects_non_alternating_blocks() {
        let bad = NSClass::from_blocks(&[vec![1]], &[vec![0]], &[vec![0]]);
        assert!(bad.is_err());
    }

    #[test]
    fn primitive_forgets_positive_multiples() {
        let e = NSClass::new(2, vec![2], vec![4, -6, 0, 8], vec![-2]).unwrap();
        assert_eq!(e.primitive(), NSClass::new(2, vec![1], vec![2, -3, 0, 4], vec![-1]).unwrap());
        assert_eq!(e.scaled(7).unwrap().primitive(), e.primitive());
        assert_eq!(NSClass::zero(2).primitive(), NSClass::zero(2));
    }

    #[test]
    fn json_forms() {
        let e: NSClass =
            serde_json::from_str(r#"{"g": 1, "a": [], "b": [3], "c": []}"#).unwrap();
        assert_eq!(e.b(), &[3]);
        let text = serde_json::to_string(&e).unwrap();
        assert_eq!(text, r#"{"g":1,"a":[],"b":[3],"c":[]}"#);
        let f: NSClass =
            serde_json::from_str(r#"{"A": [[0, 1], [-1, 0]], "B": [[1, 0], [0, 1]], "C": [[0, 0], [0, 0]]}"#)
                .unwrap();
        assert_eq!(f.coordinates(), vec![1, 1, 0, 0, 1, 0]);
        assert!(serde_json::from_str::<NSClass>(r#"{"g": 2, "a": [1], "b": [1], "c": [0]}"#).is_err());
    }
}
