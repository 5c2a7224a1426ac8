use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{binom2, embed, ns_rank, quad_mul, riemann_residual, NSClass, PeriodMatrix, Validity};
use crate::error::{Error, Result};
use crate::exactmath::{determinant, qsign, solve, MatQ, Matrix, QuadExt, Rational};

/// A Hermitian form on `C^g`, stored as `H̃ = X + θ·Y` over `Q(θ)` with `X`
/// symmetric, `Y` alternating and `θ² = m < 0`.
///
/// The form itself is `H = H̃ / √(−m)`, so that for the lattice generators
/// `λ` (columns of `(τ, 1_g)`) one has `Im H(λ_i, λ_j) = E_ij` with
/// `H(u, v) = uᵗ·H·v̄`. The positive factor does not affect definiteness;
/// for `m = −1` the two coincide.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HermitianForm {
    #[serde(with = "crate::exactmath::serde_rational")]
    pub m: Rational,
    #[serde(rename = "X")]
    pub x: MatQ,
    #[serde(rename = "Y")]
    pub y: MatQ,
}

impl HermitianForm {
    pub fn g(&self) -> usize {
        self.x.rows()
    }

    pub fn matrix(&self) -> Matrix<QuadExt> {
        Matrix::from_fn(self.g(), self.g(), |i, j| {
            QuadExt::new(self.x[(i, j)].clone(), self.y[(i, j)].clone(), self.m.clone())
                .expect("generator checked by the period matrix")
        })
    }

    /// `H̃` equals its conjugate transpose.
    pub fn is_hermitian(&self) -> bool {
        self.x.transpose() == self.x && self.y.transpose() == self.y.map(|v| -v)
    }

    /// Exact test via the leading principal minors, which are real.
    pub fn is_positive_definite(&self) -> Result<bool> {
        let h = self.matrix();
        for k in 1..=self.g() {
            if qsign(&determinant(&h.submatrix(k, k)))? != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The matrix `Im_θ(Πᵗ·H̃·Π̄)` on the `2g` lattice generators; equals the
    /// class it was built from.
    pub fn lattice_form(&self, tau: &PeriodMatrix) -> MatQ {
        pairing(&self.matrix(), tau)
    }

    fn add_scaled(&mut self, k: i64, other: &HermitianForm) {
        let k = Rational::from_integer(k.into());
        for i in 0..self.g() {
            for j in 0..self.g() {
                self.x[(i, j)] += &k * &other.x[(i, j)];
                self.y[(i, j)] += &k * &other.y[(i, j)];
            }
        }
    }
}

fn lattice(tau: &PeriodMatrix) -> Matrix<QuadExt> {
    let g = tau.g();
    let t = tau.entries();
    let id = embed(&MatQ::identity(g), tau.m());
    Matrix::from_fn(g, 2 * g, |i, j| if j < g { t[(i, j)].clone() } else { id[(i, j - g)].clone() })
}

fn pairing(h: &Matrix<QuadExt>, tau: &PeriodMatrix) -> MatQ {
    let pi = lattice(tau);
    let m = tau.m();
    let full = quad_mul(&quad_mul(&pi.transpose(), h, m), &pi.map(QuadExt::conj), m);
    full.map(|v| v.b().clone())
}

fn unknown_basis(g: usize) -> Vec<(MatQ, MatQ)> {
    let mut out = Vec::with_capacity(g * g);
    for i in 0..g {
        for j in i..g {
            let mut x = MatQ::zeros(g, g);
            x[(i, j)] = Rational::one();
            x[(j, i)] = Rational::one();
            out.push((x, MatQ::zeros(g, g)));
        }
    }
    for i in 0..g {
        for j in i + 1..g {
            let mut y = MatQ::zeros(g, g);
            y[(i, j)] = Rational::one();
            y[(j, i)] = -Rational::one();
            out.push((MatQ::zeros(g, g), y));
        }
    }
    out
}

/// The Hermitian form whose imaginary part on the lattice is `E`.
///
/// Requires a valid torus over an imaginary quadratic field; fails with
/// `NotOneOne` when `E` is not of type (1,1) at `τ`.
pub fn hermitian_form(e: &NSClass, tau: &PeriodMatrix) -> Result<HermitianForm> {
    if tau.validity() != Validity::ValidTorus {
        return Err(Error::Precondition("hermitian_form needs a valid torus with m < 0".into()));
    }
    let residual = riemann_residual(e, tau)?;
    if !residual.to_rows().iter().flatten().all(QuadExt::is_zero) {
        return Err(Error::NotOneOne);
    }
    let g = tau.g();
    let m = tau.m();
    let unknowns = unknown_basis(g);
    let upper = |mat: &MatQ| -> Vec<Rational> {
        let mut v = Vec::with_capacity(binom2(2 * g));
        for i in 0..2 * g {
            for j in i + 1..2 * g {
                v.push(mat[(i, j)].clone());
            }
        }
        v
    };
    let columns: Vec<Vec<Rational>> = unknowns
        .iter()
        .map(|(x, y)| {
            let h = HermitianForm { m: m.clone(), x: x.clone(), y: y.clone() };
            upper(&h.lattice_form(tau))
        })
        .collect();
    let system = Matrix::from_fn(binom2(2 * g), unknowns.len(), |i, j| columns[j][i].clone());
    let coeffs = solve(&system, &upper(&e.block_matrix())).ok_or(Error::NotOneOne)?;
    let mut h = HermitianForm { m: m.clone(), x: MatQ::zeros(g, g), y: MatQ::zeros(g, g) };
    for (c, (x, y)) in coeffs.iter().zip(&unknowns) {
        for i in 0..g {
            for j in 0..g {
                h.x[(i, j)] += c * &x[(i, j)];
                h.y[(i, j)] += c * &y[(i, j)];
            }
        }
    }
    Ok(h)
}

/// Outcome of [`find_polarization`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum Polarization {
    Polarized { class: NSClass, form: HermitianForm },
    /// Nothing found among the enumerated combinations. Not a proof that the
    /// torus is not algebraic.
    NoneWithinBound { bound: u32 },
    /// `g = 3` with Picard number 9, which already forces algebraicity.
    MaximalRankShortcut { rank: usize },
}

/// Searches integer combinations of the rank basis for a class with a
/// positive definite Hermitian form.
///
/// Coefficient vectors are enumerated in shells of increasing max-norm
/// `1..=bound`, each shell in lexicographic order with coefficients running
/// from `−s` to `s`. With `shortcut`, a `g = 3` torus of rank 9 returns
/// [`Polarization::MaximalRankShortcut`] without searching.
pub fn find_polarization(tau: &PeriodMatrix, bound: u32, shortcut: bool) -> Result<Polarization> {
    if tau.validity() != Validity::ValidTorus {
        return Err(Error::Precondition("polarization search needs a valid torus with m < 0".into()));
    }
    let rank = ns_rank(tau)?;
    if shortcut && tau.g() == 3 && rank.rank == 9 {
        return Ok(Polarization::MaximalRankShortcut { rank: rank.rank });
    }
    let forms = rank
        .basis
        .iter()
        .map(|e| hermitian_form(e, tau))
        .collect::<Result<Vec<_>>>()?;
    let g = tau.g();
    let r = forms.len();
    let b = bound as i64;
    for s in 1..=b {
        let mut coeffs = vec![-s; r];
        loop {
            if coeffs.iter().any(|c| c.abs() == s) {
                let mut h = HermitianForm { m: tau.m().clone(), x: MatQ::zeros(g, g), y: MatQ::zeros(g, g) };
                for (&k, f) in coeffs.iter().zip(&forms) {
                    if k != 0 {
                        h.add_scaled(k, f);
                    }
                }
                if h.is_positive_definite()? {
                    let refs: Vec<&NSClass> = rank.basis.iter().collect();
                    let class = NSClass::combination(&refs, &coeffs)?;
                    return Ok(Polarization::Polarized { class, form: h });
                }
            }
            // odometer, last coordinate fastest
            let Some(pos) = (0..r).rev().find(|&i| coeffs[i] < s) else {
                break;
            };
            coeffs[pos] += 1;
            for c in &mut coeffs[pos + 1..] {
                *c = -s;
            }
        }
    }
    Ok(Polarization::NoneWithinBound { bound })
}
