use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{abs, build_equations, require_g, LocusProblem};
use crate::error::{Error, Result};
use crate::exactmath::{determinant, rref, serde_rational, sign, MatQ, Matrix, Rational};
use crate::torus::{find_polarization, ns_rank, PeriodMatrix, Polarization, Validity};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxPoint {
    pub k: usize,
    pub tau: PeriodMatrix,
    /// Max-norm distance of `(P_k, Q_k)` to the base `(P, Q)`.
    #[serde(with = "serde_rational")]
    pub distance: Rational,
    pub ns_rank: usize,
    pub polarization: Polarization,
}

/// The linear system `M·x + c = 0` of an affine-linear locus, `x` the
/// entries of `τ` in the problem's numbering.
fn linear_system(p: &LocusProblem) -> Result<(MatQ, Vec<Rational>)> {
    let eqs = build_equations(p);
    let n = p.g() * p.g();
    let mut m = MatQ::zeros(eqs.len(), n);
    let mut c = vec![Rational::zero(); eqs.len()];
    for (row, f) in eqs.iter().enumerate() {
        for (coef, mono) in f.terms() {
            match mono.degree() {
                0 => c[row] = coef.clone(),
                1 => {
                    let v = mono.support().next().expect("degree 1");
                    m[(row, v - 1)] = coef.clone();
                }
                _ => return Err(Error::NonlinearLocus),
            }
        }
    }
    Ok((m, c))
}

fn flatten(p: &LocusProblem, mat: &MatQ) -> Vec<Rational> {
    let g = p.g();
    let mut out = vec![Rational::zero(); g * g];
    for i in 0..g {
        for j in 0..g {
            out[p.flattening().variable(g, i, j) - 1] = mat[(i, j)].clone();
        }
    }
    out
}

fn unflatten(p: &LocusProblem, v: &[Rational]) -> MatQ {
    let g = p.g();
    Matrix::from_fn(g, g, |i, j| v[p.flattening().variable(g, i, j) - 1].clone())
}

/// Period matrices `τ_k = P_k + θ·Q_k`, `k = 1..=n`, on a linear locus
/// (all `C_i = 0`) converging to the base point `τ = P + θ·Q`.
///
/// Over `{1, θ}` the equations split: `P` solves the inhomogeneous system and
/// `Q` the homogeneous one. Both are moved along the sum `d` of the kernel
/// basis, scaled to max-norm 1, by `1/(k + j)` for the first `j ≥ 1` that
/// keeps `det Q_k ≠ 0`; the distance to the base is thus at most `1/k`.
pub fn approximate_abelian(
    p: &LocusProblem,
    base: &PeriodMatrix,
    n: usize,
    polarization_bound: u32,
) -> Result<Vec<ApproxPoint>> {
    if p.classes().iter().any(|e| e.c().iter().any(|&x| x != 0)) {
        return Err(Error::NonlinearLocus);
    }
    require_g(p.g(), base.g())?;
    if sign(base.m()) >= 0 {
        return Err(Error::Precondition("the base field must be imaginary quadratic".into()));
    }
    let (m, c) = linear_system(p)?;
    let pv = flatten(p, base.real_part());
    let qv = flatten(p, base.theta_part());
    let mp = m.mul_vec(&pv);
    let mq = m.mul_vec(&qv);
    if mp.iter().zip(&c).any(|(x, y)| !(x + y).is_zero()) || mq.iter().any(|x| !x.is_zero()) {
        return Err(Error::InfeasibleBase);
    }

    let kernel = rref(&m).kernel;
    let mut d = vec![Rational::zero(); pv.len()];
    for k in &kernel {
        for (s, x) in d.iter_mut().zip(k) {
            *s += x;
        }
    }
    let norm = d.iter().map(abs).max().unwrap_or_else(Rational::zero);
    if !norm.is_zero() {
        for x in &mut d {
            *x /= &norm;
        }
    }

    let g = p.g();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut found = None;
        for j in 1..=g + 1 {
            let s = Rational::one() / Rational::from_integer((k + j).into());
            let shift = |v: &[Rational]| -> Vec<Rational> { v.iter().zip(&d).map(|(x, y)| x + y * &s).collect() };
            let qk = unflatten(p, &shift(&qv));
            if determinant(&qk).is_zero() {
                continue;
            }
            let tau = PeriodMatrix::new(base.m().clone(), unflatten(p, &shift(&pv)), qk)?;
            found = Some(tau);
            break;
        }
        let tau = found.ok_or_else(|| {
            Error::Precondition("no nonsingular imaginary part near the base point".into())
        })?;
        debug_assert_eq!(tau.validity(), Validity::ValidTorus);
        out.push(ApproxPoint {
            k,
            distance: tau.distance(base)?,
            ns_rank: ns_rank(&tau)?.rank,
            polarization: find_polarization(&tau, polarization_bound, true)?,
            tau,
        });
    }
    Ok(out)
}
