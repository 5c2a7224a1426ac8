//! Loci of period matrices on which three given classes stay of type (1,1):
//! the defining equations, their projective closure, classification of the
//! fiber and the parametric family certificate.

mod approx;
mod classify;
mod family;
mod random;

use serde::{Deserialize, Serialize};

pub use approx::{approximate_abelian, ApproxPoint};
pub use classify::{classify, solve_points, ExactPoint, FiberPoint, FiberReport};
pub use family::{family_certificate, FamilyCertificate};
pub use random::{random_triple, sweep, RandomTriple, SweepRow};

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::polyring::{reduced_groebner_basis, unit_ideal, Ideal, MonomialOrder, Poly, PolyRing};
use crate::torus::{triple_span, NSClass};

/// How the entries of `τ` are numbered as `t_1, …, t_{g²}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Flattening {
    /// `t_{g·i + j + 1} = τ_ij`, the numbering of the printed equations.
    #[default]
    RowMajor,
    /// `t_{g·j + i + 1} = τ_ij`, the numbering of a generic matrix filled
    /// column by column.
    ColumnMajor,
}

impl Flattening {
    /// Ring index of `τ_ij` (0-based `i`, `j`); index 0 is the homogenizer.
    pub fn variable(self, g: usize, i: usize, j: usize) -> usize {
        match self {
            Flattening::RowMajor => g * i + j + 1,
            Flattening::ColumnMajor => g * j + i + 1,
        }
    }
}

/// The variables `t_0, …, t_{g²}` under grevlex with `t_0 > t_1 > …`.
pub fn locus_ring(g: usize) -> PolyRing {
    PolyRing::new((0..=g * g).map(|k| format!("t_{k}")), MonomialOrder::GrevLex)
}

/// Three classes spanning a rank-3 subgroup, and a numbering of `τ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocusProblem {
    classes: Vec<NSClass>,
    flattening: Flattening,
}

impl LocusProblem {
    pub fn new(classes: Vec<NSClass>) -> Result<Self> {
        triple_span(&classes)?;
        Ok(LocusProblem { classes, flattening: Flattening::RowMajor })
    }

    pub fn with_flattening(mut self, flattening: Flattening) -> Self {
        self.flattening = flattening;
        self
    }

    pub fn g(&self) -> usize {
        self.classes[0].g()
    }

    pub fn classes(&self) -> &[NSClass] {
        &self.classes
    }

    pub fn flattening(&self) -> Flattening {
        self.flattening
    }

    pub fn ring(&self) -> PolyRing {
        locus_ring(self.g())
    }
}

/// Strictly upper entries of `A − B·T + Tᵗ·Bᵗ + Tᵗ·C·T` for a symbolic
/// `T`, row by row. The blocks may themselves be symbolic.
pub(crate) fn relations(
    ring: &PolyRing,
    a: &[Vec<Poly>],
    b: &[Vec<Poly>],
    c: &[Vec<Poly>],
    t: &[Vec<Poly>],
) -> Vec<Poly> {
    let g = t.len();
    let bt = |i: usize, j: usize| ring.sum((0..g).map(|k| ring.mul(&b[i][k], &t[k][j])).collect::<Vec<_>>().iter());
    let mut out = Vec::with_capacity(g * (g - 1) / 2);
    for i in 0..g {
        for j in i + 1..g {
            let mut r = ring.sub(&a[i][j], &bt(i, j));
            r = ring.add(&r, &bt(j, i));
            for k in 0..g {
                for l in 0..g {
                    if c[k][l].is_zero() {
                        continue;
                    }
                    let term = ring.mul(&ring.mul(&t[k][i], &c[k][l]), &t[l][j]);
                    r = ring.add(&r, &term);
                }
            }
            out.push(r);
        }
    }
    out
}

pub(crate) fn constant_matrix(ring: &PolyRing, m: &crate::exactmath::MatQ) -> Vec<Vec<Poly>> {
    m.to_rows()
        .into_iter()
        .map(|row| row.into_iter().map(|x| ring.constant(x)).collect())
        .collect()
}

pub(crate) fn symbolic_tau(ring: &PolyRing, g: usize, flattening: Flattening) -> Vec<Vec<Poly>> {
    (0..g)
        .map(|i| (0..g).map(|j| ring.var(flattening.variable(g, i, j))).collect())
        .collect()
}

/// The `3·binom(g,2)` equations of the locus in `t_1, …, t_{g²}`: for each
/// class in turn, the strictly upper entries of its Riemann relation.
pub fn build_equations(p: &LocusProblem) -> Vec<Poly> {
    let ring = p.ring();
    let t = symbolic_tau(&ring, p.g(), p.flattening);
    p.classes
        .iter()
        .flat_map(|e| {
            relations(
                &ring,
                &constant_matrix(&ring, &e.a_matrix()),
                &constant_matrix(&ring, &e.b_matrix()),
                &constant_matrix(&ring, &e.c_matrix()),
                &t,
            )
        })
        .collect()
}

/// Homogeneous ideal of the closure in `P^{g²}` of the affine locus cut out
/// by `eqs`, which must not involve `t_0` (variable 0 of `ring`).
///
/// The affine reduced grevlex basis is homogenized with `t_0` and the result
/// saturated by `t_0`.
pub fn projective_closure(ring: &PolyRing, eqs: &[Poly]) -> Ideal {
    let affine = reduced_groebner_basis(ring, eqs);
    if affine.iter().any(Poly::is_constant) {
        return unit_ideal(ring.clone());
    }
    let weights = vec![1; ring.nvars()];
    let homogeneous = affine.iter().map(|f| ring.homogenize(f, 0, &weights)).collect();
    let saturated = Ideal::new(ring.clone(), homogeneous).saturate(&ring.var(0));
    saturated.reduced_basis();
    saturated
}

/// The triple of the worked example as printed, in the class JSON format.
pub const REFERENCE_TRIPLE_JSON: &str = include_str!("../../fixtures/reference_triple.json");

pub fn reference_triple() -> Vec<NSClass> {
    serde_json::from_str(REFERENCE_TRIPLE_JSON).expect("bundled fixture parses")
}

/// The nine generators printed for the worked example, verbatim.
pub const REFERENCE_GENERATORS: &str = include_str!("../../fixtures/reference_generators.txt");

/// The worked example, with `τ` numbered column by column as in the
/// computation that produced [`REFERENCE_GENERATORS`].
pub fn reference_problem() -> LocusProblem {
    LocusProblem::new(reference_triple())
        .expect("reference triple has rank 3")
        .with_flattening(Flattening::ColumnMajor)
}

pub fn parse_generators(ring: &PolyRing, text: &str) -> Result<Vec<Poly>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(|l| ring.parse(l))
        .collect()
}

pub(crate) fn require_g(g: usize, found: usize) -> Result<()> {
    if g != found {
        return Err(Error::DimensionMismatch { expected: g, found });
    }
    Ok(())
}

pub(crate) fn abs(q: &Rational) -> Rational {
    if q < &Rational::from_integer(0.into()) {
        -q
    } else {
        q.clone()
    }
}


#[cfg(test)]
mod reference_tests {
    use super::*;
    use crate::exactmath::{is_rational_square, rat, QuadExt};
    use crate::torus::Validity;

    fn closure() -> (LocusProblem, Ideal) {
        let p = reference_problem();
        let ideal = projective_closure(&p.ring(), &build_equations(&p));
        (p, ideal)
    }

    #[test]
    fn reference_basis_matches_printed_generators() {
        let (p, ideal) = closure();
        let printed = parse_generators(&p.ring(), REFERENCE_GENERATORS).unwrap();
        // the listing runs from the smallest leading term up
        let mut ascending = ideal.reduced_basis().to_vec();
        ascending.reverse();
        assert_eq!(ascending, printed);
    }

    #[test]
    fn reference_fiber_classification() {
        let (p, ideal) = closure();
        let report = classify(&ideal, 3, p.flattening(), 1).unwrap();
        assert!(!report.empty);
        assert_eq!((report.dim, report.degree), (0, Some(2)));
        assert_eq!(report.irreducible_over_q, Some(true));
        assert_eq!(report.points.len(), 2);
        for pt in &report.points {
            assert_eq!(pt.validity, Validity::RealDegenerate);
            assert_eq!(pt.ns_rank, 9);
        }
        // solved on t_0 = 1 over θ² = 57/100, the same field as √(1900/3)
        let d = report.discriminant.clone().unwrap();
        assert_eq!(d, rat(57, 100));
        assert!(is_rational_square(&(&d * rat(1900, 3))));
        // on the chart t_9 = 1 the points have t_8 = 24 ± √(1900/3) = 24 ± (100/3)·θ
        let pts = solve_points(&ideal, 0, 3, p.flattening()).unwrap();
        let mut ratios: Vec<QuadExt> =
            pts.iter().map(|pt| pt.coords[8].try_div(&pt.coords[9]).unwrap()).collect();
        ratios.sort_by_key(|x| x.b().clone());
        assert_eq!(ratios[0], QuadExt::new(rat(24, 1), rat(-100, 3), d.clone()).unwrap());
        assert_eq!(ratios[1], QuadExt::new(rat(24, 1), rat(100, 3), d).unwrap());
    }
}
