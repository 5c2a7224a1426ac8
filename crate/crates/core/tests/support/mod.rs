//! Strategies and property checks shared by the property tests and the
//! acceptance run.

#![allow(dead_code)]

use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use torilocus::exactmath::{int, rat, MatQ, Matrix, Rational};
use torilocus::polyring::{
    buchberger, leading_monomials, normal_form, reduced_groebner_basis, s_polynomial, Ideal, Monomial,
    MonomialOrder, Poly, PolyRing,
};
use torilocus::torus::{hermitian_form, ns_rank, riemann_residual, NSClass, PeriodMatrix, Validity};

pub type Check = Result<(), TestCaseError>;

pub fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, TestCaseError> {
    r.map_err(|e| TestCaseError::fail(e.to_string()))
}

/// Terms `(coefficient, exponents)` of a polynomial.
pub type PolySpec = Vec<(i64, Vec<u32>)>;

pub fn nonzero(bound: i64) -> impl Strategy<Value = i64> {
    prop_oneof![-bound..=-1, 1..=bound]
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=3).prop_map(|(n, d)| rat(n, d))
}

pub fn poly_spec(n: usize, maxdeg: u32, maxterms: usize) -> impl Strategy<Value = PolySpec> {
    vec((nonzero(6), vec(0..=maxdeg, n)), 1..=maxterms)
}

pub fn build(ring: &PolyRing, spec: &PolySpec, maxdeg: u32) -> Poly {
    let terms = spec
        .iter()
        .map(|(c, e)| {
            let mut e = e.clone();
            while e.iter().sum::<u32>() > maxdeg {
                let i = (0..e.len()).max_by_key(|&i| e[i]).unwrap();
                e[i] -= 1;
            }
            (int(*c), Monomial::new(e))
        })
        .collect();
    ring.from_terms(terms)
}

#[derive(Clone, Debug)]
pub struct IdealCase {
    pub n: usize,
    pub lex: bool,
    pub maxdeg: u32,
    pub gens: Vec<PolySpec>,
}

impl IdealCase {
    pub fn ring(&self) -> PolyRing {
        let order = if self.lex { MonomialOrder::Lex } else { MonomialOrder::GrevLex };
        PolyRing::new(["x", "y", "z"][..self.n].iter().copied(), order)
    }

    pub fn polys(&self, ring: &PolyRing) -> Vec<Poly> {
        self.gens.iter().map(|s| build(ring, s, self.maxdeg)).filter(|f| !f.is_zero()).collect()
    }
}

pub fn ideal_case(maxn: usize, maxdeg: u32, maxgens: usize, maxterms: usize) -> impl Strategy<Value = IdealCase> {
    (1..=maxn, any::<bool>()).prop_flat_map(move |(n, lex)| {
        vec(poly_spec(n, maxdeg, maxterms), 1..=maxgens)
            .prop_map(move |gens| IdealCase { n, lex, maxdeg, gens })
    })
}

/// Every S-polynomial of a complete basis reduces to zero, and so does every
/// input generator.
pub fn check_s_polynomials(case: &IdealCase) -> Check {
    let ring = case.ring();
    let gens = case.polys(&ring);
    let gb = buchberger(&ring, &gens, None);
    prop_assert!(gb.complete);
    let b = &gb.polys;
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            let s = s_polynomial(&ring, &b[i], &b[j]);
            prop_assert!(normal_form(&ring, &s, b).is_zero(), "S({i}, {j}) does not reduce to 0");
        }
    }
    for g in &gens {
        prop_assert!(normal_form(&ring, g, b).is_zero());
    }
    Ok(())
}

pub fn shuffle_case() -> impl Strategy<Value = (IdealCase, Vec<usize>, Vec<i64>)> {
    ideal_case(3, 3, 4, 3).prop_flat_map(|case| {
        let k = case.gens.len();
        (Just(case), Just((0..k).collect::<Vec<_>>()).prop_shuffle(), vec(nonzero(5), k))
    })
}

/// Permuting, rescaling and padding the generators with a redundant sum
/// leaves the reduced basis unchanged.
pub fn check_shuffle_invariance(input: &(IdealCase, Vec<usize>, Vec<i64>)) -> Check {
    let (case, perm, scales) = input;
    let ring = case.ring();
    let specs = &case.gens;
    let original: Vec<Poly> = specs.iter().map(|s| build(&ring, s, case.maxdeg)).collect();
    let mut moved: Vec<Poly> = perm.iter().map(|&i| original[i].scale(&int(scales[i]))).collect();
    moved.push(ring.add(&original[0], &original[original.len() - 1]));
    let nonzero = |v: Vec<Poly>| v.into_iter().filter(|f| !f.is_zero()).collect::<Vec<_>>();
    let a = reduced_groebner_basis(&ring, &nonzero(original));
    let b = reduced_groebner_basis(&ring, &nonzero(moved));
    prop_assert_eq!(a, b);
    Ok(())
}

#[derive(Clone, Debug)]
pub struct SaturationCase {
    pub f: PolySpec,
    pub k: u32,
    pub others: Vec<PolySpec>,
}

pub const SATURATION_DEGREE: u32 = 2;

pub fn saturation_case() -> impl Strategy<Value = SaturationCase> {
    (poly_spec(3, SATURATION_DEGREE, 3), 1u32..=3, vec(poly_spec(3, SATURATION_DEGREE, 3), 0..=2))
        .prop_map(|(f, k, others)| SaturationCase { f, k, others })
}

fn saturation_ring() -> PolyRing {
    PolyRing::new(["t_0", "x", "y"], MonomialOrder::GrevLex)
}

/// For `I = (t_0^k·f, h, …)`: saturating twice changes nothing, `f` lies in
/// the saturation, and the saturation agrees with the stable iterated
/// quotient `I : t_0 : t_0 : …`.
pub fn check_saturation(case: &SaturationCase) -> Check {
    let ring = saturation_ring();
    let t0 = ring.var(0);
    let f = build(&ring, &case.f, SATURATION_DEGREE);
    prop_assume!(!f.is_zero());
    let mut gens = vec![ring.mul(&ring.pow(&t0, case.k), &f)];
    gens.extend(case.others.iter().map(|s| build(&ring, s, SATURATION_DEGREE)).filter(|h| !h.is_zero()));
    let ideal = Ideal::new(ring.clone(), gens.clone());

    let sat = ideal.saturate(&t0);
    let twice = sat.saturate(&t0);
    prop_assert_eq!(sat.reduced_basis(), twice.reduced_basis());
    prop_assert!(sat.contains(&f));
    prop_assert!(gens.iter().all(|g| sat.contains(g)));

    let mut j = ideal;
    for _ in 0..8 {
        let next = j.quotient(&t0);
        let stable = next.same_ideal(&j);
        j = next;
        if stable {
            break;
        }
    }
    prop_assert!(j.same_ideal(&sat), "iterated quotient differs from the saturation");
    Ok(())
}

/// Monomials of total degree `d` in `n` variables.
fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    if n == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|e| {
            monomials_of_degree(n - 1, d - e).into_iter().map(move |mut rest| {
                rest.insert(0, e);
                rest
            })
        })
        .collect()
}

/// Standard monomials of degree `d`, by walking all of them.
fn hilbert_function(lms: &[Monomial], n: usize, d: u32) -> usize {
    monomials_of_degree(n, d)
        .into_iter()
        .filter(|e| {
            let m = Monomial::new(e.clone());
            !lms.iter().any(|l| l.divides(&m))
        })
        .count()
}

/// Dimension and (for dimension 0) the number of standard monomials of the
/// monomial ideal generated by `lms`, from its Hilbert function.
///
/// With all generators of degree at most `δ`, the Hilbert function is a
/// polynomial from degree `n·δ` on, of degree `dim − 1`.
pub fn standard_monomial_oracle(lms: &[Monomial], n: usize) -> (i64, Option<usize>) {
    if lms.iter().any(Monomial::is_one) {
        return (-1, None);
    }
    let delta = lms.iter().map(Monomial::degree).max().unwrap_or(0);
    let start = n as u32 * delta + 1;
    let values: Vec<i64> = (0..4).map(|k| hilbert_function(lms, n, start + k) as i64).collect();
    if values.iter().all(|&v| v == 0) {
        let degree = (0..start).map(|d| hilbert_function(lms, n, d)).sum();
        return (0, Some(degree));
    }
    let mut diffs = values;
    let mut order = 0;
    loop {
        diffs = diffs.windows(2).map(|w| w[1] - w[0]).collect();
        if diffs.iter().all(|&v| v == 0) {
            break;
        }
        order += 1;
    }
    (order + 1, None)
}

pub fn check_dimension_degree(case: &IdealCase) -> Check {
    let ring = case.ring();
    let gens = case.polys(&ring);
    prop_assume!(!gens.is_empty());
    let ideal = Ideal::new(ring, gens);
    let lms = leading_monomials(ideal.reduced_basis());
    let (dim, degree) = standard_monomial_oracle(&lms, case.n);
    prop_assert_eq!(ideal.dimension(), dim);
    match degree {
        Some(d) => prop_assert_eq!(ok(ideal.quotient_degree())?, d),
        None => prop_assert!(ideal.quotient_degree().is_err()),
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct TorusCase {
    pub g: usize,
    pub m: Rational,
    pub p: Vec<Rational>,
    pub lower: Vec<i64>,
    pub diag: Vec<Rational>,
    pub upper: Vec<i64>,
}

pub fn imaginary_generator() -> impl Strategy<Value = Rational> {
    prop_oneof![
        Just(int(-1)),
        Just(int(-2)),
        Just(int(-3)),
        Just(int(-7)),
        Just(rat(-3, 4)),
        Just(rat(-5, 2)),
    ]
}

/// `τ = P + θ·L·D·U` with `L`, `U` unit triangular and `D` invertible
/// diagonal, so `Im τ` is always invertible.
pub fn torus_case() -> impl Strategy<Value = TorusCase> {
    (
        2usize..=3,
        imaginary_generator(),
        vec(small_rational(), 9),
        vec(-2i64..=2, 9),
        vec((nonzero(3), 1i64..=2).prop_map(|(n, d)| rat(n, d)), 3),
        vec(-2i64..=2, 9),
    )
        .prop_map(|(g, m, p, lower, diag, upper)| TorusCase { g, m, p, lower, diag, upper })
}

impl TorusCase {
    pub fn tau(&self) -> torilocus::Result<PeriodMatrix> {
        let g = self.g;
        let l = MatQ::from_fn(g, g, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => int(self.lower[3 * i + j]),
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Less => int(0),
        });
        let u = MatQ::from_fn(g, g, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Less => int(self.upper[3 * i + j]),
            std::cmp::Ordering::Equal => int(1),
            std::cmp::Ordering::Greater => int(0),
        });
        let ld = MatQ::from_fn(g, g, |i, j| &l[(i, j)] * &self.diag[j]);
        let q = mat_mul(&ld, &u);
        let p = MatQ::from_fn(g, g, |i, j| self.p[3 * i + j].clone());
        PeriodMatrix::new(self.m.clone(), p, q)
    }
}

pub fn mat_mul(x: &MatQ, y: &MatQ) -> MatQ {
    MatQ::from_fn(x.rows(), y.cols(), |i, j| (0..x.cols()).map(|k| &x[(i, k)] * &y[(k, j)]).sum())
}

pub fn hermitian_case() -> impl Strategy<Value = (TorusCase, Vec<i64>)> {
    (torus_case(), vec(-3i64..=3, 9))
}

/// A random integral class of type (1,1) at a random torus has a Hermitian
/// form whose imaginary part on the lattice is the class again.
pub fn check_hermitian_round_trip(input: &(TorusCase, Vec<i64>)) -> Check {
    let (case, coeffs) = input;
    let tau = ok(case.tau())?;
    prop_assert_eq!(tau.validity(), Validity::ValidTorus);
    let rank = ok(ns_rank(&tau))?;
    let refs: Vec<&NSClass> = rank.basis.iter().collect();
    let e = if refs.is_empty() { NSClass::zero(case.g) } else { ok(NSClass::combination(&refs, coeffs))? };
    let h = ok(hermitian_form(&e, &tau))?;
    prop_assert!(h.is_hermitian());
    prop_assert_eq!(h.lattice_form(&tau), e.block_matrix());
    Ok(())
}

#[derive(Clone, Debug)]
pub struct ResidualCase {
    pub g: usize,
    pub coords: Vec<i64>,
    pub m: Rational,
    pub p: Vec<Rational>,
    pub q: Vec<Rational>,
}

pub fn residual_case() -> impl Strategy<Value = ResidualCase> {
    (2usize..=4).prop_flat_map(|g| {
        let n = g * (g - 1) + g * g;
        let m = prop_oneof![
            imaginary_generator(),
            Just(int(2)),
            Just(int(3)),
            Just(rat(5, 4)),
            Just(rat(57, 100)),
        ];
        (vec(-5i64..=5, n), m, vec(small_rational(), g * g), vec(small_rational(), g * g))
            .prop_map(move |(coords, m, p, q)| ResidualCase { g, coords, m, p, q })
    })
}

/// The residual is alternating for every class and every `τ`, valid or not.
pub fn check_residual_alternating(case: &ResidualCase) -> Check {
    let g = case.g;
    let e = ok(NSClass::from_coordinates(g, &case.coords))?;
    let p = Matrix::from_fn(g, g, |i, j| case.p[g * i + j].clone());
    let q = Matrix::from_fn(g, g, |i, j| case.q[g * i + j].clone());
    let tau = ok(PeriodMatrix::new(case.m.clone(), p, q))?;
    let r = ok(riemann_residual(&e, &tau))?;
    for i in 0..g {
        prop_assert!(r[(i, i)].is_zero());
        for j in i + 1..g {
            prop_assert!(ok(r[(i, j)].try_add(&r[(j, i)]))?.is_zero());
        }
    }
    Ok(())
}
