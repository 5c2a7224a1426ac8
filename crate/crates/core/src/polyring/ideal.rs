use std::sync::OnceLock;

use num_traits::One;

use super::groebner::{buchberger, leading_monomials, normal_form, reduced_groebner_basis};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::exactmath::Rational;

/// An ideal of a polynomial ring with its reduced Gröbner basis computed on
/// first use and cached.
#[derive(Debug)]
pub struct Ideal {
    ring: PolyRing,
    gens: Vec<Poly>,
    basis: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), gens: self.gens.clone(), basis }
    }
}

impl Ideal {
    pub fn new(ring: PolyRing, gens: Vec<Poly>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens, basis: OnceLock::new() }
    }

    pub fn parse(ring: PolyRing, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(ring, polys))
    }

    /// Wraps generators already known to form the reduced basis.
    pub(crate) fn from_reduced_basis(ring: PolyRing, basis: Vec<Poly>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal { ring, gens: basis, basis: cell }
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn reduced_basis(&self) -> &[Poly] {
        self.basis.get_or_init(|| reduced_groebner_basis(&self.ring, &self.gens))
    }

    pub fn is_basis_cached(&self) -> bool {
        self.basis.get().is_some()
    }

    pub fn is_unit(&self) -> bool {
        self.reduced_basis().iter().any(Poly::is_constant)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        normal_form(&self.ring, f, self.reduced_basis()).is_zero()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        normal_form(&self.ring, f, self.reduced_basis())
    }

    /// Equality as ideals (identical reduced bases).
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.reduced_basis() == other.reduced_basis()
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Poly>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(self.ring.clone(), gens)
    }

    /// Same ideal under another order on the same variables.
    pub fn reordered(&self, order: MonomialOrder) -> Ideal {
        let ring = self.ring.with_order(order);
        let gens = self.gens.iter().map(|g| ring.reorder(g)).collect();
        Ideal::new(ring, gens)
    }

    /// Krull dimension of the affine quotient ring; −1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        if self.is_unit() {
            return -1;
        }
        let lms = leading_monomials(self.reduced_basis());
        combinatorial_dimension(&lms, self.ring.nvars()) as i64
    }

    /// Number of standard monomials, the degree of a zero-dimensional scheme.
    pub fn quotient_degree(&self) -> Result<usize> {
        if self.dimension() != 0 {
            return Err(Error::NotZeroDimensional);
        }
        let lms = leading_monomials(self.reduced_basis());
        Ok(count_standard_monomials(&lms, self.ring.nvars()))
    }

    /// `I : f^∞`, computed as `(I + (z·f − 1)) ∩ k[x]` with `z` a fresh
    /// variable eliminated by a block order.
    pub fn saturate(&self, f: &Poly) -> Ideal {
        let n = self.ring.nvars();
        let mut names = vec![fresh_name(&self.ring)];
        names.extend(self.ring.vars().iter().cloned());
        let ext = PolyRing::new(names, MonomialOrder::Elimination { block: 1 });
        let embed: Vec<Option<usize>> = (1..=n).map(Some).collect();
        let mut gens: Vec<Poly> = self
            .gens
            .iter()
            .map(|g| self.ring.transfer(g, &ext, &embed).expect("total map"))
            .collect();
        let fz = ext.mul(&ext.var(0), &self.ring.transfer(f, &ext, &embed).expect("total map"));
        gens.push(ext.sub(&fz, &ext.one()));
        let gb = buchberger(&ext, &gens, None).polys;

        let back: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
        let contracted: Vec<Poly> = gb
            .iter()
            .filter(|g| !g.uses_var(0))
            .map(|g| ext.transfer(g, &self.ring, &back).expect("z-free"))
            .collect();
        Ideal::new(self.ring.clone(), contracted)
    }

    /// `I ∩ J`, via `(t·I + (1 − t)·J) ∩ k[x]`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.ring.vars(), other.ring.vars(), "ideals over different rings");
        let n = self.ring.nvars();
        let mut names = vec![fresh_name(&self.ring)];
        names.extend(self.ring.vars().iter().cloned());
        let ext = PolyRing::new(names, MonomialOrder::Elimination { block: 1 });
        let embed: Vec<Option<usize>> = (1..=n).map(Some).collect();
        let t = ext.var(0);
        let one_minus_t = ext.sub(&ext.one(), &t);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(ext.mul(&t, &self.ring.transfer(g, &ext, &embed).expect("total map")));
        }
        for g in &other.gens {
            gens.push(ext.mul(&one_minus_t, &other.ring.transfer(g, &ext, &embed).expect("total map")));
        }
        let gb = buchberger(&ext, &gens, None).polys;
        let back: Vec<Option<usize>> = std::iter::once(None).chain((0..n).map(Some)).collect();
        let contracted = gb
            .iter()
            .filter(|g| !g.uses_var(0))
            .map(|g| ext.transfer(g, &self.ring, &back).expect("t-free"))
            .collect();
        Ideal::new(self.ring.clone(), contracted)
    }

    /// `I : f = (I ∩ (f)) / f`.
    pub fn quotient(&self, f: &Poly) -> Ideal {
        if f.is_zero() {
            return Ideal::new(self.ring.clone(), vec![self.ring.one()]);
        }
        let fi = Ideal::new(self.ring.clone(), vec![f.clone()]);
        let inter = self.intersect(&fi);
        let gens = inter
            .reduced_basis()
            .iter()
            .map(|g| exact_division(&self.ring, g, f).expect("generators of I ∩ (f) are multiples of f"))
            .collect();
        Ideal::new(self.ring.clone(), gens)
    }
}

fn fresh_name(ring: &PolyRing) -> String {
    let mut name = String::from("z_sat");
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Exact polynomial division `g / f`, `None` if `f` does not divide `g`.
pub fn exact_division(ring: &PolyRing, g: &Poly, f: &Poly) -> Option<Poly> {
    let mut rem = g.clone();
    let mut quot = Poly::zero();
    while let Some((c, m)) = rem.leading_term() {
        if !f.lm().divides(m) {
            return None;
        }
        let q = m.div(f.lm());
        let coef = c / f.lc();
        quot = ring.add(&quot, &ring.term(coef.clone(), q.clone()));
        rem = ring.add_scaled(&rem, &-coef, &q, f);
    }
    Some(quot)
}

/// Largest set of variables `S` such that no leading monomial is supported
/// inside `S`: the dimension of `k[x]/in(I)`.
pub fn combinatorial_dimension(lms: &[Monomial], nvars: usize) -> usize {
    if lms.iter().any(Monomial::is_one) {
        return 0;
    }
    let mut supports: Vec<Vec<usize>> = lms.iter().map(|m| m.support().collect()).collect();
    supports.sort_by_key(Vec::len);
    supports.dedup();
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for s in supports {
        if !minimal.iter().any(|t| t.iter().all(|v| s.contains(v))) {
            minimal.push(s);
        }
    }
    // dimension = nvars − minimum hitting set of the supports
    let mut best = nvars;
    let mut cover = vec![false; nvars];
    min_cover(&minimal, &mut cover, 0, &mut best);
    nvars - best
}

fn min_cover(supports: &[Vec<usize>], cover: &mut [bool], size: usize, best: &mut usize) {
    if size >= *best {
        return;
    }
    let Some(open) = supports.iter().find(|s| !s.iter().any(|&v| cover[v])) else {
        *best = size;
        return;
    };
    for &v in open {
        cover[v] = true;
        min_cover(supports, cover, size + 1, best);
        cover[v] = false;
    }
}

/// Number of monomials outside the monomial ideal generated by `lms`.
/// Only meaningful (finite) for zero-dimensional ideals.
pub fn count_standard_monomials(lms: &[Monomial], nvars: usize) -> usize {
    fn walk(lms: &[Monomial], cur: &mut Vec<u32>, var: usize) -> usize {
        if var == cur.len() {
            return 1;
        }
        let mut total = 0;
        loop {
            let m = Monomial::new(cur.clone());
            if lms.iter().any(|l| l.divides(&m)) {
                break;
            }
            total += walk(lms, cur, var + 1);
            cur[var] += 1;
        }
        cur[var] = 0;
        total
    }
    if lms.iter().any(Monomial::is_one) {
        return 0;
    }
    walk(lms, &mut vec![0; nvars], 0)
}

/// Reduced-basis check used by tests: `f ∈ I` for every `f` in `polys`.
pub fn all_in(ideal: &Ideal, polys: &[Poly]) -> bool {
    polys.iter().all(|f| ideal.contains(f))
}

/// The ideal `(1)`.
pub fn unit_ideal(ring: PolyRing) -> Ideal {
    let one = ring.constant(Rational::one());
    Ideal::from_reduced_basis(ring, vec![one])
}
