use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};

use super::monomial::Monomial;
use super::poly::{Poly, PolyRing};
use super::zpoly::{self, ZPoly};

/// Remainder of `f` on division by `basis`: no term of the result is
/// divisible by a leading monomial of `basis`. Each step divides by the
/// first element of `basis` (in list order) whose leading monomial divides
/// the current term.
pub fn normal_form(ring: &PolyRing, f: &Poly, basis: &[Poly]) -> Poly {
    let zbasis: Vec<ZPoly> = basis.iter().map(|g| ZPoly::scaled(g).0).collect();
    zpoly::normal_form(ring, f, &zbasis)
}

pub fn s_polynomial(ring: &PolyRing, f: &Poly, g: &Poly) -> Poly {
    let l = f.lm().lcm(g.lm());
    let a = ring.mul_term(f, &g.lc().clone(), &l.div(f.lm()));
    ring.add_scaled(&a, &-f.lc().clone(), &l.div(g.lm()), g)
}

/// Output of [`buchberger`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    /// Monic, interreduced, sorted by leading monomial descending.
    pub polys: Vec<Poly>,
    /// True iff every S-pair was handled, so `polys` is the reduced basis.
    pub complete: bool,
    /// S-pairs whose S-polynomial was actually reduced.
    pub pairs_reduced: usize,
    /// S-pairs discarded by the product or chain criterion.
    pub pairs_skipped: usize,
}

struct PairQueue {
    heap: BinaryHeap<Reverse<(u32, u64, usize, usize)>>,
    pending: HashSet<(usize, usize)>,
    seq: u64,
}

impl PairQueue {
    fn push(&mut self, i: usize, j: usize, lcm_degree: u32) {
        self.heap.push(Reverse((lcm_degree, self.seq, i, j)));
        self.pending.insert((i, j));
        self.seq += 1;
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending.contains(&(a.min(b), a.max(b)))
    }
}

/// Buchberger's algorithm with the normal selection strategy: the pending
/// pair with the smallest total degree of `lcm(LM_i, LM_j)` goes first, ties
/// broken by creation order. Pairs are created in the order `(0,k), (1,k),
/// …, (k−1,k)` when element `k` joins the basis. The product and chain
/// criteria discard pairs before reduction.
///
/// With `pair_limit = Some(n)` the loop stops after `n` S-polynomials have
/// been reduced; the result is the interreduced partial basis and
/// `complete` is false unless the queue ran dry.
pub fn buchberger(ring: &PolyRing, gens: &[Poly], pair_limit: Option<usize>) -> GroebnerBasis {
    let mut basis: Vec<ZPoly> = Vec::new();
    let mut queue = PairQueue { heap: BinaryHeap::new(), pending: HashSet::new(), seq: 0 };
    let mut reduced = 0;
    let mut skipped = 0;

    let unit = |reduced, skipped| GroebnerBasis {
        polys: vec![ring.one()],
        complete: true,
        pairs_reduced: reduced,
        pairs_skipped: skipped,
    };

    let add = |basis: &mut Vec<ZPoly>, queue: &mut PairQueue, f: ZPoly| {
        let k = basis.len();
        for i in 0..k {
            let d = basis[i].lm().lcm(f.lm()).degree();
            queue.push(i, k, d);
        }
        basis.push(f);
    };

    for g in gens.iter().filter(|g| !g.is_zero()) {
        if g.is_constant() {
            return unit(0, 0);
        }
        add(&mut basis, &mut queue, ZPoly::scaled(g).0);
    }

    loop {
        if pair_limit.is_some_and(|n| reduced >= n) {
            break;
        }
        let Some(Reverse((_, _, i, j))) = queue.heap.pop() else {
            break;
        };
        queue.pending.remove(&(i, j));
        let (fi, fj) = (&basis[i], &basis[j]);
        if fi.lm().is_coprime(fj.lm()) {
            skipped += 1;
            continue;
        }
        let l = fi.lm().lcm(fj.lm());
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lm().divides(&l)
                && !queue.is_pending(i, k)
                && !queue.is_pending(j, k)
        });
        if chain {
            skipped += 1;
            continue;
        }
        let s = zpoly::s_poly(ring, fi, fj);
        // top reduction only; tails are cleaned up at the end
        let (h, _) = zpoly::reduce(ring, s, &basis, false);
        reduced += 1;
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return unit(reduced, skipped);
        }
        add(&mut basis, &mut queue, h);
    }

    let complete = queue.heap.is_empty();
    let basis: Vec<Poly> = basis.iter().map(ZPoly::monic).collect();
    let polys = if complete { reduce_basis(ring, basis) } else { interreduce(ring, basis) };
    GroebnerBasis { polys, complete, pairs_reduced: reduced, pairs_skipped: skipped }
}

fn sort_desc(ring: &PolyRing, polys: &mut [Poly]) {
    polys.sort_by(|a, b| ring.cmp(b.lm(), a.lm()));
}

/// Turns a Gröbner basis into the reduced one: drops elements whose leading
/// monomial is divisible by another's, reduces the tails and makes
/// everything monic.
pub fn reduce_basis(ring: &PolyRing, basis: Vec<Poly>) -> Vec<Poly> {
    let mut basis: Vec<Poly> = basis.into_iter().filter(|g| !g.is_zero()).collect();
    if basis.iter().any(Poly::is_constant) {
        return vec![ring.one()];
    }
    // smaller leading monomials first so that duplicates keep one copy
    basis.sort_by(|a, b| ring.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<Poly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> =
            minimal.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, g)| g.clone()).collect();
        out.push(normal_form(ring, &minimal[i], &others).monic());
    }
    sort_desc(ring, &mut out);
    out
}

/// Interreduces an arbitrary generating set without changing the ideal it
/// generates: each element is replaced by its normal form modulo the
/// others until nothing changes.
pub fn interreduce(ring: &PolyRing, gens: Vec<Poly>) -> Vec<Poly> {
    let mut g: Vec<Poly> = gens.into_iter().filter(|p| !p.is_zero()).map(|p| p.monic()).collect();
    'outer: loop {
        for i in 0..g.len() {
            let others: Vec<Poly> =
                g.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, p)| p.clone()).collect();
            let r = normal_form(ring, &g[i], &others);
            if r.is_zero() {
                g.remove(i);
                continue 'outer;
            }
            let r = r.monic();
            if r != g[i] {
                if r.is_constant() {
                    return vec![ring.one()];
                }
                g[i] = r;
                continue 'outer;
            }
        }
        break;
    }
    sort_desc(ring, &mut g);
    g
}

/// The reduced Gröbner basis of the ideal generated by `gens`.
pub fn reduced_groebner_basis(ring: &PolyRing, gens: &[Poly]) -> Vec<Poly> {
    buchberger(ring, gens, None).polys
}

pub fn leading_monomials(basis: &[Poly]) -> Vec<Monomial> {
    basis.iter().filter(|g| !g.is_zero()).map(|g| g.lm().clone()).collect()
}
