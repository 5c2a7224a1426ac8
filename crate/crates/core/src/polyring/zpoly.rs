//! Integer working copies of polynomials for fraction-free reduction.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::poly::{Poly, PolyRing};
use crate::exactmath::Rational;

/// Terms stored in ascending order, so the leading term is last.
#[derive(Clone, Debug)]
pub(crate) struct ZPoly {
    terms: Vec<(BigInt, Monomial)>,
}

impl ZPoly {
    /// `(z, s)` with `z = s·f` primitive.
    pub fn scaled(f: &Poly) -> (ZPoly, Rational) {
        let l = f.terms().iter().fold(BigInt::one(), |acc, (c, _)| acc.lcm(c.denom()));
        let mut terms: Vec<(BigInt, Monomial)> =
            f.terms().iter().rev().map(|(c, m)| (c.numer() * (&l / c.denom()), m.clone())).collect();
        let mut content = content(terms.iter().map(|t| &t.0));
        if terms.last().is_some_and(|t| t.0.is_negative()) {
            content = -content;
        }
        if !content.is_one() && !content.is_zero() {
            for t in &mut terms {
                t.0 /= &content;
            }
        }
        let s = if content.is_zero() { Rational::one() } else { Rational::new(l, content) };
        (ZPoly { terms }, s)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms.last().expect("nonzero").1
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms.last().expect("nonzero").0
    }

    /// The monic rational polynomial with the same leading term.
    pub fn monic(&self) -> Poly {
        let lc = self.lc();
        Poly::from_sorted_unchecked(
            self.terms.iter().rev().map(|(c, m)| (Rational::new(c.clone(), lc.clone()), m.clone())).collect(),
        )
    }

    /// `self / s` over `Q`.
    pub fn into_poly(self, s: &Rational) -> Poly {
        let inv = s.recip();
        Poly::from_sorted_unchecked(
            self.terms.into_iter().rev().map(|(c, m)| (Rational::from_integer(c) * &inv, m)).collect(),
        )
    }
}

fn content<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for c in coeffs {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// `a·p − b·m·g` with the leading terms known to cancel; both inputs
/// ascending.
fn combine(ring: &PolyRing, p: Vec<(BigInt, Monomial)>, a: &BigInt, b: &BigInt, m: &Monomial, g: &ZPoly) -> Vec<(BigInt, Monomial)> {
    let plen = p.len() - 1;
    let glen = g.terms.len() - 1;
    let mut out = Vec::with_capacity(plen + glen);
    let mut pi = p.into_iter().take(plen).peekable();
    let mut gi = g.terms[..glen].iter().map(|(c, n)| (-(b * c), n.mul(m))).peekable();
    let scale = |c: BigInt| if a.is_one() { c } else { c * a };
    loop {
        let ord = match (pi.peek(), gi.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some(x), Some(y)) => ring.cmp(&x.1, &y.1),
        };
        match ord {
            Ordering::Less => {
                let (c, n) = pi.next().unwrap();
                out.push((scale(c), n));
            }
            Ordering::Greater => out.push(gi.next().unwrap()),
            Ordering::Equal => {
                let (c, n) = pi.next().unwrap();
                let (d, _) = gi.next().unwrap();
                let s = scale(c) + d;
                if !s.is_zero() {
                    out.push((s, n));
                }
            }
        }
    }
    out
}

/// Steps between content removals during a reduction.
const CONTENT_INTERVAL: usize = 8;

/// Reduction of `f` by `basis`, dividing each term by the first basis
/// element whose leading monomial divides it. With `full` every term is
/// reduced, otherwise only the leading one until it is irreducible. Returns
/// `z` and `s` with `z = s·r`, `r` the remainder over `Q` and `z` primitive
/// with positive leading coefficient.
pub(crate) fn reduce(ring: &PolyRing, f: ZPoly, basis: &[ZPoly], full: bool) -> (ZPoly, Rational) {
    let mut p = f.terms;
    // (p, rem) = s·(current, remainder)
    let mut s = Rational::one();
    let mut rem: Vec<(BigInt, Monomial)> = Vec::new();
    let mut steps = 0;
    while let Some((c, m)) = p.last() {
        match basis.iter().find(|g| !g.is_zero() && g.lm().divides(m)) {
            Some(g) => {
                let d = c.gcd(g.lc());
                let a = g.lc() / &d;
                let b = c / &d;
                let q = m.div(g.lm());
                p = combine(ring, p, &a, &b, &q, g);
                if !a.is_one() {
                    for t in &mut rem {
                        t.0 *= &a;
                    }
                    s *= Rational::from_integer(a);
                }
                steps += 1;
                if steps % CONTENT_INTERVAL == 0 {
                    remove_content(&mut rem, &mut p, &mut s);
                }
            }
            None if full => rem.push(p.pop().unwrap()),
            None => {
                p.reverse();
                rem.append(&mut p);
            }
        }
    }
    remove_content(&mut rem, &mut p, &mut s);
    rem.reverse();
    let mut z = ZPoly { terms: rem };
    if z.terms.last().is_some_and(|t| t.0.is_negative()) {
        for t in &mut z.terms {
            t.0 = -std::mem::take(&mut t.0);
        }
        s = -s;
    }
    (z, s)
}

fn remove_content(rem: &mut [(BigInt, Monomial)], p: &mut [(BigInt, Monomial)], s: &mut Rational) {
    let k = content(rem.iter().chain(p.iter()).map(|t| &t.0));
    if !k.is_one() && !k.is_zero() {
        for t in rem.iter_mut().chain(p.iter_mut()) {
            t.0 /= &k;
        }
        *s /= Rational::from_integer(k);
    }
}

/// `NF(f)` over `Q` via [`reduce`].
pub(crate) fn normal_form(ring: &PolyRing, f: &Poly, basis: &[ZPoly]) -> Poly {
    let (zf, s0) = ZPoly::scaled(f);
    let (z, s) = reduce(ring, zf, basis, true);
    z.into_poly(&(s * s0))
}

/// Fraction-free S-polynomial, up to a nonzero rational factor.
pub(crate) fn s_poly(ring: &PolyRing, f: &ZPoly, g: &ZPoly) -> ZPoly {
    let l = f.lm().lcm(g.lm());
    let d = f.lc().gcd(g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let mf = l.div(f.lm());
    let shifted = ZPoly { terms: f.terms.iter().map(|(c, n)| (c.clone(), n.mul(&mf))).collect() };
    let mg = l.div(g.lm());
    ZPoly { terms: combine(ring, shifted.terms, &a, &b, &mg, g) }
}
