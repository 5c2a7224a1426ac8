use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::exactmath::{format_rational, parse_rational, QuadExt, Rational};

/// A polynomial over `Q`: nonzero terms sorted strictly descending under the
/// order of the ring that built it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: Vec<(Rational, Monomial)>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Rational, Monomial)> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].1
    }

    pub fn lc(&self) -> &Rational {
        &self.terms[0].0
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(_, m)| m.degree()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(_, m)| m.exp(i) > 0)
    }

    pub fn max_exp(&self, i: usize) -> u32 {
        self.terms.iter().map(|(_, m)| m.exp(i)).max().unwrap_or(0)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(a, m)| (a * c, m.clone())).collect() }
    }

    pub fn neg(&self) -> Poly {
        Poly { terms: self.terms.iter().map(|(a, m)| (-a, m.clone())).collect() }
    }

    pub(crate) fn from_sorted_unchecked(terms: Vec<(Rational, Monomial)>) -> Poly {
        Poly { terms }
    }
}

/// Variable names plus a monomial order: the context every polynomial
/// operation runs in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, order: MonomialOrder) -> Self {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if let MonomialOrder::Weighted { weights } = &order {
            assert_eq!(weights.len(), vars.len(), "weight vector length");
        }
        if let MonomialOrder::Elimination { block } = &order {
            assert!(*block <= vars.len(), "elimination block larger than the ring");
        }
        PolyRing { vars, order }
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables, different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing::new(self.vars.clone(), order)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn one(&self) -> Poly {
        self.constant(Rational::one())
    }

    pub fn constant(&self, c: Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(c, Monomial::one(self.nvars()))] }
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly { terms: vec![(Rational::one(), Monomial::var(self.nvars(), i, 1))] }
    }

    pub fn term(&self, c: Rational, m: Monomial) -> Poly {
        assert_eq!(m.nvars(), self.nvars());
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: vec![(c, m)] }
    }

    /// Sorts under this ring's order and merges equal monomials.
    pub fn from_terms(&self, mut terms: Vec<(Rational, Monomial)>) -> Poly {
        terms.sort_by(|x, y| self.cmp(&y.1, &x.1));
        let mut out: Vec<(Rational, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            match out.last_mut() {
                Some((lc, lm)) if *lm == m => *lc += c,
                _ => out.push((c, m)),
            }
        }
        out.retain(|(c, _)| !c.is_zero());
        Poly { terms: out }
    }

    /// Re-sorts a polynomial built under a different order on the same
    /// variables.
    pub fn reorder(&self, f: &Poly) -> Poly {
        let mut terms = f.terms.clone();
        terms.sort_by(|x, y| self.cmp(&y.1, &x.1));
        Poly { terms }
    }

    pub fn add(&self, f: &Poly, g: &Poly) -> Poly {
        self.merge(f, g, &Rational::one(), None)
    }

    pub fn sub(&self, f: &Poly, g: &Poly) -> Poly {
        self.merge(f, g, &-Rational::one(), None)
    }

    /// `f + c·m·g`.
    pub fn add_scaled(&self, f: &Poly, c: &Rational, m: &Monomial, g: &Poly) -> Poly {
        self.merge(f, g, c, Some(m))
    }

    fn merge(&self, f: &Poly, g: &Poly, c: &Rational, shift: Option<&Monomial>) -> Poly {
        if c.is_zero() {
            return f.clone();
        }
        let mut out = Vec::with_capacity(f.len() + g.len());
        let mut fi = f.terms.iter().peekable();
        let shifted = |t: &(Rational, Monomial)| -> (Rational, Monomial) {
            let m = match shift {
                Some(s) => t.1.mul(s),
                None => t.1.clone(),
            };
            (&t.0 * c, m)
        };
        let mut gi = g.terms.iter().map(shifted).peekable();
        loop {
            let ord = match (fi.peek(), gi.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(a), Some(b)) => self.cmp(&a.1, &b.1),
            };
            match ord {
                Ordering::Greater => out.push(fi.next().unwrap().clone()),
                Ordering::Less => out.push(gi.next().unwrap()),
                Ordering::Equal => {
                    let (a, m) = fi.next().unwrap();
                    let (b, _) = gi.next().unwrap();
                    let s = a + b;
                    if !s.is_zero() {
                        out.push((s, m.clone()));
                    }
                }
            }
        }
        Poly { terms: out }
    }

    pub fn mul_term(&self, f: &Poly, c: &Rational, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        // multiplication by a monomial preserves the order of terms
        Poly { terms: f.terms.iter().map(|(a, n)| (a * c, n.mul(m))).collect() }
    }

    pub fn mul(&self, f: &Poly, g: &Poly) -> Poly {
        let mut terms = Vec::with_capacity(f.len() * g.len());
        for (a, m) in &f.terms {
            for (b, n) in &g.terms {
                terms.push((a * b, m.mul(n)));
            }
        }
        self.from_terms(terms)
    }

    pub fn pow(&self, f: &Poly, e: u32) -> Poly {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn sum<'a>(&self, fs: impl IntoIterator<Item = &'a Poly>) -> Poly {
        fs.into_iter().fold(Poly::zero(), |acc, f| self.add(&acc, f))
    }

    /// Substitutes rational values for some variables.
    pub fn substitute(&self, f: &Poly, values: &[(usize, Rational)]) -> Poly {
        let mut terms = Vec::with_capacity(f.len());
        for (c, m) in &f.terms {
            let mut c = c.clone();
            let mut m = m.clone();
            for (i, v) in values {
                let e = m.exp(*i);
                if e > 0 {
                    c *= num_traits::pow(v.clone(), e as usize);
                    m = m.with_exp(*i, 0);
                }
            }
            terms.push((c, m));
        }
        self.from_terms(terms)
    }

    /// Exact evaluation at a point of `Q(θ)^n`.
    pub fn eval_quad(&self, f: &Poly, point: &[QuadExt]) -> Result<QuadExt> {
        if point.len() != self.nvars() {
            return Err(Error::DimensionMismatch { expected: self.nvars(), found: point.len() });
        }
        let m = point.iter().find(|x| !x.is_rational()).map_or_else(|| point[0].m().clone(), |x| x.m().clone());
        let mut acc = QuadExt::rational(Rational::zero(), &m);
        for (c, mono) in &f.terms {
            let mut t = QuadExt::rational(c.clone(), &m);
            for (i, &e) in mono.exps().iter().enumerate() {
                for _ in 0..e {
                    t = t.try_mul(&point[i])?;
                }
            }
            acc = acc.try_add(&t)?;
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, f: &Poly, point: &[Rational]) -> Rational {
        f.terms
            .iter()
            .map(|(c, m)| {
                m.exps()
                    .iter()
                    .zip(point)
                    .fold(c.clone(), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize))
            })
            .sum()
    }

    /// Moves `f` into `target`, sending variable `i` to `map[i]`. Fails if a
    /// variable that occurs in `f` has no image.
    pub fn transfer(&self, f: &Poly, target: &PolyRing, map: &[Option<usize>]) -> Result<Poly> {
        let mut terms = Vec::with_capacity(f.len());
        for (c, m) in &f.terms {
            let mut exps = vec![0; target.nvars()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] += e,
                    None => {
                        return Err(Error::Precondition(format!(
                            "variable {} has no image in the target ring",
                            self.vars[i]
                        )))
                    }
                }
            }
            terms.push((c.clone(), Monomial::new(exps)));
        }
        Ok(target.from_terms(terms))
    }

    /// Multiplies each term by `h^(d − w(term))` with `d` the maximal
    /// weighted degree. Variables of weight 0 do not count toward the degree.
    pub fn homogenize(&self, f: &Poly, hvar: usize, weights: &[u32]) -> Poly {
        assert_eq!(weights.len(), self.nvars(), "weight vector length");
        assert_eq!(weights[hvar], 1, "homogenizing variable must have weight 1");
        assert!(!f.uses_var(hvar), "polynomial already contains the homogenizing variable");
        let d = f.terms.iter().map(|(_, m)| m.weighted_degree(weights)).max().unwrap_or(0);
        let terms = f
            .terms
            .iter()
            .map(|(c, m)| {
                let k = (d - m.weighted_degree(weights)) as u32;
                (c.clone(), m.with_exp(hvar, k))
            })
            .collect();
        self.from_terms(terms)
    }

    pub fn is_homogeneous(&self, f: &Poly) -> bool {
        f.terms.windows(2).all(|w| w[0].1.degree() == w[1].1.degree())
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(&self.vars[i]);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    /// Canonical text form, terms in descending order:
    /// `t_8^2 - 48*t_8*t_9 - 172/3*t_9^2`.
    pub fn format(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (c, m)) in f.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            let a = c.abs();
            if m.is_one() {
                s.push_str(&format_rational(&a));
            } else if a.is_one() {
                s.push_str(&self.format_monomial(m));
            } else {
                let _ = write!(s, "{}*{}", format_rational(&a), self.format_monomial(m));
            }
        }
        s
    }

    /// Parses sums of products of rationals and variables. Accepts explicit
    /// `*` or juxtaposition (`3/5t_8`, `48t_8t_9`), `^` powers and
    /// parentheses. Variable names are matched longest-first.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        let mut p = Parser { ring: self, src: text.as_bytes(), pos: 0 };
        let f = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(f)
    }
}

struct Parser<'a> {
    ring: &'a PolyRing,
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at offset {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => return Ok(acc),
            };
            first = false;
            let t = self.product()?;
            acc = if sign > 0 { self.ring.add(&acc, &t) } else { self.ring.sub(&acc, &t) };
        }
    }

    fn starts_factor(&mut self) -> bool {
        match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'(' => true,
            Some(_) => self.match_var().is_some(),
            None => false,
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            if self.peek() == Some(b'*') {
                self.pos += 1;
                let f = self.factor()?;
                acc = self.ring.mul(&acc, &f);
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = self.ring.mul(&acc, &f);
            } else {
                return Ok(acc);
            }
        }
    }

    fn number(&mut self) -> Result<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn match_var(&self) -> Option<(usize, usize)> {
        let rest = &self.src[self.pos..];
        self.ring
            .vars
            .iter()
            .enumerate()
            .filter(|(_, v)| rest.starts_with(v.as_bytes()))
            .max_by_key(|(_, v)| v.len())
            .map(|(i, v)| (i, v.len()))
    }

    fn exponent(&mut self) -> Result<u32> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let n = self.number()?;
            return n.parse().map_err(|_| self.error("exponent out of range"));
        }
        Ok(1)
    }

    fn factor(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                let e = self.exponent()?;
                Ok(self.ring.pow(&inner, e))
            }
            Some(c) if c.is_ascii_digit() => {
                let mut lit = self.number()?;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    lit.push('/');
                    lit.push_str(&self.number()?);
                }
                Ok(self.ring.constant(parse_rational(&lit)?))
            }
            Some(_) => {
                let Some((i, len)) = self.match_var() else {
                    return Err(self.error("unknown symbol"));
                };
                self.pos += len;
                let e = self.exponent()?;
                Ok(self.ring.term(Rational::one(), Monomial::var(self.ring.nvars(), i, e)))
            }
            None => Err(self.error("unexpected end of input")),
        }
    }
}
