use std::cmp::Ordering;

/// Dense exponent vector over a fixed ordered variable list.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Monomial { exps, deg: e }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.exps.iter().zip(weights).map(|(&e, &w)| e as u64 * w as u64).sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
        }
    }

    /// `self / other`; the caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            deg: self.deg - other.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i)
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = e;
        Monomial::new(exps)
    }

    /// Inserts `k` zero exponents in front (embedding into a ring with new
    /// leading variables).
    pub fn shifted(&self, k: usize) -> Monomial {
        let mut exps = vec![0; k];
        exps.extend_from_slice(&self.exps);
        Monomial { exps, deg: self.deg }
    }
}

/// A monomial order. Variable 0 is the largest variable in every order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Block order: grevlex on the first `block` variables, ties broken by
    /// grevlex on the rest. Eliminates the first block.
    Elimination { block: usize },
    /// Weighted degree first, ties broken by grevlex.
    Weighted { weights: Vec<u32> },
}

fn revlex(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| revlex(a, b))
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => a.deg.cmp(&b.deg).then_with(|| revlex(&a.exps, &b.exps)),
            MonomialOrder::Elimination { block } => {
                let k = *block;
                grevlex(&a.exps[..k], &b.exps[..k]).then_with(|| grevlex(&a.exps[k..], &b.exps[k..]))
            }
            MonomialOrder::Weighted { weights } => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| a.deg.cmp(&b.deg))
                .then_with(|| revlex(&a.exps, &b.exps)),
        }
    }
}
