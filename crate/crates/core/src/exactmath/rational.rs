use num_bigint::{BigInt, Sign};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational numerator in {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational denominator in {s:?}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rational::new(num, den))
}

/// `"p/q"`, or `"p"` when the denominator is 1.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn sign(q: &Rational) -> i8 {
    match q.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

/// True iff `q = (p/r)^2` for integers `p`, `r`.
pub fn is_rational_square(q: &Rational) -> bool {
    // lowest terms: q is a square iff numerator and denominator both are
    is_square_int(q.numer()) && is_square_int(q.denom())
}

/// Exact square root when `q` is a rational square.
pub fn rational_sqrt(q: &Rational) -> Option<Rational> {
    if !is_rational_square(q) {
        return None;
    }
    Some(Rational::new(q.numer().sqrt(), q.denom().sqrt()))
}

/// serde adapter: rationals as `"p/q"` strings.
pub mod serde_rational {
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// serde adapter: rational matrices as nested arrays of `"p/q"` strings.
pub mod serde_rational_rows {
    use super::*;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        rows: &[Vec<Rational>],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        let text: Vec<Vec<String>> = rows
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        text.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
        let text = Vec::<Vec<String>>::deserialize(d)?;
        text.iter()
            .map(|r| r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)
    }
}
