use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{format_rational, is_rational_square, serde_rational, sign, Rational};
use crate::error::{Error, Result};

/// An element `a + b·θ` of the quadratic field `Q(θ)`, `θ² = m`.
///
/// Values with `b = 0` are the embedding of `Q` and combine with elements of
/// any field; otherwise both operands must carry the same `m`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "QuadExtRepr", into = "QuadExtRepr")]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    m: Rational,
}

#[derive(Serialize, Deserialize)]
struct QuadExtRepr {
    #[serde(with = "serde_rational")]
    a: Rational,
    #[serde(with = "serde_rational")]
    b: Rational,
    #[serde(with = "serde_rational")]
    m: Rational,
}

impl TryFrom<QuadExtRepr> for QuadExt {
    type Error = Error;
    fn try_from(r: QuadExtRepr) -> Result<Self> {
        QuadExt::new(r.a, r.b, r.m)
    }
}

impl From<QuadExt> for QuadExtRepr {
    fn from(x: QuadExt) -> Self {
        QuadExtRepr { a: x.a, b: x.b, m: x.m }
    }
}

pub fn check_generator(m: &Rational) -> Result<()> {
    if m.is_zero() || is_rational_square(m) {
        return Err(Error::SquareGenerator(m.clone()));
    }
    Ok(())
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, m: Rational) -> Result<Self> {
        check_generator(&m)?;
        Ok(QuadExt { a, b, m })
    }

    /// Embeds a rational into `Q(θ)`.
    pub fn rational(a: Rational, m: &Rational) -> Self {
        QuadExt { a, b: Rational::zero(), m: m.clone() }
    }

    pub fn theta(m: &Rational) -> Self {
        QuadExt { a: Rational::zero(), b: Rational::one(), m: m.clone() }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn m(&self) -> &Rational {
        &self.m
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common_m(&self, other: &Self) -> Result<Rational> {
        match (self.b.is_zero(), other.b.is_zero()) {
            (_, true) => Ok(self.m.clone()),
            (true, false) => Ok(other.m.clone()),
            (false, false) if self.m == other.m => Ok(self.m.clone()),
            _ => Err(Error::FieldMismatch { left: Box::new(self.m.clone()), right: Box::new(other.m.clone()) }),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let m = self.common_m(other)?;
        Ok(QuadExt { a: &self.a + &other.a, b: &self.b + &other.b, m })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let m = self.common_m(other)?;
        Ok(QuadExt { a: &self.a - &other.a, b: &self.b - &other.b, m })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let m = self.common_m(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &m;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadExt { a, b, m })
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.common_m(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn conj(&self) -> Self {
        QuadExt { a: self.a.clone(), b: -&self.b, m: self.m.clone() }
    }

    /// `a² − m·b²`, nonzero for nonzero elements since `m` is not a square.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.m * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadExt { a: &self.a / &n, b: -&self.b / &n, m: self.m.clone() })
    }

    pub fn scale(&self, q: &Rational) -> Self {
        QuadExt { a: &self.a * q, b: &self.b * q, m: self.m.clone() }
    }

    /// Same value, reinterpreted in `Q(√m)`; fails unless the value is rational
    /// or already lives there.
    pub fn in_field(&self, m: &Rational) -> Result<Self> {
        if self.b.is_zero() || &self.m == m {
            Ok(QuadExt { a: self.a.clone(), b: self.b.clone(), m: m.clone() })
        } else {
            Err(Error::FieldMismatch { left: Box::new(self.m.clone()), right: Box::new(m.clone()) })
        }
    }
}

/// Exact sign of `a + b·√m` under the real embedding `θ ↦ +√m`.
///
/// Rational values (`b = 0`) have a sign in every field; otherwise `m > 0`
/// is required.
pub fn qsign(x: &QuadExt) -> Result<i8> {
    let sa = sign(&x.a);
    let sb = sign(&x.b);
    if sb == 0 {
        return Ok(sa);
    }
    if sign(&x.m) < 0 {
        return Err(Error::NoRealOrder(x.m.clone()));
    }
    if sa == 0 || sa == sb {
        return Ok(sb);
    }
    // opposite signs: the larger magnitude wins; a² = b²m is impossible
    let a2 = &x.a * &x.a;
    let b2m = &x.b * &x.b * &x.m;
    Ok(if a2 > b2m { sa } else { sb })
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b && (self.b.is_zero() || self.m == other.m)
    }
}

impl Eq for QuadExt {}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        write!(
            f,
            "{} + {}*θ [θ^2 = {}]",
            format_rational(&self.a),
            format_rational(&self.b),
            format_rational(&self.m)
        )
    }
}

// Operator forms panic on a field mismatch; use the `try_*` methods on
// values of unknown provenance.
impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        self.try_add(rhs).expect("quadratic field mismatch")
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self.try_sub(rhs).expect("quadratic field mismatch")
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        self.try_mul(rhs).expect("quadratic field mismatch")
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, m: self.m.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    #[test]
    fn sign_examples() {
        let x = QuadExt::new(int(3), int(-2), int(2)).unwrap();
        assert_eq!(qsign(&x).unwrap(), 1);
        let z = QuadExt::new(int(0), int(0), int(2)).unwrap();
        assert_eq!(qsign(&z).unwrap(), 0);
        let y = QuadExt::new(int(-3), int(2), int(2)).unwrap();
        assert_eq!(qsign(&y).unwrap(), -1);
        let w = QuadExt::new(int(1), int(-1), int(3)).unwrap();
        assert_eq!(qsign(&w).unwrap(), -1);
    }

    #[test]
    fn square_generator_rejected() {
        assert!(matches!(
            QuadExt::new(int(-1), int(1), int(4)),
            Err(Error::SquareGenerator(_))
        ));
        assert!(QuadExt::new(int(1), int(1), int(0)).is_err());
        assert!(QuadExt::new(int(1), int(1), rat(9, 4)).is_err());
    }

    #[test]
    fn no_real_order_for_imaginary_fields() {
        let i = QuadExt::theta(&int(-1));
        assert!(matches!(qsign(&i), Err(Error::NoRealOrder(_))));
        assert_eq!(qsign(&QuadExt::rational(int(-5), &int(-1))).unwrap(), -1);
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let x = QuadExt::theta(&int(2));
        let y = QuadExt::theta(&int(3));
        assert!(matches!(x.try_add(&y), Err(Error::FieldMismatch { .. })));
        assert!(x.try_mul(&y).is_err());
        let q = QuadExt::rational(int(7), &int(3));
        assert_eq!(x.try_mul(&q).unwrap(), QuadExt::new(int(0), int(7), int(2)).unwrap());
    }

    #[test]
    fn theta_squared() {
        let t = QuadExt::theta(&rat(7600, 3));
        assert_eq!(&t * &t, QuadExt::rational(rat(7600, 3), &rat(7600, 3)));
    }

    #[test]
    fn inverse() {
        let x = QuadExt::new(rat(3, 2), int(-5), int(-7)).unwrap();
        let one = &x * &x.inv().unwrap();
        assert_eq!(one, QuadExt::rational(int(1), &int(-7)));
        assert!(QuadExt::rational(int(0), &int(2)).inv().is_err());
    }

    #[test]
    fn json_shape() {
        let x = QuadExt::new(rat(3, 5), int(-1), int(-2)).unwrap();
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"a":"3/5","b":"-1","m":"-2"}"#);
        let back: QuadExt = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<QuadExt>(r#"{"a":"1","b":"1","m":"4"}"#).is_err());
    }
}
