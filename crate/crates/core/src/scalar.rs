//! Exact arithmetic in a real quadratic field `Q(sqrt d)`.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with rational `a`, `b` and square-free
//! `d >= 1`. Values with `b = 0` are stored with `d = 1`, so a purely
//! rational value mixes freely with any field. Two values carrying distinct
//! radicals cannot be combined; the operator impls panic on that, the
//! `try_*` methods report [`Error::IncompatibleFields`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{common_radicand, ExactField};

/// The field `Q(sqrt d)`; `d = 1` is the rationals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FieldSpec {
    pub d: u64,
}

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec { d: 1 };

    pub fn new(d: u64) -> Result<Self> {
        if d == 0 || !is_square_free(d) {
            return Err(Error::InvalidField(d));
        }
        Ok(FieldSpec { d })
    }

    pub fn is_rational(&self) -> bool {
        self.d == 1
    }

    /// Whether a value living in `Q(sqrt other)` embeds in this field.
    pub fn contains(&self, other: u64) -> bool {
        other == 1 || other == self.d
    }
}

pub(crate) fn is_square_free(d: u64) -> bool {
    let mut k = 2u64;
    while k.saturating_mul(k) <= d {
        if d.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

/// Splits `d` into `s^2 * r` with `r` square-free.
fn split_square(d: u64) -> (u64, u64) {
    let mut outer = 1u64;
    let mut rest = d;
    let mut k = 2u64;
    while k * k <= rest {
        while rest.is_multiple_of(k * k) {
            rest /= k * k;
            outer *= k;
        }
        k += 1;
    }
    (outer, rest)
}

/// An element `a + b*sqrt(d)` of a real quadratic field, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Scalar {
    /// Builds `a + b*sqrt(d)`; `d` must be square-free.
    pub fn new(a: BigRational, b: BigRational, d: u64) -> Result<Self> {
        FieldSpec::new(d)?;
        if d == 1 {
            return Ok(Scalar::rational(a + b));
        }
        Ok(Scalar::canonical(a, b, d))
    }

    fn canonical(a: BigRational, b: BigRational, d: u64) -> Self {
        if b.is_zero() || d == 1 {
            Scalar {
                a,
                b: BigRational::zero(),
                d: 1,
            }
        } else {
            Scalar { a, b, d }
        }
    }

    pub fn rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 1,
        }
    }

    pub fn from_ratio_i64(numer: i64, denom: i64) -> Self {
        Scalar::rational(BigRational::new(numer.into(), denom.into()))
    }

    /// `sqrt(d)` for a non-negative integer `d`; square factors are pulled out.
    pub fn sqrt(d: u64) -> Self {
        if d == 0 {
            return Scalar::zero();
        }
        let (outer, rest) = split_square(d);
        let coeff = BigRational::from_integer(BigInt::from(outer));
        if rest == 1 {
            Scalar::rational(coeff)
        } else {
            Scalar::canonical(BigRational::zero(), coeff, rest)
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.b
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec { d: self.d }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn common(&self, other: &Scalar) -> Result<u64> {
        common_radicand(self.d, other.d).ok_or(Error::IncompatibleFields {
            left: self.d,
            right: other.d,
        })
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.common(other)?;
        Ok(Scalar::canonical(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.common(other)?;
        Ok(Scalar::canonical(&self.a - &other.a, &self.b - &other.b, d))
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        let d = self.common(other)?;
        let dd = BigRational::from_integer(BigInt::from(d));
        let a = &self.a * &other.a + &self.b * &other.b * dd;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Scalar::canonical(a, b, d))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.common(other)?;
        other.try_recip().and_then(|inv| self.try_mul(&inv))
    }

    /// Field norm `a^2 - b^2 d`.
    pub fn norm(&self) -> BigRational {
        let dd = BigRational::from_integer(BigInt::from(self.d));
        &self.a * &self.a - &self.b * &self.b * dd
    }

    pub fn conjugate(&self) -> Scalar {
        Scalar::canonical(self.a.clone(), -self.b.clone(), self.d)
    }

    pub fn try_recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar::canonical(&self.a / &n, -(&self.b / &n), self.d))
    }

    /// Exact sign of the real number `a + b*sqrt(d)`.
    pub fn sign(&self) -> i8 {
        let sa = rat_sign(&self.a);
        let sb = rat_sign(&self.b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 || sa == sb {
            return sb;
        }
        let dd = BigRational::from_integer(BigInt::from(self.d));
        let lhs = &self.a * &self.a;
        let rhs = &self.b * &self.b * dd;
        // a^2 == b^2 d is impossible for square-free d > 1 and b != 0
        if lhs > rhs {
            sa
        } else {
            sb
        }
    }

    pub fn try_cmp(&self, other: &Scalar) -> Result<Ordering> {
        let diff = self.try_sub(other)?;
        Ok(diff.sign().cmp(&0))
    }

    pub fn abs(&self) -> Scalar {
        if self.sign() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }
}

fn rat_sign(r: &BigRational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::rational(BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::rational(BigRational::one())
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        self.try_cmp(other)
            .expect("compared scalars from different fields")
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl ExactField for Scalar {
    fn from_ratio(numer: i64, denom: i64) -> Self {
        Scalar::from_ratio_i64(numer, denom)
    }

    fn radicand(&self) -> u64 {
        self.d
    }

    fn signum_i8(&self) -> i8 {
        self.sign()
    }

    fn approx_f64(&self) -> f64 {
        let a = num_traits::ToPrimitive::to_f64(&self.a).unwrap_or(f64::NAN);
        let b = num_traits::ToPrimitive::to_f64(&self.b).unwrap_or(f64::NAN);
        a + b * (self.d as f64).sqrt()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_ratio_i64(v, 1)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::rational(v)
    }
}

// ---------------------------------------------------------------------------
// literal grammar

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rat(&self.a));
        }
        let mag = self.b.abs();
        let radical = if mag.is_one() {
            format!("sqrt({})", self.d)
        } else {
            format!("{}*sqrt({})", fmt_rat(&mag), self.d)
        };
        let neg = self.b.is_negative();
        if self.a.is_zero() {
            write!(f, "{}{}", if neg { "-" } else { "" }, radical)
        } else {
            write!(
                f,
                "{}{}{}",
                fmt_rat(&self.a),
                if neg { "-" } else { "+" },
                radical
            )
        }
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_str(&mut self, s: &str) -> Result<()> {
        if self.bytes[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn sign(&mut self) -> Option<bool> {
        if self.eat(b'-') {
            Some(true)
        } else if self.eat(b'+') {
            Some(false)
        } else {
            None
        }
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(BigInt::parse_bytes(text.as_bytes(), 10).expect("digits parse"))
    }

    fn rat(&mut self) -> Result<BigRational> {
        let numer = self.uint()?;
        if self.eat(b'/') {
            let at = self.pos;
            let denom = self.uint()?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    position: at,
                    message: "zero denominator".into(),
                });
            }
            Ok(BigRational::new(numer, denom))
        } else {
            Ok(BigRational::from_integer(numer))
        }
    }

    fn radicand(&mut self) -> Result<u64> {
        self.expect_str("sqrt(")?;
        let at = self.pos;
        let d = self.uint()?;
        self.expect_str(")")?;
        let (sign, digits) = d.to_u64_digits();
        match (sign, digits.as_slice()) {
            (Sign::NoSign, _) => Ok(0),
            (_, [v]) => Ok(*v),
            _ => Err(Error::Parse {
                position: at,
                message: "radicand too large".into(),
            }),
        }
    }

    /// `rat`, `rat*sqrt(d)` or `sqrt(d)`; returns (coefficient, radicand or None).
    fn term(&mut self) -> Result<(BigRational, Option<u64>)> {
        if self.peek() == Some(b's') {
            let d = self.radicand()?;
            return Ok((BigRational::one(), Some(d)));
        }
        let coeff = self.rat()?;
        if self.eat(b'*') {
            let d = self.radicand()?;
            Ok((coeff, Some(d)))
        } else {
            Ok((coeff, None))
        }
    }
}

fn radical_value(coeff: BigRational, d: u64) -> Scalar {
    Scalar::sqrt(d) * Scalar::rational(coeff)
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(text: &str) -> Result<Scalar> {
        let mut cur = Cursor {
            bytes: text.as_bytes(),
            pos: 0,
        };
        let negative = cur.sign() == Some(true);
        let (coeff, radical) = cur.term()?;
        let coeff = if negative { -coeff } else { coeff };
        let value = match radical {
            Some(d) => {
                if cur.peek().is_some() {
                    return cur.err("unexpected trailing input after radical term");
                }
                radical_value(coeff, d)
            }
            None => {
                let head = Scalar::rational(coeff);
                match cur.sign() {
                    None => head,
                    Some(neg) => {
                        let (c2, r2) = cur.term()?;
                        let Some(d) = r2 else {
                            return cur.err("second term must carry sqrt(..)");
                        };
                        let c2 = if neg { -c2 } else { c2 };
                        head + radical_value(c2, d)
                    }
                }
            }
        };
        if cur.peek().is_some() {
            return cur.err("unexpected trailing input");
        }
        Ok(value)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(de)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(s("1") * s("1"), Scalar::one());
        assert_eq!(s("1-sqrt(2)") * s("1+sqrt(2)"), s("-1"));
        assert_eq!(s("1/2+1/2*sqrt(3)") + s("1/2-1/2*sqrt(3)"), Scalar::one());
        assert_eq!(s("1/2+1/2*sqrt(3)") + s("1/2-1/2*sqrt(3)"), Scalar::one());
        assert_eq!(s("sqrt(2)") / s("sqrt(2)"), Scalar::one());
        assert!(s("sqrt(3)").try_add(&s("sqrt(2)")).is_err());
        assert_eq!(s("1").try_div(&Scalar::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn sign_examples() {
        assert_eq!(s("1-sqrt(2)").sign(), -1);
        assert_eq!(s("0*sqrt(3)").sign(), 0);
        assert_eq!(s("-1/2+1/2*sqrt(3)").sign(), 1);
        assert_eq!(s("3-sqrt(8)").sign(), 1);
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(s("1/2").cmp(&s("1/2*sqrt(3)")), Ordering::Less);
        let x = s("5/7-2/3*sqrt(3)");
        assert_eq!(x.cmp(&x), Ordering::Equal);
        // sqrt(2) - 1 < 1/2  <=>  sqrt(2) < 3/2  <=>  2 < 9/4
        assert_eq!(s("-1+sqrt(2)").cmp(&s("1/2")), Ordering::Less);
    }

    #[test]
    fn parse_examples() {
        let x = s("1/2+1/2*sqrt(3)");
        assert_eq!(x.rational_part(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(x.radical_part(), &BigRational::new(1.into(), 2.into()));
        assert_eq!(x.field().d, 3);
        assert_eq!(s("-1"), Scalar::from(-1));
        assert_eq!(s("3/6").to_string(), "1/2");
        assert_eq!(s("sqrt(12)").to_string(), "2*sqrt(3)");
        assert_eq!(s("-sqrt(2)").to_string(), "-sqrt(2)");
        assert_eq!(s("1-1*sqrt(2)").to_string(), "1-sqrt(2)");
        assert_eq!(s("0-1/3*sqrt(3)").to_string(), "-1/3*sqrt(3)");
        assert_eq!(s("sqrt(4)").to_string(), "2");
    }

    #[test]
    fn parse_errors_carry_position() {
        match "1/0".parse::<Scalar>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        match "1+2".parse::<Scalar>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("{other:?}"),
        }
        assert!("".parse::<Scalar>().is_err());
        assert!("1/2*sqrt(3".parse::<Scalar>().is_err());
        assert!("sqrt(2)+1".parse::<Scalar>().is_err());
        assert!("1 ".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_spec_rejects_square_factors() {
        assert!(FieldSpec::new(8).is_err());
        assert!(FieldSpec::new(0).is_err());
        assert!(FieldSpec::new(6).is_ok());
        assert!(Scalar::new(BigRational::one(), BigRational::one(), 4).is_err());
    }

    #[test]
    fn rational_embeds_in_any_field() {
        let q = s("3/4");
        assert_eq!((q.clone() + s("sqrt(2)")).field().d, 2);
        assert_eq!((q + s("sqrt(3)")).field().d, 3);
    }
}
