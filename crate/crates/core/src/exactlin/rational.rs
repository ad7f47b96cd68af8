//! Exact rationals over arbitrary-precision integers.
//!
//! Values are always stored reduced with a positive denominator; zero is `0/1`.
//! The textual form is `p/q`, or just `p` when the denominator is one, with the
//! sign carried by the numerator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: BigInt, denom: BigInt) -> Result<Self, Error> {
        if denom.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Rational(BigRational::new(numer, denom)))
    }

    pub fn from_integer(v: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(v.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

/// Least common multiple of the denominators of `values` (1 for an empty slice).
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Scales a rational vector to a primitive integer vector spanning the same line.
/// The first nonzero entry of the result is positive.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values);
    let mut ints: Vec<BigInt> = values
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    let content = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if !content.is_zero() && !content.is_one() {
        for v in ints.iter_mut() {
            *v = &*v / &content;
        }
    }
    if let Some(first) = ints.iter().find(|v| !v.is_zero()) {
        if first.is_negative() {
            for v in ints.iter_mut() {
                *v = -&*v;
            }
        }
    }
    ints
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let parse_int = |t: &str| {
            let t = t.trim();
            let digits = t.strip_prefix(['-', '+']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("invalid rational {s:?}")));
            }
            BigInt::from_str(t).map_err(|_| Error::Parse(format!("invalid rational {s:?}")))
        };
        match s.split_once('/') {
            None => Ok(Rational::from_integer(parse_int(s)?)),
            Some((p, q)) => {
                let q = parse_int(q)?;
                if q.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in {s:?}")));
                }
                Rational::new(parse_int(p)?, q)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $tr for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &'a Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}
