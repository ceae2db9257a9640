//! Exact rational scalars.
//!
//! [`Scalar`] is the field every computation in this crate runs over: an
//! arbitrary-precision rational kept in lowest terms with a positive
//! denominator. There is no floating point anywhere; equality of two
//! scalars is mathematical equality.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

/// An exact rational number (always reduced, denominator > 0).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(BigRational);

impl Scalar {
    /// Builds `numer / denom`, reducing to lowest terms.
    ///
    /// Panics if `denom` is zero.
    pub fn new(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "scalar denominator must be nonzero");
        Scalar(BigRational::new(numer, denom))
    }

    /// The integer `n` as a scalar.
    pub fn int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// The fraction `p/q` from machine integers. Panics if `q == 0`.
    pub fn ratio(p: i64, q: i64) -> Self {
        Self::new(BigInt::from(p), BigInt::from(q))
    }

    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    /// Numerator of the reduced form (carries the sign).
    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator of the reduced form (always positive).
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "cannot invert zero");
        Scalar(self.0.recip())
    }

    /// Integer power, allowing negative exponents. Panics on `0^n` with `n < 0`.
    pub fn pow(&self, exp: i64) -> Self {
        if exp == 0 {
            return Scalar::one();
        }
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let mut acc = Scalar::one();
        for _ in 0..exp.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// True when the denominator is 1.
    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// The value as an `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if self.0.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// A `k`-digit decimal rendering (round half away from zero).
    ///
    /// This is a convenience for human reading only; every interface of the
    /// crate exchanges exact `p/q` strings.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let ten_k = BigInt::from(10u32).pow(digits as u32);
        let num = self.numer().abs() * &ten_k;
        let den = self.denom().clone();
        let mut quot = &num / &den;
        let rem = &num % &den;
        if &rem * 2 >= den {
            quot += 1;
        }
        let int_part = &quot / &ten_k;
        let frac_part = &quot % &ten_k;
        let sign = if self.is_negative() && !quot.is_zero() {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
        }
    }
}

impl fmt::Display for Scalar {
    /// Exact serialization: `p/q`, or just `p` when the denominator is 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Failure to parse a `p/q` string.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {input:?}: {reason}")]
pub struct ParseScalarError {
    pub input: String,
    pub reason: &'static str,
}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason| ParseScalarError {
            input: s.to_owned(),
            reason,
        };
        let trimmed = s.trim();
        let (num_str, den_str) = match trimmed.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (trimmed, None),
        };
        let numer: BigInt = num_str
            .parse()
            .map_err(|_| err("numerator is not an integer"))?;
        let denom: BigInt = match den_str {
            Some(d) => d.parse().map_err(|_| err("denominator is not an integer"))?,
            None => BigInt::one(),
        };
        if denom.is_zero() {
            return Err(err("denominator is zero"));
        }
        Ok(Scalar(BigRational::new(numer, denom)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(de::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        (&self).div(&rhs)
    }
}
impl Div<&Scalar> for Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        (&self).div(rhs)
    }
}
impl Div<Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        self.div(&rhs)
    }
}
impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero scalar");
        Scalar(&self.0 / &rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}
impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display_uses_p_over_q_form() {
        assert_eq!(Scalar::ratio(-7, 2).to_string(), "-7/2");
        assert_eq!(Scalar::ratio(6, 3).to_string(), "2");
        assert_eq!(Scalar::int(0).to_string(), "0");
    }

    #[test]
    fn parse_round_trips_and_rejects_zero_denominator() {
        assert_eq!("  -7/2 ".parse::<Scalar>().unwrap(), Scalar::ratio(-7, 2));
        assert_eq!("15".parse::<Scalar>().unwrap(), Scalar::int(15));
        assert_eq!("4/-6".parse::<Scalar>().unwrap(), Scalar::ratio(-2, 3));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("a/2".parse::<Scalar>().is_err());
    }

    #[test]
    fn pow_handles_negative_exponents() {
        let q = Scalar::ratio(3, 2);
        assert_eq!(q.pow(3), Scalar::ratio(27, 8));
        assert_eq!(q.pow(-2), Scalar::ratio(4, 9));
        assert_eq!(q.pow(0), Scalar::one());
    }

    #[test]
    fn decimal_rendering_rounds() {
        assert_eq!(Scalar::ratio(1, 3).to_decimal_string(4), "0.3333");
        assert_eq!(Scalar::ratio(-7, 2).to_decimal_string(1), "-3.5");
        assert_eq!(Scalar::ratio(2, 3).to_decimal_string(2), "0.67");
        assert_eq!(Scalar::int(15).to_decimal_string(0), "15");
    }

    proptest! {
        // a/b + c/d must equal (ad + cb)/(bd) exactly and come out reduced.
        #[test]
        fn addition_matches_cross_multiplication(
            a in -1000i64..1000, b in 1i64..100, c in -1000i64..1000, d in 1i64..100
        ) {
            let lhs = Scalar::ratio(a, b) + Scalar::ratio(c, d);
            let rhs = Scalar::ratio(a * d + c * b, b * d);
            prop_assert_eq!(&lhs, &rhs);
            let g = num_integer::gcd(lhs.numer().clone(), lhs.denom().clone());
            prop_assert!(g == num_bigint::BigInt::from(1));
            prop_assert!(lhs.denom() > &num_bigint::BigInt::from(0));
        }

        #[test]
        fn serde_string_round_trip(a in -10000i64..10000, b in 1i64..1000) {
            let s = Scalar::ratio(a, b);
            let json = serde_json::to_string(&s).unwrap();
            let back: Scalar = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(s, back);
        }
    }
}
