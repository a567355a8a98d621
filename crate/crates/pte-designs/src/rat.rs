//! Arbitrary-precision rationals in canonical reduced form.
//!
//! Every value keeps `gcd(|num|, den) = 1` and `den >= 1`; zero is `0/1`.
//! Equality is structural, so values can serve as multiset keys.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::Error;

/// Exact rational number. The inner `BigRational` is always reduced with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    /// Builds `num/den` in canonical form. A zero denominator is an error.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, Error> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(BigRational::new(num.into(), den)))
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Rat(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self, Error> {
        if self.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Rat(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rat(self.0.pow(exp as i32))
    }

    /// Largest integer `<= self`.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    /// Exact square root, when one exists in the rationals.
    ///
    /// In canonical form this happens exactly when numerator and denominator
    /// are both perfect integer squares; the returned root is non-negative.
    pub fn exact_sqrt(&self) -> Option<Rat> {
        if self.is_negative() {
            return None;
        }
        let num = exact_int_sqrt(self.numer())?;
        let den = exact_int_sqrt(self.denom())?;
        Some(Rat(BigRational::new(num, den)))
    }

    /// True when the value is the square of a rational.
    pub fn is_rational_square(&self) -> bool {
        self.exact_sqrt().is_some()
    }
}

/// Integer square root when `n` is a perfect square.
pub(crate) fn exact_int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    if &root * &root == *n {
        Some(root)
    } else {
        None
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::from_int(n)
    }
}

impl From<BigInt> for Rat {
    fn from(n: BigInt) -> Self {
        Rat::from_int(n)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Rat> for Rat {
            type Output = Rat;
            fn $method(self, rhs: &'a Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<Rat> for &'a Rat {
            type Output = Rat;
            fn $method(self, rhs: Rat) -> Rat {
                Rat((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl<'a> Div<&'a Rat> for &'a Rat {
    type Output = Rat;
    fn div(self, rhs: &'a Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero rational");
        Rat(&self.0 / &rhs.0)
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rat {
    type Err = Error;

    /// Parses `"p/q"` or a bare integer `"p"`. Decimals are rejected.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let parse_int = |t: &str| {
            BigInt::from_str(t).map_err(|_| Error::BadRational {
                input: s.to_string(),
            })
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let num = parse_int(p.trim())?;
                let den = parse_int(q.trim())?;
                Rat::new(num, den)
            }
            None => Ok(Rat::from_int(parse_int(s)?)),
        }
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rat::from_str(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    #[test]
    fn construction_reduces() {
        assert_eq!(r(2, 4), r(1, 2));
        assert_eq!(r(-3, -6), r(1, 2));
        assert_eq!(r(0, 7), Rat::zero());
        assert_eq!(r(0, 7).to_string(), "0");
        assert_eq!(r(-3, 6).to_string(), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(Rat::new(1, 0), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["0", "7", "-7", "1/2", "-22/7", "1000000000000000000000/3"] {
            let v: Rat = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert_eq!("2/4".parse::<Rat>().unwrap(), r(1, 2));
        assert!("1.5".parse::<Rat>().is_err());
        assert!("1/0".parse::<Rat>().is_err());
        assert!("".parse::<Rat>().is_err());
    }

    #[test]
    fn rational_square_detection() {
        assert!(!r(1, 133).is_rational_square());
        assert_eq!(r(4, 9).exact_sqrt(), Some(r(2, 3)));
        assert!(!r(4, 3).is_rational_square());
        assert!(!r(-4, 9).is_rational_square());
        assert_eq!(Rat::zero().exact_sqrt(), Some(Rat::zero()));
    }

    fn arb_rat() -> impl Strategy<Value = Rat> {
        (-50i64..=50, 1i64..=40).prop_map(|(n, d)| r(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_rat(), b in arb_rat(), c in arb_rat()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn canonical_form_unique(n in -50i64..=50, d in 1i64..=40, k in 1i64..=9) {
            // The same value constructed through a scaled representation
            // compares equal and prints identically.
            let x = r(n, d);
            let y = Rat::new(n * k, d * k).unwrap();
            prop_assert_eq!(&x, &y);
            prop_assert_eq!(x.to_string(), y.to_string());
        }

        #[test]
        fn square_root_is_exact(a in arb_rat()) {
            let sq = &a * &a;
            let root = sq.exact_sqrt().unwrap();
            prop_assert_eq!(&root * &root, sq);
            prop_assert!(!root.is_negative());
        }
    }
}
