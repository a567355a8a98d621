//! Elements `a + b*sqrt(disc)` of a quadratic extension of the rationals.
//!
//! The discriminant is normalized at construction: square factors are pulled
//! into `b`, and a perfect-square discriminant collapses the value to a plain
//! rational. A pure rational carries no discriminant at all, so it is
//! compatible with every extension and equality is canonical across fields.
//! Mixing two distinct non-trivial discriminants is refused: the fields are
//! never embedded into a common extension.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rat::Rat;
use crate::Error;

/// Result of extracting the square part of a discriminant:
/// `delta = scale^2 * d` with `d` a squarefree integer, or a perfect square.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiscNormalization {
    Square { root: Rat },
    NonSquare { d: Rat, scale: Rat },
}

/// Writes `delta = scale^2 * d` with `d` a squarefree integer (the squarefree
/// representative of `delta` modulo rational squares), or reports that `delta`
/// is itself the square of a rational.
pub fn normalize_disc(delta: &Rat) -> DiscNormalization {
    if delta.is_zero() {
        return DiscNormalization::Square { root: Rat::zero() };
    }
    // delta = p/q = (p*q) / q^2, so sqrt(delta) = sqrt(p*q) / q.
    let n = delta.numer() * delta.denom();
    let (d, s) = squarefree_decompose(&n);
    let scale = Rat::new(s, delta.denom().clone()).expect("denominator is nonzero");
    if d == BigInt::from(1) {
        DiscNormalization::Square { root: scale }
    } else {
        DiscNormalization::NonSquare {
            d: Rat::from_int(d),
            scale,
        }
    }
}

/// Splits an integer as `n = s^2 * d` with `d` squarefree, by trial division.
fn squarefree_decompose(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let mut m = n.abs();
    let mut d = BigInt::from(if n.is_negative() { -1 } else { 1 });
    let mut s = BigInt::from(1);
    let mut p = BigInt::from(2);
    while &p * &p <= m {
        let mut count = 0u32;
        while (&m % &p).is_zero() {
            m /= &p;
            count += 1;
        }
        if count % 2 == 1 {
            d *= &p;
        }
        if count >= 2 {
            s *= p.pow(count / 2);
        }
        p += 1;
    }
    // The remaining cofactor is prime or 1, hence squarefree.
    d *= m;
    (d, s)
}

/// An element of `Q(sqrt(disc))` for a fixed non-square `disc`, or a plain
/// rational when `disc` is absent. Invariants: `disc` is a squarefree integer
/// and `b != 0` whenever `disc` is present.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QuadExt {
    disc: Option<Rat>,
    a: Rat,
    b: Rat,
}

impl QuadExt {
    pub fn from_rat(a: Rat) -> Self {
        QuadExt {
            disc: None,
            a,
            b: Rat::zero(),
        }
    }

    /// Builds `a + b*sqrt(delta)`, normalizing the discriminant. Square
    /// discriminants (and `b = 0`) degenerate to a plain rational.
    pub fn new(delta: &Rat, a: Rat, b: Rat) -> Self {
        if b.is_zero() {
            return QuadExt::from_rat(a);
        }
        match normalize_disc(delta) {
            DiscNormalization::Square { root } => QuadExt::from_rat(a + b * root),
            DiscNormalization::NonSquare { d, scale } => {
                let b = b * scale;
                if b.is_zero() {
                    QuadExt::from_rat(a)
                } else {
                    QuadExt {
                        disc: Some(d),
                        a,
                        b,
                    }
                }
            }
        }
    }

    /// `sqrt(delta)` itself.
    pub fn sqrt_of(delta: &Rat) -> Self {
        QuadExt::new(delta, Rat::zero(), Rat::one())
    }

    pub fn zero() -> Self {
        QuadExt::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        QuadExt::from_rat(Rat::one())
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn disc(&self) -> Option<&Rat> {
        self.disc.as_ref()
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn radical_part(&self) -> &Rat {
        &self.b
    }

    pub fn is_rational(&self) -> bool {
        self.disc.is_none()
    }

    pub fn as_rat(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Conjugation `a + b*sqrt(d) -> a - b*sqrt(d)`.
    pub fn conj(&self) -> Self {
        QuadExt {
            disc: self.disc.clone(),
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a^2 - disc * b^2` (for negative `disc` this is
    /// `a^2 + |disc| b^2 >= 0`).
    pub fn norm(&self) -> Rat {
        match &self.disc {
            None => &self.a * &self.a,
            Some(d) => &self.a * &self.a - d * &(&self.b * &self.b),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QuadExt::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn merged_disc(&self, rhs: &Self) -> Option<Rat> {
        match (&self.disc, &rhs.disc) {
            (None, d) | (d, None) => d.clone(),
            (Some(d1), Some(d2)) => {
                assert_eq!(
                    d1, d2,
                    "arithmetic on mixed discriminants ({d1} vs {d2}); validate inputs first"
                );
                Some(d1.clone())
            }
        }
    }

    fn normalized(disc: Option<Rat>, a: Rat, b: Rat) -> Self {
        if b.is_zero() {
            QuadExt::from_rat(a)
        } else {
            QuadExt { disc, a, b }
        }
    }
}

/// Checks that the values share at most one non-trivial discriminant and
/// returns it. Used to validate inputs before bulk arithmetic.
pub fn common_disc<'a, I>(items: I) -> Result<Option<Rat>, Error>
where
    I: IntoIterator<Item = &'a QuadExt>,
{
    let mut found: Option<Rat> = None;
    for item in items {
        if let Some(d) = item.disc() {
            match &found {
                None => found = Some(d.clone()),
                Some(prev) if prev == d => {}
                Some(prev) => {
                    return Err(Error::MixedDiscriminants {
                        first: prev.to_string(),
                        second: d.to_string(),
                    })
                }
            }
        }
    }
    Ok(found)
}

impl From<Rat> for QuadExt {
    fn from(a: Rat) -> Self {
        QuadExt::from_rat(a)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_rat(Rat::from_int(n))
    }
}

impl Add for &QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        let disc = self.merged_disc(rhs);
        QuadExt::normalized(disc, &self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        self + &(-rhs)
    }
}

impl Mul for &QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        let disc = self.merged_disc(rhs);
        let cross = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        let mut plain = &self.a * &rhs.a;
        if let Some(d) = &disc {
            let bb = &self.b * &rhs.b;
            if !bb.is_zero() {
                plain = plain + d * &bb;
            }
        }
        QuadExt::normalized(disc, plain, cross)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            disc: self.disc.clone(),
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        -&self
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        &self + &rhs
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        &self * &rhs
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.disc {
            None => write!(f, "{}", self.a),
            Some(d) => write!(f, "{} + {}*sqrt({})", self.a, self.b, d),
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadObj {
    disc: Rat,
    a: Rat,
    b: Rat,
}

impl Serialize for QuadExt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self.as_rat() {
            Some(r) => r.serialize(serializer),
            None => QuadObj {
                disc: self.disc.clone().unwrap(),
                a: self.a.clone(),
                b: self.b.clone(),
            }
            .serialize(serializer),
        }
    }
}

impl<'de> Deserialize<'de> for QuadExt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Plain(Rat),
            Extended(QuadObj),
        }
        Ok(match Repr::deserialize(deserializer)? {
            Repr::Plain(r) => QuadExt::from_rat(r),
            Repr::Extended(o) => QuadExt::new(&o.disc, o.a, o.b),
        })
    }
}
