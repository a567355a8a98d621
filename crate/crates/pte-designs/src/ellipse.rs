//! Norm-form conics `C_D(r)`, the embedding into `Q(sqrt(-D))`, the power-sum
//! design criterion, and integer shell enumeration.
//!
//! A finite multiset on `C_D(r)` is an n-design exactly when the k-th power
//! sums of the embedded points vanish for `1 <= k <= n`; everything here runs
//! on that criterion in exact arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::quad::QuadExt;
use crate::rat::Rat;
use crate::Error;

/// Which of the two integral norm forms applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// `D = 1, 2 (mod 4)`: form `x^2 + D y^2`.
    OneTwo,
    /// `D = 3 (mod 4)`: form `x^2 + x y + ((1+D)/4) y^2`.
    Three,
}

pub fn branch_of(d: u64) -> Branch {
    if d % 4 == 3 {
        Branch::Three
    } else {
        Branch::OneTwo
    }
}

pub(crate) fn is_squarefree_u64(mut n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p * p) {
            return false;
        }
        while n.is_multiple_of(p) {
            n /= p;
        }
        p += 1;
    }
    true
}

pub(crate) fn validate_d(d: u64) -> Result<(), Error> {
    if d == 0 || !is_squarefree_u64(d) {
        return Err(Error::NotSquarefree(d));
    }
    Ok(())
}

/// Evaluates the norm form of `C_D` at `(x, y)`.
pub fn norm_form(d: u64, x: &Rat, y: &Rat) -> Result<Rat, Error> {
    validate_d(d)?;
    let dd = Rat::from_int(d as i64);
    Ok(match branch_of(d) {
        Branch::OneTwo => x * x + &dd * &(y * y),
        Branch::Three => {
            // (1+D)/4 is an integer for D = 3 mod 4.
            let coeff = Rat::new(1 + d as i64, 4).unwrap();
            x * x + &(x * y) + &(&coeff * &(y * y))
        }
    })
}

/// A rational point on `C_D(r)` with its declared norm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipsePoint {
    d: u64,
    x: Rat,
    y: Rat,
    r: Rat,
}

impl EllipsePoint {
    pub fn new(d: u64, x: Rat, y: Rat, r: Rat) -> Result<Self, Error> {
        let value = norm_form(d, &x, &y)?;
        if value != r {
            return Err(Error::PointOffConic {
                point: format!("({x}, {y})"),
                expected: r.to_string(),
                actual: value.to_string(),
            });
        }
        if r.is_zero() || r.is_negative() {
            return Err(Error::InvalidNorm(r.to_string()));
        }
        Ok(EllipsePoint { d, x, y, r })
    }

    /// Point whose norm is computed from the coordinates.
    pub fn from_coords(d: u64, x: Rat, y: Rat) -> Result<Self, Error> {
        let r = norm_form(d, &x, &y)?;
        EllipsePoint::new(d, x, y, r)
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn x(&self) -> &Rat {
        &self.x
    }

    pub fn y(&self) -> &Rat {
        &self.y
    }

    pub fn norm(&self) -> &Rat {
        &self.r
    }

    /// Embeds the point into `Q(sqrt(-D))` so that the field norm of the
    /// image equals the declared conic norm.
    pub fn embed(&self) -> QuadExt {
        embed_coords(self.d, &self.x, &self.y)
    }
}

pub fn embed_coords(d: u64, x: &Rat, y: &Rat) -> QuadExt {
    let disc = Rat::from_int(-(d as i64));
    match branch_of(d) {
        Branch::OneTwo => QuadExt::new(&disc, x.clone(), y.clone()),
        Branch::Three => {
            let half_y = y / &Rat::from_int(2);
            QuadExt::new(&disc, x + &half_y, half_y)
        }
    }
}

/// A non-empty multiset of points sharing one `(D, r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignSet {
    #[serde(rename = "D")]
    d: u64,
    r: Rat,
    points: Vec<(Rat, Rat)>,
}

impl DesignSet {
    pub fn new(d: u64, r: Rat, points: Vec<(Rat, Rat)>) -> Result<Self, Error> {
        validate_d(d)?;
        if points.is_empty() {
            return Err(Error::EmptyDesign);
        }
        if r.is_zero() || r.is_negative() {
            return Err(Error::InvalidNorm(r.to_string()));
        }
        for (x, y) in &points {
            let value = norm_form(d, x, y)?;
            if value != r {
                return Err(Error::PointOffConic {
                    point: format!("({x}, {y})"),
                    expected: r.to_string(),
                    actual: value.to_string(),
                });
            }
        }
        Ok(DesignSet { d, r, points })
    }

    /// Re-validates a deserialized value (serde bypasses `new`).
    pub fn validate(&self) -> Result<(), Error> {
        DesignSet::new(self.d, self.r.clone(), self.points.clone()).map(|_| ())
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn norm(&self) -> &Rat {
        &self.r
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coords(&self) -> &[(Rat, Rat)] {
        &self.points
    }

    pub fn embedded(&self) -> Vec<QuadExt> {
        self.points
            .iter()
            .map(|(x, y)| embed_coords(self.d, x, y))
            .collect()
    }

    /// Same point multiset regardless of listing order.
    pub fn same_point_multiset(&self, other: &DesignSet) -> bool {
        if self.d != other.d || self.r != other.r || self.points.len() != other.points.len() {
            return false;
        }
        let mut a = self.points.clone();
        let mut b = other.points.clone();
        a.sort();
        b.sort();
        a == b
    }
}

fn partial_power_sums(points: &[QuadExt], max_k: u32) -> Vec<QuadExt> {
    let mut powers: Vec<QuadExt> = points.to_vec();
    let mut sums = Vec::with_capacity(max_k as usize);
    for k in 1..=max_k {
        if k > 1 {
            for (p, base) in powers.iter_mut().zip(points) {
                *p = &*p * base;
            }
        }
        sums.push(powers.iter().fold(QuadExt::zero(), |acc, p| &acc + p));
    }
    sums
}

fn merge_sums(mut a: Vec<QuadExt>, b: Vec<QuadExt>) -> Vec<QuadExt> {
    for (x, y) in a.iter_mut().zip(&b) {
        *x = &*x + y;
    }
    a
}

/// Power sums of the embedded points for `k = 1..=max_k`, sequential path.
pub fn power_sums_upto_seq(set: &DesignSet, max_k: u32) -> Vec<QuadExt> {
    partial_power_sums(&set.embedded(), max_k)
}

/// Parallel path: points are chunked, partial sums merged exactly, so the
/// result is identical to the sequential one.
#[cfg(feature = "parallel")]
pub fn power_sums_upto_par(set: &DesignSet, max_k: u32) -> Vec<QuadExt> {
    use rayon::prelude::*;
    let embedded = set.embedded();
    embedded
        .par_chunks(64)
        .map(|chunk| partial_power_sums(chunk, max_k))
        .reduce(
            || vec![QuadExt::zero(); max_k as usize],
            merge_sums,
        )
}

pub fn power_sums_upto(set: &DesignSet, max_k: u32) -> Vec<QuadExt> {
    #[cfg(feature = "parallel")]
    {
        power_sums_upto_par(set, max_k)
    }
    #[cfg(not(feature = "parallel"))]
    {
        power_sums_upto_seq(set, max_k)
    }
}

/// `sum over X of embed(p)^k`, multiplicity respected.
pub fn power_sum(set: &DesignSet, k: u32) -> QuadExt {
    assert!(k >= 1);
    power_sums_upto(set, k).pop().unwrap()
}

/// Power-sum criterion: all embedded power sums vanish for `1 <= k <= n`.
pub fn is_design(set: &DesignSet, n: u32) -> bool {
    power_sums_upto(set, n).iter().all(QuadExt::is_zero)
}

/// First degree `1 <= k <= n` whose power sum does not vanish, if any.
pub fn first_failing_degree(set: &DesignSet, n: u32) -> Option<u32> {
    power_sums_upto(set, n)
        .iter()
        .position(|s| !s.is_zero())
        .map(|idx| idx as u32 + 1)
}

/// Same criterion through elementary symmetric functions; by Newton's
/// identities this must agree with `is_design` whenever `n <= #X`.
pub fn elementary_symmetric_check(set: &DesignSet, n: u32) -> Result<bool, Error> {
    let m = set.len();
    if (n as usize) > m {
        return Err(Error::DegreeExceedsSize { n, size: m });
    }
    Ok(elementary_symmetric(&set.embedded(), n)
        .iter()
        .all(QuadExt::is_zero))
}

/// `e_1..e_n` of the given values, by incremental expansion of
/// `prod (z - xi_i)`.
pub(crate) fn elementary_symmetric(values: &[QuadExt], n: u32) -> Vec<QuadExt> {
    let n = n as usize;
    let mut e = vec![QuadExt::zero(); n + 1];
    e[0] = QuadExt::one();
    for (j, xi) in values.iter().enumerate() {
        let top = (j + 1).min(n);
        for k in (1..=top).rev() {
            let bump = &e[k - 1] * xi;
            e[k] = &e[k] + &bump;
        }
    }
    e.remove(0);
    e
}

/// T-design check: power sums vanish for every degree in `T` up to
/// `max_degree`. `T` is a predicate since the interesting sets are infinite.
pub fn is_t_design(set: &DesignSet, in_t: impl Fn(u32) -> bool, max_degree: u32) -> bool {
    let sums = power_sums_upto(set, max_degree);
    (1..=max_degree).all(|k| !in_t(k) || sums[(k - 1) as usize].is_zero())
}

/// Degree set for which every non-empty integer shell of `C_D` is a
/// T-design: all k except multiples of 4 (D=1) or 6 (D=3), odd k otherwise.
pub fn shell_t_filter(d: u64) -> impl Fn(u32) -> bool {
    move |k| match d {
        1 => k % 4 != 0,
        3 => k % 6 != 0,
        _ => k % 2 != 0,
    }
}

/// All integer points on `C_D(r)`, found by bounding `|y|` through the
/// positive definiteness of the form and solving exactly for `x`.
///
/// Non-integer `r` is accepted; the scan simply finds nothing because the
/// forms are integral on integer points.
pub fn shell_points(d: u64, r: &Rat) -> Result<Option<DesignSet>, Error> {
    validate_d(d)?;
    if r.is_zero() || r.is_negative() {
        return Err(Error::InvalidNorm(r.to_string()));
    }
    let branch = branch_of(d);
    let scale = match branch {
        Branch::OneTwo => 1i64,
        Branch::Three => 4i64,
    };
    // |y| <= sqrt(scale * r / D), via integer sqrt of the floor.
    let bound_sq = (&(r * &Rat::from_int(scale)) / &Rat::from_int(d as i64)).floor_int();
    let mut y_max = bound_sq.sqrt();
    let d_rat = Rat::from_int(d as i64);
    let fits = |y: &BigInt| {
        let yy = Rat::from_int(y.clone());
        (&d_rat * &(&yy * &yy)) <= (r * &Rat::from_int(scale))
    };
    while fits(&(&y_max + 1)) {
        y_max += 1;
    }
    while y_max.is_positive() && !fits(&y_max) {
        y_max -= 1;
    }

    let mut points: Vec<(Rat, Rat)> = Vec::new();
    let mut y = -y_max.clone();
    while y <= y_max {
        let yr = Rat::from_int(y.clone());
        match branch {
            Branch::OneTwo => {
                // x^2 = r - D y^2
                let v = r - &(&d_rat * &(&yr * &yr));
                if !v.is_negative() && v.is_integer() {
                    if let Some(s) = crate::rat::exact_int_sqrt(v.numer()) {
                        points.push((Rat::from_int(s.clone()), yr.clone()));
                        if !s.is_zero() {
                            points.push((Rat::from_int(-s), yr.clone()));
                        }
                    }
                }
            }
            Branch::Three => {
                // x = (-y +- sqrt(4r - D y^2)) / 2, integral when the
                // discriminant is a perfect square of matching parity.
                let v = &(r * &Rat::from_int(4)) - &(&d_rat * &(&yr * &yr));
                if !v.is_negative() && v.is_integer() {
                    if let Some(s) = crate::rat::exact_int_sqrt(v.numer()) {
                        for sign in [s.clone(), -&s] {
                            let num = &sign - &y;
                            if (&num % 2u8) == BigInt::from(0) {
                                points.push((Rat::from_int(num / 2), yr.clone()));
                            }
                            if s.is_zero() {
                                break;
                            }
                        }
                    }
                }
            }
        }
        y += 1;
    }
    points.sort();
    points.dedup();
    if points.is_empty() {
        Ok(None)
    } else {
        Ok(Some(DesignSet::new(d, r.clone(), points)?))
    }
}
