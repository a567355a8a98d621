//! Solutions of the r-dimensional power-sum problem and their structural
//! predicates.
//!
//! A solution is a pair of equal-size multisets of r-vectors whose mixed
//! power sums agree for all total degrees up to the claimed one. Entries are
//! quadratic-field values so the same verifier covers both rational families
//! and the degree-2 family with irrational entries; rational solutions are
//! just the case where every entry is rational.

use serde::{Deserialize, Serialize};

use crate::quad::{common_disc, QuadExt};
use crate::rat::Rat;
use crate::util::{any_combination, compositions};
use crate::Error;

/// How far past the claimed degree the verifier scans, to expose sharpness.
pub const DEGREE_SCAN_MARGIN: u32 = 3;

/// The two sides of a solution lowered to rational vectors.
pub type RationalSides = (Vec<Vec<Rat>>, Vec<Vec<Rat>>);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PteSolution {
    dimension: usize,
    degree: u32,
    left: Vec<Vec<QuadExt>>,
    right: Vec<Vec<QuadExt>>,
}

impl PteSolution {
    pub fn new(
        dimension: usize,
        degree: u32,
        left: Vec<Vec<QuadExt>>,
        right: Vec<Vec<QuadExt>>,
    ) -> Result<Self, Error> {
        let s = PteSolution {
            dimension,
            degree,
            left,
            right,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn from_rat_vectors(
        dimension: usize,
        degree: u32,
        left: Vec<Vec<Rat>>,
        right: Vec<Vec<Rat>>,
    ) -> Result<Self, Error> {
        let lift = |side: Vec<Vec<Rat>>| {
            side.into_iter()
                .map(|v| v.into_iter().map(QuadExt::from_rat).collect())
                .collect()
        };
        PteSolution::new(dimension, degree, lift(left), lift(right))
    }

    /// Shape checks; deserialized values must be revalidated through this.
    pub fn validate(&self) -> Result<(), Error> {
        if self.dimension == 0 {
            return Err(Error::BadSolutionShape(
                "dimension must be at least 1".into(),
            ));
        }
        if self.degree == 0 {
            return Err(Error::BadSolutionShape("degree must be at least 1".into()));
        }
        if self.left.len() != self.right.len() {
            return Err(Error::BadSolutionShape(format!(
                "sides differ in size: {} vs {}",
                self.left.len(),
                self.right.len()
            )));
        }
        if self.left.is_empty() {
            return Err(Error::BadSolutionShape("sides are empty".into()));
        }
        for v in self.left.iter().chain(&self.right) {
            if v.len() != self.dimension {
                return Err(Error::BadSolutionShape(format!(
                    "vector of length {} in a dimension-{} solution",
                    v.len(),
                    self.dimension
                )));
            }
        }
        Ok(())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn size(&self) -> usize {
        self.left.len()
    }

    pub fn left(&self) -> &[Vec<QuadExt>] {
        &self.left
    }

    pub fn right(&self) -> &[Vec<QuadExt>] {
        &self.right
    }

    /// Both sides as rational vectors, when every entry is rational.
    pub fn rational_sides(&self) -> Option<RationalSides> {
        let lower = |side: &[Vec<QuadExt>]| -> Option<Vec<Vec<Rat>>> {
            side.iter()
                .map(|v| v.iter().map(|x| x.as_rat().cloned()).collect())
                .collect()
        };
        Some((lower(&self.left)?, lower(&self.right)?))
    }

    /// Sides sorted entrywise; the canonical representative of the multiset
    /// pair. Construction order is otherwise preserved by all generators.
    pub fn canonicalize(&self) -> PteSolution {
        let mut left = self.left.clone();
        let mut right = self.right.clone();
        left.sort();
        right.sort();
        PteSolution {
            dimension: self.dimension,
            degree: self.degree,
            left,
            right,
        }
    }

    /// Multiset equality of both sides at the same claimed degree.
    pub fn same_multisets(&self, other: &PteSolution) -> bool {
        let a = self.canonicalize();
        let b = other.canonicalize();
        a.left == b.left && a.right == b.right
    }

    /// True when the two sides share no vector.
    pub fn disjoint_sides(&self) -> bool {
        let mut left = self.left.clone();
        let mut right = self.right.clone();
        left.sort();
        right.sort();
        let (mut i, mut j) = (0, 0);
        while i < left.len() && j < right.len() {
            match left[i].cmp(&right[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Each side is closed under negation as a multiset.
    pub fn is_symmetric(&self) -> bool {
        let closed = |side: &[Vec<QuadExt>]| {
            let mut sorted = side.to_vec();
            sorted.sort();
            let mut negated: Vec<Vec<QuadExt>> = side
                .iter()
                .map(|v| v.iter().map(|x| -x).collect())
                .collect();
            negated.sort();
            sorted == negated
        };
        closed(&self.left) && closed(&self.right)
    }

    /// Searches each side independently for a non-empty index subset of size
    /// at most `subset_max` with zero vector sum; both sides must have one.
    /// Returns the two witnesses.
    pub fn linear_witness(&self, subset_max: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let find = |side: &[Vec<QuadExt>]| -> Option<Vec<usize>> {
            for k in 1..=subset_max.min(side.len()) {
                let mut witness = None;
                let found = any_combination(side.len(), k, |idx| {
                    let mut sum = vec![QuadExt::zero(); self.dimension];
                    for &i in idx {
                        for (s, x) in sum.iter_mut().zip(&side[i]) {
                            *s = &*s + x;
                        }
                    }
                    if sum.iter().all(QuadExt::is_zero) {
                        witness = Some(idx.to_vec());
                        true
                    } else {
                        false
                    }
                });
                if found {
                    return witness;
                }
            }
            None
        };
        Some((find(&self.left)?, find(&self.right)?))
    }

    pub fn is_linear(&self, subset_max: usize) -> bool {
        self.linear_witness(subset_max).is_some()
    }

    /// Minimum size permitted by the power-sum bound: `m = n + 1`.
    pub fn is_ideal(&self) -> bool {
        self.size() as u32 == self.degree + 1
    }
}

/// Verification result. `max_valid_degree` is the largest `d` up to
/// `degree + DEGREE_SCAN_MARGIN` for which all mixed power sums of total
/// degree `<= d` agree; the first disagreeing exponent tuple is reported.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutcome {
    pub valid: bool,
    pub max_valid_degree: u32,
    pub disjoint: bool,
    pub first_failure: Option<Vec<u32>>,
}

/// Exact verification of all mixed power sums.
///
/// Degenerate inputs with coinciding sides verify as valid with
/// `disjoint = false`; callers that need the strict problem filter on the
/// flag.
pub fn verify(s: &PteSolution) -> Result<VerifyOutcome, Error> {
    s.validate()?;
    common_disc(s.left.iter().flatten())?;
    common_disc(s.right.iter().flatten())?;

    let cap = s.degree + DEGREE_SCAN_MARGIN;
    let left_powers = coordinate_powers(&s.left, cap);
    let right_powers = coordinate_powers(&s.right, cap);

    let mut max_valid = cap;
    let mut first_failure = None;
    'scan: for d in 1..=cap {
        for tuple in compositions(d, s.dimension) {
            let l = mixed_power_sum(&left_powers, &tuple);
            let r = mixed_power_sum(&right_powers, &tuple);
            if l != r {
                max_valid = d - 1;
                first_failure = Some(tuple);
                break 'scan;
            }
        }
    }

    Ok(VerifyOutcome {
        valid: max_valid >= s.degree,
        max_valid_degree: max_valid,
        disjoint: s.disjoint_sides(),
        first_failure,
    })
}

/// `powers[i][j][e] = v_{ij}^e` for `e = 0..=cap`.
fn coordinate_powers(side: &[Vec<QuadExt>], cap: u32) -> Vec<Vec<Vec<QuadExt>>> {
    side.iter()
        .map(|v| {
            v.iter()
                .map(|x| {
                    let mut powers = Vec::with_capacity(cap as usize + 1);
                    powers.push(QuadExt::one());
                    for e in 1..=cap {
                        let next = &powers[(e - 1) as usize] * x;
                        powers.push(next);
                    }
                    powers
                })
                .collect()
        })
        .collect()
}

fn mixed_power_sum(powers: &[Vec<Vec<QuadExt>>], tuple: &[u32]) -> QuadExt {
    let mut total = QuadExt::zero();
    for point in powers {
        let mut term = QuadExt::one();
        for (j, &k) in tuple.iter().enumerate() {
            if k > 0 {
                term = &term * &point[j][k as usize];
            }
        }
        total = &total + &term;
    }
    total
}

/// Mixed power sum of one side for a single exponent tuple; exposed for
/// spot checks against closed forms.
pub fn side_power_sum(side: &[Vec<QuadExt>], tuple: &[u32]) -> QuadExt {
    let cap = *tuple.iter().max().unwrap_or(&0);
    mixed_power_sum(&coordinate_powers(side, cap), tuple)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn sol1d(degree: u32, left: &[i64], right: &[i64]) -> PteSolution {
        PteSolution::from_rat_vectors(
            1,
            degree,
            left.iter().map(|&v| vec![ri(v)]).collect(),
            right.iter().map(|&v| vec![ri(v)]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn trivial_invalid_pair() {
        let s = PteSolution::from_rat_vectors(2, 1, vec![vec![ri(0), ri(0)]], vec![vec![
            ri(1),
            ri(0),
        ]])
        .unwrap();
        let out = verify(&s).unwrap();
        assert!(!out.valid);
        assert_eq!(out.max_valid_degree, 0);
        assert_eq!(out.first_failure, Some(vec![1, 0]));
    }

    #[test]
    fn classic_small_instance() {
        // {0,3} and {1,2} agree at degree 1 and break at degree 2.
        let s = sol1d(1, &[0, 3], &[1, 2]);
        let out = verify(&s).unwrap();
        assert!(out.valid);
        assert!(out.disjoint);
        assert_eq!(out.max_valid_degree, 1);
        assert_eq!(out.first_failure, Some(vec![2]));
    }

    #[test]
    fn parity_split_octuple() {
        // The parity-of-bit-count split of 0..7 agrees up to degree 2.
        let s = sol1d(2, &[0, 3, 5, 6], &[1, 2, 4, 7]);
        let out = verify(&s).unwrap();
        assert!(out.valid);
        assert_eq!(out.max_valid_degree, 2);
        assert_eq!(out.first_failure, Some(vec![3]));
    }

    #[test]
    fn ideal_degree_three_quadruple() {
        let s = sol1d(3, &[0, 4, 7, 11], &[1, 2, 9, 10]);
        let out = verify(&s).unwrap();
        assert!(out.valid && out.disjoint);
        assert_eq!(out.max_valid_degree, 3);
        assert_eq!(out.first_failure, Some(vec![4]));
    }

    #[test]
    fn coinciding_sides_flagged_not_rejected() {
        let s = sol1d(5, &[1, -1, 2], &[2, 1, -1]);
        let out = verify(&s).unwrap();
        assert!(out.valid);
        assert!(!out.disjoint);
        assert_eq!(out.max_valid_degree, 5 + DEGREE_SCAN_MARGIN);
        assert_eq!(out.first_failure, None);
    }

    #[test]
    fn symmetry_predicate() {
        let sym = sol1d(1, &[1, -1], &[2, -2]);
        assert!(sym.is_symmetric());
        let asym = PteSolution::from_rat_vectors(
            2,
            1,
            vec![vec![ri(1), ri(0)]],
            vec![vec![ri(0), ri(1)]],
        )
        .unwrap();
        assert!(!asym.is_symmetric());
    }

    #[test]
    fn symmetric_solutions_have_vanishing_odd_sums() {
        let s = sol1d(5, &[4, -4, 7, -7, 3, -3], &[1, -1, 9, -9, 2, -2]);
        for k in [1u32, 3, 5, 7] {
            assert!(side_power_sum(s.left(), &[k]).is_zero());
            assert!(side_power_sum(s.right(), &[k]).is_zero());
        }
    }

    #[test]
    fn linearity_search() {
        let s = sol1d(1, &[1, 2, -3], &[3, -1, -2]);
        let (wl, wr) = s.linear_witness(3).unwrap();
        assert_eq!(wl, vec![0, 1, 2]);
        assert_eq!(wr.len(), 3);
        assert!(!s.is_linear(1));

        let shifted = sol1d(1, &[1], &[1]);
        assert!(!shifted.is_linear(1));
    }

    #[test]
    fn ideality() {
        assert!(sol1d(5, &[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6]).is_ideal());
        assert!(!sol1d(4, &[1, 2, 3, 4, 5, 6], &[1, 2, 3, 4, 5, 6]).is_ideal());
    }

    #[test]
    fn canonicalization() {
        let a = PteSolution::from_rat_vectors(
            2,
            1,
            vec![vec![ri(1), ri(0)], vec![ri(0), ri(1)]],
            vec![vec![ri(1), ri(0)], vec![ri(0), ri(1)]],
        )
        .unwrap();
        let b = PteSolution::from_rat_vectors(
            2,
            1,
            vec![vec![ri(0), ri(1)], vec![ri(1), ri(0)]],
            vec![vec![ri(0), ri(1)], vec![ri(1), ri(0)]],
        )
        .unwrap();
        assert_eq!(a.canonicalize(), b.canonicalize());
        assert!(a.same_multisets(&b));

        // Duplicates keep their multiplicity.
        let dup = sol1d(1, &[2, 2], &[1, 3]);
        assert_eq!(dup.canonicalize().left().len(), 2);

        // "2/2" and "1" normalize identically at construction.
        let mixed = PteSolution::from_rat_vectors(
            1,
            1,
            vec![vec![Rat::new(2, 2).unwrap()]],
            vec![vec![ri(1)]],
        )
        .unwrap();
        assert!(!mixed.disjoint_sides());
    }

    #[test]
    fn monotone_degree_scan() {
        // Valid at n implies valid at every lower degree: the scan is a
        // prefix check, so max_valid_degree bounds them all at once.
        let s = sol1d(3, &[0, 3, 5, 6], &[1, 2, 4, 7]);
        let out = verify(&s).unwrap();
        for lower in 1..=out.max_valid_degree {
            let weaker = sol1d(lower, &[0, 3, 5, 6], &[1, 2, 4, 7]);
            assert!(verify(&weaker).unwrap().valid);
        }
    }

    #[test]
    fn mixed_disc_sides_rejected() {
        let left = vec![vec![QuadExt::sqrt_of(&ri(-5))], vec![QuadExt::sqrt_of(&ri(-3))]];
        let right = vec![vec![QuadExt::from(0)], vec![QuadExt::from(0)]];
        let s = PteSolution::new(1, 1, left, right).unwrap();
        assert!(matches!(verify(&s), Err(Error::MixedDiscriminants { .. })));
    }

    #[test]
    fn serde_round_trip() {
        let s = sol1d(2, &[0, 3], &[1, 2]);
        let json = serde_json::to_string(&s).unwrap();
        let back: PteSolution = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }
}
