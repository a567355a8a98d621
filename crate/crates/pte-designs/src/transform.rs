//! Rational transformations of the conics: rotations preserving the norm
//! form, finite orbits (tight designs), pairing two designs into a
//! two-dimensional solution, and cyclic lifting of one-dimensional triples.
//!
//! Points are column vectors throughout; matrices act from the left.

use crate::ellipse::{first_failing_degree, DesignSet, EllipsePoint};
use crate::linalg::RatMat;
use crate::pte::{verify, PteSolution, VerifyOutcome};
use crate::quad::QuadExt;
use crate::rat::Rat;
use crate::Error;

/// Iteration cap when closing an orbit; the generators in play have order
/// 4 or 6.
const ORBIT_CAP: usize = 64;

/// The Gram matrix of the norm form of `C_D`.
pub fn q_matrix(d: u64) -> RatMat {
    let half = Rat::new(1, 2).unwrap();
    match crate::ellipse::branch_of(d) {
        crate::ellipse::Branch::OneTwo => RatMat::from_rows(vec![
            vec![Rat::one(), Rat::zero()],
            vec![Rat::zero(), Rat::from_int(d as i64)],
        ]),
        crate::ellipse::Branch::Three => RatMat::from_rows(vec![
            vec![Rat::one(), half.clone()],
            vec![half, Rat::new(1 + d as i64, 4).unwrap()],
        ]),
    }
}

/// A 2x2 rational matrix `M` with `tM Q M = Q` for the Gram matrix of
/// `C_D`; `det M = +-1` follows and is asserted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRotation {
    d: u64,
    matrix: RatMat,
}

impl RationalRotation {
    pub fn new(d: u64, matrix: RatMat) -> Result<Self, Error> {
        crate::ellipse::validate_d(d)?;
        assert_eq!(matrix.size(), 2);
        let q = q_matrix(d);
        if matrix.transpose().mul(&q).mul(&matrix) != q {
            return Err(Error::NotOrthogonal);
        }
        let det = matrix.det();
        assert!(
            det == Rat::one() || det == Rat::from_int(-1),
            "norm-preserving matrix must have determinant +-1"
        );
        Ok(RationalRotation { d, matrix })
    }

    pub fn identity(d: u64) -> Result<Self, Error> {
        RationalRotation::new(d, RatMat::identity(2))
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn matrix(&self) -> &RatMat {
        &self.matrix
    }

    pub fn map_point(&self, x: &Rat, y: &Rat) -> (Rat, Rat) {
        let v = self.matrix.apply(&[x.clone(), y.clone()]);
        let mut it = v.into_iter();
        (it.next().unwrap(), it.next().unwrap())
    }

    /// Maps every point of the design; the constructor of the image
    /// re-checks that all norms are preserved exactly.
    pub fn apply(&self, set: &DesignSet) -> Result<DesignSet, Error> {
        if self.d != set.d() {
            return Err(Error::ConicMismatch {
                expected: self.d,
                actual: set.d(),
            });
        }
        let mapped = set
            .coords()
            .iter()
            .map(|(x, y)| self.map_point(x, y))
            .collect();
        DesignSet::new(set.d(), set.norm().clone(), mapped)
    }
}

/// Rational rotation of `C_D` from the line parameter `t`.
///
/// For `D = 1, 2 (mod 4)` the unit-circle parametrization
/// `c = (1 - D t^2)/(1 + D t^2)`, `u = 2t/(1 + D t^2)` gives
/// `[[c, -Du], [u, c]]`. For `D = 3` the secant construction through
/// `(1, 0)` gives `[[ (2t+1)/q, -(t^2-1)/q ], [ (t^2-1)/q, t(t+2)/q ]]`
/// with `q = t^2 + t + 1`. Other `D = 3 (mod 4)` would need rational
/// points on auxiliary conics that are not available in general, so they
/// are rejected.
pub fn rational_rotation(d: u64, t: &Rat) -> Result<RationalRotation, Error> {
    crate::ellipse::validate_d(d)?;
    let one = Rat::one();
    match crate::ellipse::branch_of(d) {
        crate::ellipse::Branch::OneTwo => {
            let dd = Rat::from_int(d as i64);
            let denom = &one + &(&dd * &(t * t));
            let c = &(&one - &(&dd * &(t * t))) / &denom;
            let u = &(t * &Rat::from_int(2)) / &denom;
            let m = RatMat::from_rows(vec![
                vec![c.clone(), -(&dd * &u)],
                vec![u, c],
            ]);
            RationalRotation::new(d, m)
        }
        crate::ellipse::Branch::Three => {
            if d != 3 {
                return Err(Error::UnsupportedRotation(d));
            }
            let q = &(t * t) + &(t + &one);
            let a = &(t * &Rat::from_int(2) + one.clone()) / &q;
            let b = &(t * t - one.clone()) / &q;
            let c = &(t * &(t + &Rat::from_int(2))) / &q;
            let m = RatMat::from_rows(vec![vec![a, -&b], vec![b, c]]);
            RationalRotation::new(d, m)
        }
    }
}

/// Finite-order generator whose orbits are the tight designs; rational ones
/// exist only for `D = 1` (order 4) and `D = 3` (order 6).
pub fn tight_generator(d: u64) -> Result<RationalRotation, Error> {
    match d {
        1 => RationalRotation::new(
            1,
            RatMat::from_rows(vec![
                vec![Rat::zero(), Rat::from_int(-1)],
                vec![Rat::one(), Rat::zero()],
            ]),
        ),
        3 => RationalRotation::new(
            3,
            RatMat::from_rows(vec![
                vec![Rat::zero(), Rat::from_int(-1)],
                vec![Rat::one(), Rat::one()],
            ]),
        ),
        _ => Err(Error::NoTightGenerator(d)),
    }
}

/// Full orbit of a point under a finite-order rotation, as a design set.
/// If the generator has order `k` the orbit is a regular k-gon in embedded
/// coordinates, hence a (k-1)-design.
pub fn orbit_design(start: &EllipsePoint, generator: &RationalRotation) -> Result<DesignSet, Error> {
    if start.d() != generator.d() {
        return Err(Error::ConicMismatch {
            expected: generator.d(),
            actual: start.d(),
        });
    }
    let origin = (start.x().clone(), start.y().clone());
    let mut points = vec![origin.clone()];
    let mut current = origin.clone();
    loop {
        current = generator.map_point(&current.0, &current.1);
        if current == origin {
            break;
        }
        points.push(current.clone());
        if points.len() > ORBIT_CAP {
            return Err(Error::OrbitNotClosed(ORBIT_CAP));
        }
    }
    DesignSet::new(start.d(), start.norm().clone(), points)
}

/// Result of pairing two designs into a two-dimensional solution.
#[derive(Debug, Clone)]
pub struct PairedSolution {
    pub solution: PteSolution,
    pub report: VerifyOutcome,
    /// Rotation parameter applied to the right design, when one was used.
    pub rotation_param: Option<Rat>,
}

fn design_side(set: &DesignSet) -> Vec<Vec<QuadExt>> {
    set.coords()
        .iter()
        .map(|(x, y)| vec![QuadExt::from_rat(x.clone()), QuadExt::from_rat(y.clone())])
        .collect()
}

/// Pairs two n-designs sharing `(D, r)` and cardinality into a degree-n
/// solution. When the sides coincide and no rotation was supplied, retries
/// with the sample parameters `t = 2, 3, 5, 7` until the sides are disjoint
/// or the samples are exhausted; the parameter used is reported.
pub fn design_pair_to_pte2(
    x: &DesignSet,
    y: &DesignSet,
    degree: u32,
    rotation: Option<&RationalRotation>,
) -> Result<PairedSolution, Error> {
    if x.d() != y.d() {
        return Err(Error::ConicMismatch {
            expected: x.d(),
            actual: y.d(),
        });
    }
    if x.norm() != y.norm() || x.len() != y.len() {
        return Err(Error::BadSolutionShape(
            "designs must share norm and cardinality".into(),
        ));
    }
    for (name, set) in [("left", x), ("right", y)] {
        if let Some(k) = first_failing_degree(set, degree) {
            return Err(Error::DesignCheckFailed {
                side: name.to_string(),
                degree: k,
            });
        }
    }

    let build = |right: &DesignSet, param: Option<Rat>| -> Result<PairedSolution, Error> {
        let solution = PteSolution::new(2, degree, design_side(x), design_side(right))?;
        let report = verify(&solution)?;
        assert!(report.valid, "design pair must verify at the design degree");
        Ok(PairedSolution {
            solution,
            report,
            rotation_param: param,
        })
    };

    let base = match rotation {
        Some(rot) => build(&rot.apply(y)?, None)?,
        None => build(y, None)?,
    };
    if base.report.disjoint || rotation.is_some() {
        return Ok(base);
    }
    for t in [2i64, 3, 5, 7] {
        let param = Rat::from_int(t);
        let Ok(rot) = rational_rotation(x.d(), &param) else {
            break;
        };
        let candidate = build(&rot.apply(y)?, Some(param))?;
        if candidate.report.disjoint {
            return Ok(candidate);
        }
    }
    Ok(base)
}

/// Groups a symmetric sextuple into three `+-` pairs, keeping the sign and
/// order of first appearance.
fn pair_representatives(side: &[Vec<QuadExt>]) -> Result<Vec<QuadExt>, Error> {
    let mut remaining: Vec<QuadExt> = side.iter().map(|v| v[0].clone()).collect();
    let mut reps = Vec::new();
    while let Some(v) = remaining.first().cloned() {
        remaining.remove(0);
        let neg = -&v;
        match remaining.iter().position(|w| *w == neg) {
            Some(pos) => {
                remaining.remove(pos);
            }
            None => {
                return Err(Error::LiftUnsupported(
                    "side is not closed under negation".into(),
                ))
            }
        }
        reps.push(v);
    }
    Ok(reps)
}

/// Candidate zero-sum triples from the pair representatives: sign patterns
/// (first sign fixed, the global flip gives the same point pairs) in a fixed
/// order, each in forward and reversed cyclic orientation.
fn zero_sum_orderings(reps: &[QuadExt]) -> Vec<[QuadExt; 3]> {
    assert_eq!(reps.len(), 3);
    let mut out = Vec::new();
    for signs in [[1, 1, 1], [1, 1, -1], [1, -1, 1], [1, -1, -1]] {
        let t: Vec<QuadExt> = reps
            .iter()
            .zip(signs)
            .map(|(v, s)| if s > 0 { v.clone() } else { -v })
            .collect();
        let sum = &(&t[0] + &t[1]) + &t[2];
        if sum.is_zero() {
            out.push([t[0].clone(), t[1].clone(), t[2].clone()]);
            out.push([t[0].clone(), t[2].clone(), t[1].clone()]);
        }
    }
    out
}

fn cyclic_side(triple: &[QuadExt; 3]) -> Vec<Vec<QuadExt>> {
    let mut side = Vec::with_capacity(6);
    for i in 0..3 {
        let p: Vec<QuadExt> = vec![triple[i].clone(), triple[(i + 1) % 3].clone()];
        let n: Vec<QuadExt> = p.iter().map(|v| -v).collect();
        side.push(p);
        side.push(n);
    }
    side
}

/// Lifts a symmetric one-dimensional sextuple solution whose sides split
/// into zero-sum triples to the cyclic two-dimensional pairing
/// `[+-(a1,a2), +-(a2,a3), +-(a3,a1)]`, verified before return. The
/// construction supplies the hypothesis; verification decides validity.
pub fn cyclic_lift(s: &PteSolution) -> Result<PteSolution, Error> {
    if s.dimension() != 1 || s.size() != 6 {
        return Err(Error::LiftUnsupported(
            "lift expects a one-dimensional solution of size 6".into(),
        ));
    }
    if !s.is_symmetric() {
        return Err(Error::LiftUnsupported("lift expects a symmetric solution".into()));
    }
    crate::quad::common_disc(s.left().iter().flatten())?;
    crate::quad::common_disc(s.right().iter().flatten())?;
    let left_orderings = zero_sum_orderings(&pair_representatives(s.left())?);
    let right_orderings = zero_sum_orderings(&pair_representatives(s.right())?);
    if left_orderings.is_empty() || right_orderings.is_empty() {
        return Err(Error::NoZeroSumDecomposition);
    }
    let mut last_failure = None;
    for l in &left_orderings {
        for r in &right_orderings {
            let candidate = PteSolution::new(2, s.degree(), cyclic_side(l), cyclic_side(r))?;
            let report = verify(&candidate)?;
            if report.valid {
                return Ok(candidate);
            }
            last_failure = report.first_failure;
        }
    }
    Err(Error::LiftVerificationFailed {
        monomial: format!("{:?}", last_failure.unwrap_or_default()),
    })
}
