//! Exact-arithmetic toolkit for ellipsoidal designs on the norm-form conics
//! `C_D(r)` and for the one- and two-dimensional Prouhet-Tarry-Escott
//! problem.
//!
//! Everything runs over arbitrary-precision rationals (and quadratic
//! extensions of them); there is no floating point anywhere. Designs are
//! checked through vanishing power sums of the points embedded in
//! `Q(sqrt(-D))`, solutions through exact mixed power sums, and the two
//! worlds are wired together: pairs of designs become solutions, zero-sum
//! triples lift from one dimension to two, and affine equivalence between
//! solutions is decided by exhaustive exact linear solves.
//!
//! The `parallel` feature (on by default) runs the data-parallel inner
//! loops — power sums, box enumeration, candidate scans — on rayon; the
//! results are bit-identical to the sequential fallback because every merge
//! is an exact associative sum or a minimum-index selection.
//!
//! ```
//! use pte_designs::ellipse::{is_design, shell_points};
//! use pte_designs::families::hexagon_design;
//! use pte_designs::pte::verify;
//! use pte_designs::rat::Rat;
//! use pte_designs::transform::design_pair_to_pte2;
//!
//! // The minimal integer shell of C_3(1) is a 5-design but not a 6-design.
//! let shell = shell_points(3, &Rat::one()).unwrap().unwrap();
//! assert_eq!(shell.len(), 6);
//! assert!(is_design(&shell, 5) && !is_design(&shell, 6));
//!
//! // Pairing it with a rational rotation of itself gives an ideal
//! // degree-5 two-dimensional solution with disjoint sides.
//! let rotated = hexagon_design(&Rat::from_int(2));
//! let paired = design_pair_to_pte2(&shell, &rotated, 5, None).unwrap();
//! let report = verify(&paired.solution).unwrap();
//! assert!(report.valid && report.disjoint);
//! assert_eq!(report.max_valid_degree, 5);
//! ```

pub mod ellipse;
pub mod equivalence;
pub mod families;
pub mod linalg;
pub mod pte;
pub mod quad;
pub mod rat;
pub mod report;
pub mod search;
pub mod transform;

mod util;

pub use ellipse::{DesignSet, EllipsePoint};
pub use equivalence::AffineMap;
pub use pte::PteSolution;
pub use quad::QuadExt;
pub use rat::Rat;

use thiserror::Error as ThisError;

#[derive(Debug, ThisError)]
pub enum Error {
    #[error("denominator must be nonzero")]
    ZeroDenominator,

    #[error("cannot parse rational from {input:?} (expected \"p\" or \"p/q\")")]
    BadRational { input: String },

    #[error("values live in different quadratic fields (sqrt({first}) vs sqrt({second}))")]
    MixedDiscriminants { first: String, second: String },

    #[error("D must be a positive squarefree integer, got {0}")]
    NotSquarefree(u64),

    #[error("point {point} has norm {actual}, expected {expected}")]
    PointOffConic {
        point: String,
        expected: String,
        actual: String,
    },

    #[error("conic norm must be positive, got {0}")]
    InvalidNorm(String),

    #[error("design set must be non-empty")]
    EmptyDesign,

    #[error("elementary-symmetric check needs n <= point count ({n} > {size})")]
    DegreeExceedsSize { n: u32, size: usize },

    #[error("bad solution shape: {0}")]
    BadSolutionShape(String),

    #[error("matrix does not preserve the norm form")]
    NotOrthogonal,

    #[error("conic mismatch: expected D = {expected}, got D = {actual}")]
    ConicMismatch { expected: u64, actual: u64 },

    #[error("no rational rotation family for D = {0}: the construction needs D = 1, 2 (mod 4) or D = 3")]
    UnsupportedRotation(u64),

    #[error("no rational tight-design generator for D = {0}: rational tight designs exist only for D = 1 and D = 3")]
    NoTightGenerator(u64),

    #[error("orbit did not close within {0} iterations")]
    OrbitNotClosed(usize),

    #[error("the {side} design fails the power-sum criterion at degree {degree}")]
    DesignCheckFailed { side: String, degree: u32 },

    #[error("cyclic lift unavailable: {0}")]
    LiftUnsupported(String),

    #[error("no zero-sum decomposition of the symmetric triples exists")]
    NoZeroSumDecomposition,

    #[error("lifted solution failed verification at monomial {monomial}")]
    LiftVerificationFailed { monomial: String },

    #[error("operation needs rational entries, found quadratic-field values")]
    NonRationalEntries,

    #[error("square-ratio obstruction unavailable: {0}")]
    ObstructionUnsupported(String),

    #[error("search would visit {estimate} states, over the budget of {budget}; raise the budget to force it")]
    BudgetExceeded { estimate: u64, budget: u64 },
}
