//! Parametric solution and design families, each verified on construction.
//!
//! Parameters are rationals throughout: the identities behind the families
//! are polynomial, so there is nothing special about integer instances.
//! Degenerate parameter choices (coinciding sides) are returned flagged,
//! never dropped.

use crate::ellipse::DesignSet;
use crate::pte::{verify, PteSolution, VerifyOutcome};
use crate::quad::QuadExt;
use crate::rat::Rat;

/// A generated solution together with its verification report. Generators
/// assert validity (the identities are polynomial); the report carries the
/// degeneracy flag.
#[derive(Debug, Clone)]
pub struct GeneratedSolution {
    pub solution: PteSolution,
    pub report: VerifyOutcome,
}

impl GeneratedSolution {
    pub fn is_degenerate(&self) -> bool {
        !self.report.disjoint
    }
}

fn checked(solution: PteSolution, family: &str) -> GeneratedSolution {
    let report = verify(&solution).expect("generator produced an ill-formed solution");
    assert!(
        report.valid,
        "{family} generator produced an invalid solution: first failure at {:?}",
        report.first_failure
    );
    GeneratedSolution { solution, report }
}

fn ri(n: i64) -> Rat {
    Rat::from_int(n)
}

/// `[v1, -v1, v2, -v2, v3, -v3]` as 1-vectors, keeping appearance order.
fn symmetric_sextuple_1d(triple: &[Rat; 3]) -> Vec<Vec<QuadExt>> {
    let mut side = Vec::with_capacity(6);
    for v in triple {
        side.push(vec![QuadExt::from_rat(v.clone())]);
        side.push(vec![QuadExt::from_rat(-v)]);
    }
    side
}

/// Cyclic pairing `+-(v1,v2), +-(v2,v3), +-(v3,v1)` in appearance order.
fn cyclic_sextuple_2d(triple: &[Rat; 3]) -> Vec<Vec<QuadExt>> {
    let mut side = Vec::with_capacity(6);
    for i in 0..3 {
        let p = [triple[i].clone(), triple[(i + 1) % 3].clone()];
        side.push(p.iter().map(|v| QuadExt::from_rat(v.clone())).collect());
        side.push(p.iter().map(|v| QuadExt::from_rat(-v)).collect());
    }
    side
}

fn cyclic_points_2d(triple: &[Rat; 3]) -> Vec<(Rat, Rat)> {
    let mut pts = Vec::with_capacity(6);
    for i in 0..3 {
        let (a, b) = (triple[i].clone(), triple[(i + 1) % 3].clone());
        pts.push((a.clone(), b.clone()));
        pts.push((-a, -b));
    }
    pts
}

pub fn borwein_triples(m: &Rat, n: &Rat) -> ([Rat; 3], [Rat; 3]) {
    let nm = n * m;
    let left = [
        (m + n) * &ri(2),
        &(&(-&nm) - n) - m + ri(3),
        &(&nm - n) - m - ri(3),
    ];
    let right = [
        (n - m) * &ri(2),
        &(&nm - n) + m + ri(3),
        &(&(-&nm) - n) + m - ri(3),
    ];
    (left, right)
}

/// The symmetric degree-5 sextuple pair with triples
/// `(2(m+n), -nm-n-m+3, nm-n-m-3)` and `(2(n-m), nm-n+m+3, -nm-n+m-3)`.
pub fn borwein1d(m: &Rat, n: &Rat) -> GeneratedSolution {
    let (l, r) = borwein_triples(m, n);
    let sol = PteSolution::new(1, 5, symmetric_sextuple_1d(&l), symmetric_sextuple_1d(&r))
        .expect("well-shaped by construction");
    checked(sol, "borwein1d")
}

/// Cyclic two-dimensional extension of the Borwein triples.
pub fn borwein2d(m: &Rat, n: &Rat) -> GeneratedSolution {
    let (l, r) = borwein_triples(m, n);
    let sol = PteSolution::new(2, 5, cyclic_sextuple_2d(&l), cyclic_sextuple_2d(&r))
        .expect("well-shaped by construction");
    checked(sol, "borwein2d")
}

/// The twelve-point degree-5 solution in the original (untranslated) form.
pub fn alpers_tijdeman(a: &Rat, b: &Rat) -> GeneratedSolution {
    let two_a = a * &ri(2);
    let three_a = a * &ri(3);
    let six_a = a * &ri(6);
    let left = vec![
        (ri(0), ri(0)),
        (&two_a + b, b.clone()),
        (&three_a + b, &three_a + &(b * &ri(3))),
        (two_a.clone(), &six_a + &(b * &ri(4))),
        (-b, &six_a + &(b * &ri(3))),
        (&(-a) - b, &three_a + b),
    ];
    let right = vec![
        (two_a.clone(), ri(0)),
        (&three_a + b, &three_a + b),
        (&two_a + b, &six_a + &(b * &ri(3))),
        (ri(0), &six_a + &(b * &ri(4))),
        (&(-a) - b, &three_a + &(b * &ri(3))),
        (-b, b.clone()),
    ];
    let lift = |pts: Vec<(Rat, Rat)>| {
        pts.into_iter()
            .map(|(x, y)| vec![QuadExt::from_rat(x), QuadExt::from_rat(y)])
            .collect()
    };
    let sol = PteSolution::new(2, 5, lift(left), lift(right)).expect("well-shaped");
    checked(sol, "alpers_tijdeman")
}

/// The translate of the twelve-point solution by `(-a, -3a-2b)`:
/// `[+-(a, 3a+2b), +-(a+b, -3a-b), +-(-2a-b, -b)]` against its mirror.
pub fn at_symmetric_form(a: &Rat, b: &Rat) -> GeneratedSolution {
    let p1 = (a.clone(), a * &ri(3) + b * &ri(2));
    let p2 = (a + b, -(a * &ri(3)) - b);
    let p3 = (-(a * &ri(2)) - b, -b);
    let mirror = |(x, y): &(Rat, Rat)| (x.clone(), -y);
    let side = |pts: [(Rat, Rat); 3]| {
        let mut out: Vec<Vec<QuadExt>> = Vec::with_capacity(6);
        for (x, y) in pts {
            out.push(vec![QuadExt::from_rat(x.clone()), QuadExt::from_rat(y.clone())]);
            out.push(vec![QuadExt::from_rat(-x), QuadExt::from_rat(-y)]);
        }
        out
    };
    let left = side([p1.clone(), p2.clone(), p3.clone()]);
    let right = side([mirror(&p1), mirror(&p2), mirror(&p3)]);
    let sol = PteSolution::new(2, 5, left, right).expect("well-shaped");
    checked(sol, "at_symmetric_form")
}

/// The zero-sum triple `( (2t+1)/q, (t^2-1)/q, -t(t+2)/q )` with
/// `q = t^2+t+1`; consecutive entries lie on `C_3(1)`.
pub fn hexagon_triple(t: &Rat) -> [Rat; 3] {
    let q = &(t * t) + &(t + &ri(1));
    [
        &(t * &ri(2) + ri(1)) / &q,
        &(t * t - ri(1)) / &q,
        &(-(t * &(t + &ri(2)))) / &q,
    ]
}

/// Rational hexagon on `C_3(1)`: a tight 5-design for every rational `t`.
pub fn hexagon_design(t: &Rat) -> DesignSet {
    let triple = hexagon_triple(t);
    let set = DesignSet::new(3, Rat::one(), cyclic_points_2d(&triple))
        .expect("hexagon points lie on C_3(1)");
    debug_assert!(crate::ellipse::is_design(&set, 5));
    set
}

/// Degree-5 pairing of two rational hexagons; the parametric ideal
/// two-dimensional solution.
pub fn hexagon_pte(t1: &Rat, t2: &Rat) -> GeneratedSolution {
    let l = hexagon_triple(t1);
    let r = hexagon_triple(t2);
    let sol = PteSolution::new(2, 5, cyclic_sextuple_2d(&l), cyclic_sextuple_2d(&r))
        .expect("well-shaped");
    checked(sol, "hexagon_pte")
}

/// One-dimensional projection of the hexagon pairing.
pub fn hexagon1d(t1: &Rat, t2: &Rat) -> GeneratedSolution {
    let l = hexagon_triple(t1);
    let r = hexagon_triple(t2);
    let sol = PteSolution::new(1, 5, symmetric_sextuple_1d(&l), symmetric_sextuple_1d(&r))
        .expect("well-shaped");
    checked(sol, "hexagon1d")
}

#[derive(Debug, Clone)]
pub struct MlsuInstance {
    pub design: DesignSet,
    pub triple: [Rat; 3],
}

/// The zero-sum triple behind the degree-5 classification on `C_3(3/4)`,
/// and the 6-point design it spans.
pub fn mlsu(t: &Rat) -> MlsuInstance {
    let triple = mlsu_triple(t);
    let design = DesignSet::new(3, Rat::new(3, 4).unwrap(), cyclic_points_2d(&triple))
        .expect("triple pairs lie on C_3(3/4)");
    debug_assert!(crate::ellipse::is_design(&design, 5));
    MlsuInstance { design, triple }
}

pub fn mlsu_triple(t: &Rat) -> [Rat; 3] {
    let q = &(&(t * t) + &(t + &ri(1))) * &ri(14);
    [
        &(&(t * t * ri(2)) - &(t * &ri(22)) - ri(13)) / &q,
        &(&(-(t * t * ri(13))) - &(t * &ri(4)) + ri(11)) / &q,
        &(&(t * t * ri(11)) + &(t * &ri(26)) + ri(2)) / &q,
    ]
}

/// Degree-5 pairing of two triples from the `C_3(3/4)` classification.
pub fn mlsu1d(t1: &Rat, t2: &Rat) -> GeneratedSolution {
    let l = mlsu_triple(t1);
    let r = mlsu_triple(t2);
    let sol = PteSolution::new(1, 5, symmetric_sextuple_1d(&l), symmetric_sextuple_1d(&r))
        .expect("well-shaped");
    checked(sol, "mlsu1d")
}

/// Chernick's symmetric degree-5 sextuple pair.
pub fn chernick(m: &Rat, n: &Rat) -> GeneratedSolution {
    let (m2, n2, mn) = (m * m, n * n, m * n);
    let left = [
        &(&(-(&m2 * &ri(5))) + &(&mn * &ri(4))) - &(&n2 * &ri(3)),
        &(&(-(&m2 * &ri(3))) + &(&mn * &ri(6))) + &(&n2 * &ri(5)),
        &(&(-&m2) - &(&mn * &ri(10))) - &n2,
    ];
    let right = [
        &(&(-(&m2 * &ri(5))) + &(&mn * &ri(6))) + &(&n2 * &ri(3)),
        &(&(-(&m2 * &ri(3))) - &(&mn * &ri(4))) - &(&n2 * &ri(5)),
        &(&(-&m2) + &(&mn * &ri(10))) - &n2,
    ];
    let sol = PteSolution::new(1, 5, symmetric_sextuple_1d(&left), symmetric_sextuple_1d(&right))
        .expect("well-shaped");
    checked(sol, "chernick")
}

/// Degree-2 ideal triples `[z, (-z-3 +- sqrt(-3z^2-6z-5))/2]` over the
/// quadratic field each parameter selects. The moment identities force
/// side sums `-3` and side square sums `2`. A perfect-square radicand would
/// collapse the entries to rationals; the radicand `-3(z+1)^2 - 2` is
/// negative for every rational `z`, so the quadratic branch always applies.
pub fn bessel2(z1: &Rat, z2: &Rat) -> GeneratedSolution {
    let side = |z: &Rat| -> Vec<Vec<QuadExt>> {
        let delta = &(&(-(&(z * z) * &ri(3))) - &(z * &ri(6))) - &ri(5);
        let half = Rat::new(1, 2).unwrap();
        let base = &(&(-z) - &ri(3)) * &half;
        vec![
            vec![QuadExt::from_rat(z.clone())],
            vec![QuadExt::new(&delta, base.clone(), half.clone())],
            vec![QuadExt::new(&delta, base, -half)],
        ]
    };
    let sol = PteSolution::new(1, 2, side(z1), side(z2)).expect("well-shaped");
    checked(sol, "bessel2")
}
