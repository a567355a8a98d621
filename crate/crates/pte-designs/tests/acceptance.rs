//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line. All arithmetic checks are exact (tolerance zero); runtime caps are
//! asserted where stated.

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pte_designs::ellipse::{
    elementary_symmetric_check, is_design, is_t_design, shell_points, shell_t_filter,
    EllipsePoint,
};
use pte_designs::equivalence::{find_affine_containment, square_ratio_obstruction, AffineMap};
use pte_designs::families;
use pte_designs::linalg::RatMat;
use pte_designs::pte::side_power_sum;
use pte_designs::quad::QuadExt;
use pte_designs::rat::Rat;
use pte_designs::search::{search_pte, stroud_witness, DedupMode, SearchSpec};
use pte_designs::transform::{cyclic_lift, orbit_design, tight_generator};
use pte_designs::Error;

fn ri(n: i64) -> Rat {
    Rat::from_int(n)
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n, d).unwrap()
}

fn sample_rat(rng: &mut ChaCha8Rng) -> Rat {
    Rat::new(rng.random_range(-20i64..=20), rng.random_range(1i64..=9)).unwrap()
}

/// Runs one criterion, prints its pass/fail line, and enforces the runtime
/// cap stated in the criterion.
fn criterion(number: u32, name: &str, limit: Option<Duration>, body: impl FnOnce()) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = result.is_ok() && in_time;
    println!(
        "[acceptance] criterion {number} ({name}): {} [{elapsed:.2?}]",
        if pass { "PASS" } else { "FAIL" }
    );
    if let Err(panic) = result {
        resume_unwind(panic);
    }
    if let Some(l) = limit {
        assert!(in_time, "criterion {number} took {elapsed:?}, cap is {l:?}");
    }
}

#[test]
fn acceptance_01_hexagon_shell() {
    criterion(1, "hexagon shell", Some(Duration::from_secs(1)), || {
        let shell = shell_points(3, &Rat::one()).unwrap().unwrap();
        let mut expected = [(ri(1), ri(0)),
            (ri(-1), ri(0)),
            (ri(0), ri(1)),
            (ri(0), ri(-1)),
            (ri(1), ri(-1)),
            (ri(-1), ri(1))];
        expected.sort();
        assert_eq!(shell.coords(), &expected[..]);
        assert!(is_design(&shell, 5));
        assert!(!is_design(&shell, 6));
        assert!(is_t_design(&shell, shell_t_filter(3), 12));
    });
}

#[test]
fn acceptance_02_family_validity_sweep() {
    criterion(2, "family validity sweep", Some(Duration::from_secs(10)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..50 {
            let (p, q) = (sample_rat(&mut rng), sample_rat(&mut rng));
            for (family, generated) in [
                ("borwein1d", families::borwein1d(&p, &q)),
                ("borwein2d", families::borwein2d(&p, &q)),
                ("alpers-tijdeman", families::alpers_tijdeman(&p, &q)),
                ("hexagon", families::hexagon_pte(&p, &q)),
                ("mlsu", families::mlsu1d(&p, &q)),
                ("chernick", families::chernick(&p, &q)),
            ] {
                assert!(
                    generated.report.valid && generated.report.max_valid_degree >= 5,
                    "{family} invalid at ({p}, {q})"
                );
            }
            let bessel = families::bessel2(&p, &q);
            assert!(bessel.report.valid && bessel.report.max_valid_degree >= 2);
            // Degenerate loci show up only in the disjoint flag.
            assert!(is_design(&families::mlsu(&p).design, 5));
        }
    });
}

#[test]
fn acceptance_03_borwein_reference_instance() {
    criterion(3, "Borwein instance (2,4)", None, || {
        let g = families::borwein1d(&ri(2), &ri(4));
        let side = |vectors: &[Vec<QuadExt>]| {
            let mut v: Vec<Rat> = vectors
                .iter()
                .map(|p| p[0].as_rat().unwrap().clone())
                .collect();
            v.sort();
            v
        };
        let sextuple = |values: [i64; 3]| {
            let mut v: Vec<Rat> = values
                .into_iter()
                .flat_map(|x| [ri(x), ri(-x)])
                .collect();
            v.sort();
            v
        };
        assert_eq!(side(g.solution.left()), sextuple([1, 11, 12]));
        assert_eq!(side(g.solution.right()), sextuple([4, 9, 13]));
        assert_eq!(g.report.max_valid_degree, 5);
    });
}

#[test]
fn acceptance_04_mixed_moment_closed_forms() {
    criterion(4, "mixed-moment closed forms", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let (m, n) = (sample_rat(&mut rng), sample_rat(&mut rng));
            let g = families::borwein2d(&m, &n);
            let k = (&m * &m + ri(3)) * (&n * &n + ri(3));
            let k2 = &k * &k;
            for vectors in [g.solution.left(), g.solution.right()] {
                assert_eq!(
                    side_power_sum(vectors, &[1, 1]),
                    QuadExt::from_rat(-(&k * &ri(2)))
                );
                assert_eq!(
                    side_power_sum(vectors, &[3, 1]),
                    QuadExt::from_rat(-(&k2 * &ri(2)))
                );
                assert_eq!(
                    side_power_sum(vectors, &[1, 3]),
                    QuadExt::from_rat(-(&k2 * &ri(2)))
                );
                assert_eq!(
                    side_power_sum(vectors, &[2, 2]),
                    QuadExt::from_rat(&k2 * &ri(2))
                );
            }
        }
    });
}

#[test]
fn acceptance_05_equivalence_instances() {
    criterion(5, "equivalence of the twelve-point families", Some(Duration::from_secs(5)), || {
        // Forward: the symmetric twelve-point form contains the cyclic
        // Borwein solution, with the matrix from the parameter
        // correspondence and zero translation.
        let forward_cases = [(3i64, 3i64), (2, 4), (5, 2)];
        for (m, n) in forward_cases {
            let b = -(&ri(3) * &ri(m - 1)) / ri(2 * m);
            let src = families::at_symmetric_form(&ri(1), &b).solution;
            let dst = families::borwein2d(&ri(m), &ri(n)).solution;
            let expected = AffineMap {
                matrix: RatMat::from_rows(vec![
                    vec![ri(-2 * m), -(&ri(2 * m * n) / &ri(3))],
                    vec![ri(m * (n + 1)), &ri(m * (n - 3)) / &ri(3)],
                ]),
                e: vec![ri(0), ri(0)],
                invertible: true,
                unique: true,
            };
            assert!(expected.apply_solution(&src).unwrap().same_multisets(&dst));
            let found = find_affine_containment(&src, &dst).unwrap().unwrap();
            assert!(found.e.iter().all(Rat::is_zero));
            assert!(found.apply_solution(&src).unwrap().same_multisets(&dst));
            if (m, n) == (3, 3) {
                assert_eq!(
                    expected.matrix,
                    RatMat::from_rows(vec![
                        vec![ri(-6), ri(-6)],
                        vec![ri(12), ri(0)],
                    ])
                );
            }
        }

        // Reverse: the cyclic Borwein solution at n = 0 contains the
        // symmetric twelve-point form.
        let reverse_cases = [(1i64, -1i64), (1, 1), (2, -1)];
        for (a, b) in reverse_cases {
            let m = -(&ri(3 * a + 2 * b) / &ri(a));
            let src = families::borwein2d(&m, &ri(0)).solution;
            let dst = families::at_symmetric_form(&ri(a), &ri(b)).solution;
            let expected = AffineMap {
                matrix: RatMat::from_rows(vec![
                    vec![&ri(a) / &ri(6), &ri(a) / &ri(3)],
                    vec![-(&ri(a) / &ri(2)), ri(0)],
                ]),
                e: vec![ri(0), ri(0)],
                invertible: true,
                unique: true,
            };
            assert!(expected.apply_solution(&src).unwrap().same_multisets(&dst));
            let found = find_affine_containment(&src, &dst).unwrap().unwrap();
            assert!(found.apply_solution(&src).unwrap().same_multisets(&dst));
        }
    });
}

#[test]
fn acceptance_06_cyclic_lift_identity() {
    criterion(6, "cyclic lift identity", None, || {
        let lifted = cyclic_lift(&families::borwein1d(&ri(2), &ri(4)).solution).unwrap();
        let direct = families::borwein2d(&ri(2), &ri(4)).solution;
        assert_eq!(lifted.canonicalize(), direct.canonicalize());
    });
}

#[test]
fn acceptance_07_obstruction_certificates() {
    criterion(7, "square-ratio obstructions", None, || {
        let hexagon = families::hexagon1d(&ri(0), &ri(2)).solution;

        let borwein = families::borwein1d(&ri(2), &ri(4)).solution;
        let report = square_ratio_obstruction(&borwein, &hexagon).unwrap();
        assert_eq!(report.ratio, r(1, 133));
        assert!(report.obstructed);

        let mlsu = families::mlsu1d(&ri(0), &ri(2)).solution;
        let report = square_ratio_obstruction(&mlsu, &hexagon).unwrap();
        assert_eq!(report.ratio, r(4, 3));
        assert!(report.obstructed);

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 10 {
            let (m, n) = (sample_rat(&mut rng), sample_rat(&mut rng));
            if m.is_zero() && n.is_zero() {
                continue;
            }
            let chernick = families::chernick(&m, &n).solution;
            let report = square_ratio_obstruction(&chernick, &hexagon).unwrap();
            assert!(report.obstructed, "unexpected square ratio at ({m}, {n})");
            checked += 1;
        }
    });
}

#[test]
fn acceptance_08_exhaustive_bounds() {
    criterion(8, "exhaustive bounds", Some(Duration::from_secs(120)), || {
        let empty = |degree: u32, size: usize, bound: i64| {
            let out = search_pte(&SearchSpec {
                dimension: 1,
                degree,
                size,
                bound,
                dedup: DedupMode::None,
                budget: None,
            })
            .unwrap();
            assert!(
                out.solutions.is_empty(),
                "degree {degree} size {size} bound {bound} should be empty"
            );
        };
        empty(2, 2, 20);
        empty(3, 3, 12);

        let hexagon = shell_points(3, &Rat::one()).unwrap().unwrap();
        let out = stroud_witness(&hexagon, 5, None).unwrap();
        assert!(out.counterexample.is_none());
        assert_eq!(out.subsets_scanned, 62);
    });
}

#[test]
fn acceptance_09_bessel_example() {
    criterion(9, "degree-2 quadratic-field example", None, || {
        let g = families::bessel2(&ri(-2), &ri(0));
        let minus5 = ri(-5);
        assert_eq!(
            g.solution.left(),
            &[
                vec![QuadExt::from(-2)],
                vec![QuadExt::new(&minus5, r(-1, 2), r(1, 2))],
                vec![QuadExt::new(&minus5, r(-1, 2), r(-1, 2))],
            ][..]
        );
        assert_eq!(
            g.solution.right(),
            &[
                vec![QuadExt::from(0)],
                vec![QuadExt::new(&minus5, r(-3, 2), r(1, 2))],
                vec![QuadExt::new(&minus5, r(-3, 2), r(-1, 2))],
            ][..]
        );
        for side in [g.solution.left(), g.solution.right()] {
            assert_eq!(side_power_sum(side, &[1]), QuadExt::from(-3));
            assert_eq!(side_power_sum(side, &[2]), QuadExt::from(2));
        }
        assert!(g.report.valid && g.report.disjoint);
    });
}

#[test]
fn acceptance_10_tight_orbits() {
    criterion(10, "tight orbit properties", None, || {
        let generator = tight_generator(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut produced = 0;
        while produced < 5 {
            let (x, y) = (sample_rat(&mut rng), sample_rat(&mut rng));
            if x.is_zero() && y.is_zero() {
                continue;
            }
            let start = EllipsePoint::from_coords(3, x, y).unwrap();
            let orbit = orbit_design(&start, &generator).unwrap();
            assert_eq!(orbit.len(), 6);
            assert!(is_design(&orbit, 5));
            assert!(!is_design(&orbit, 6));
            // Cross-check through the elementary-symmetric route.
            assert!(elementary_symmetric_check(&orbit, 5).unwrap());
            produced += 1;
        }
        assert!(matches!(tight_generator(2), Err(Error::NoTightGenerator(2))));
    });
}

#[test]
fn acceptance_11_shell_t_design_sweep() {
    criterion(11, "shell T-design sweep", Some(Duration::from_secs(30)), || {
        let mut nonempty = 0;
        for d in [1u64, 2, 3, 7, 11] {
            let filter = shell_t_filter(d);
            for norm in 1..=25i64 {
                let Some(shell) = shell_points(d, &ri(norm)).unwrap() else {
                    continue;
                };
                nonempty += 1;
                assert!(
                    is_t_design(&shell, &filter, 11),
                    "shell D={d} r={norm} fails its T-design degrees"
                );
            }
        }
        // The slice is not vacuous.
        assert!(nonempty > 40, "only {nonempty} non-empty shells found");
    });
}

/// The verification itself must agree between the parallel and sequential
/// paths on a representative workload.
#[cfg(feature = "parallel")]
#[test]
fn acceptance_paths_agree() {
    use pte_designs::search::search_pte_sequential;
    let spec = SearchSpec {
        dimension: 1,
        degree: 2,
        size: 3,
        bound: 6,
        dedup: DedupMode::Canonical,
        budget: None,
    };
    let par = search_pte(&spec).unwrap();
    let seq = search_pte_sequential(&spec).unwrap();
    assert_eq!(par.solutions, seq.solutions);
    assert_eq!(par.states_visited, seq.states_visited);
}
