//! Affine containment and equivalence between solutions, plus the
//! square-ratio certificate that rules equivalence out quickly.
//!
//! Containment of `dst` in `src` means an affine map `v -> M v + e` over the
//! rationals carrying `src.left` onto `dst.left` and `src.right` onto
//! `dst.right` as multisets. Only invertible `M` are searched; for symmetric
//! pairs the translation must vanish (summing each side of `M a_i + e = c_i`
//! over a negation-closed multiset kills the linear part), which cuts the
//! search from ordered (r+1)-tuples to ordered r-tuples.

use serde::{Deserialize, Serialize};

use crate::linalg::{vec_is_zero, vec_sub, RatMat};
use crate::pte::PteSolution;
use crate::rat::Rat;
use crate::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMap {
    #[serde(rename = "M")]
    pub matrix: RatMat,
    pub e: Vec<Rat>,
    pub invertible: bool,
    /// False when part of the action was chosen freely (degenerate inputs
    /// constrain the map only on their affine span).
    pub unique: bool,
}

impl AffineMap {
    pub fn apply_vec(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = self.matrix.apply(v);
        for (o, e) in out.iter_mut().zip(&self.e) {
            *o = &*o + e;
        }
        out
    }

    /// Applies the map to every vector of both sides.
    pub fn apply_solution(&self, s: &PteSolution) -> Result<PteSolution, Error> {
        let (left, right) = rational_points(s)?;
        let map_side = |side: Vec<Vec<Rat>>| side.iter().map(|v| self.apply_vec(v)).collect();
        PteSolution::from_rat_vectors(
            s.dimension(),
            s.degree(),
            map_side(left),
            map_side(right),
        )
    }
}

fn rational_points(s: &PteSolution) -> Result<crate::pte::RationalSides, Error> {
    s.rational_sides().ok_or(Error::NonRationalEntries)
}

fn sorted(side: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut v = side.to_vec();
    v.sort();
    v
}

/// Distinct values of a side, in sorted order.
fn distinct(side: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    let mut v = sorted(side);
    v.dedup();
    v
}

fn maps_side_onto(map: &AffineMap, src: &[Vec<Rat>], dst_sorted: &[Vec<Rat>]) -> bool {
    let mut image: Vec<Vec<Rat>> = src.iter().map(|v| map.apply_vec(v)).collect();
    image.sort();
    image == dst_sorted
}

/// Incremental row echelon over the rationals, for greedy rank queries.
struct Echelon {
    rows: Vec<Vec<Rat>>,
}

impl Echelon {
    fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the current rows; inserts and reports true when
    /// it increases the rank.
    fn try_add(&mut self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|x| !x.is_zero()).unwrap();
            if !v[lead].is_zero() {
                let factor = &v[lead] / &row[lead];
                for (x, r) in v.iter_mut().zip(row) {
                    *x = &*x - &(&factor * r);
                }
            }
        }
        if vec_is_zero(&v) {
            return false;
        }
        self.rows.push(v);
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Finds an affine map carrying `src` onto `dst` side by side, or `None`
/// when the exhaustive candidate scan rules one out.
///
/// Base points are taken from `src.left` when they span, falling back to
/// both sides; every ordered tuple of candidate images (drawn from the
/// matching side of `dst`) yields one exact linear solve, and candidate
/// maps are verified against both full multisets. Dimensions 1 and 2 are
/// supported, matching the solutions the search is used on.
pub fn find_affine_containment(
    src: &PteSolution,
    dst: &PteSolution,
) -> Result<Option<AffineMap>, Error> {
    if src.dimension() != dst.dimension() {
        return Err(Error::BadSolutionShape(format!(
            "dimension mismatch: {} vs {}",
            src.dimension(),
            dst.dimension()
        )));
    }
    if src.size() != dst.size() {
        return Err(Error::BadSolutionShape(format!(
            "size mismatch: {} vs {}",
            src.size(),
            dst.size()
        )));
    }
    if src.dimension() > 2 {
        return Err(Error::BadSolutionShape(
            "affine containment search supports dimensions 1 and 2".into(),
        ));
    }
    let symmetric = src.is_symmetric() && dst.is_symmetric();
    search_containment(src, dst, symmetric)
}

/// The tuple scan; `use_symmetry` selects the linear (translation-free)
/// search. Exposed separately so tests can run the general affine scan on
/// symmetric inputs and confirm the translation comes out zero.
fn search_containment(
    src: &PteSolution,
    dst: &PteSolution,
    use_symmetry: bool,
) -> Result<Option<AffineMap>, Error> {
    let r = src.dimension();
    let (src_left, src_right) = rational_points(src)?;
    let (dst_left, dst_right) = rational_points(dst)?;
    let dst_left_sorted = sorted(&dst_left);
    let dst_right_sorted = sorted(&dst_right);

    let tagged: Vec<(Vec<Rat>, Side)> = src_left
        .iter()
        .cloned()
        .map(|p| (p, Side::Left))
        .chain(src_right.iter().cloned().map(|p| (p, Side::Right)))
        .collect();

    let verify_map = |map: &AffineMap| -> bool {
        maps_side_onto(map, &src_left, &dst_left_sorted)
            && maps_side_onto(map, &src_right, &dst_right_sorted)
    };

    if use_symmetry {
        // e = 0: find r linearly independent source points, preferring the
        // left side, and solve M on those alone.
        let mut echelon = Echelon::new();
        let mut base: Vec<(Vec<Rat>, Side)> = Vec::new();
        for (p, side) in &tagged {
            if echelon.rank() == r {
                break;
            }
            if echelon.try_add(p) {
                base.push((p.clone(), *side));
            }
        }
        if base.len() == r {
            let basis = RatMat::from_columns(
                &base.iter().map(|(p, _)| p.clone()).collect::<Vec<_>>(),
            );
            let basis_inv = basis.inverse().expect("basis chosen independent");
            let pools: Vec<Vec<Vec<Rat>>> = base
                .iter()
                .map(|(_, side)| match side {
                    Side::Left => distinct(&dst_left),
                    Side::Right => distinct(&dst_right),
                })
                .collect();
            let candidates = tuple_space(&pools);
            let solve = |tuple: &[Vec<Rat>]| -> Option<AffineMap> {
                let images = RatMat::from_columns(tuple);
                let m = images.mul(&basis_inv);
                if m.det().is_zero() {
                    return None;
                }
                let map = AffineMap {
                    matrix: m,
                    e: vec![Rat::zero(); r],
                    invertible: true,
                    unique: true,
                };
                verify_map(&map).then_some(map)
            };
            return Ok(scan_candidates(&candidates, solve));
        }
        // Rank-deficient symmetric input: fall through to the degenerate
        // handling below with e forced to zero by construction.
        return degenerate_containment(
            r,
            &tagged,
            src,
            dst,
            &dst_left,
            &dst_right,
            &verify_map,
            true,
        );
    }

    // General affine search on an affinely independent base tuple.
    let origin = tagged[0].clone();
    let mut echelon = Echelon::new();
    let mut base: Vec<(Vec<Rat>, Side)> = vec![origin.clone()];
    for (p, side) in tagged.iter().skip(1) {
        if echelon.rank() == r {
            break;
        }
        if echelon.try_add(&vec_sub(p, &origin.0)) {
            base.push((p.clone(), *side));
        }
    }
    if base.len() == r + 1 {
        let diffs: Vec<Vec<Rat>> = base[1..]
            .iter()
            .map(|(p, _)| vec_sub(p, &origin.0))
            .collect();
        let diff_inv = RatMat::from_columns(&diffs)
            .inverse()
            .expect("differences chosen independent");
        let pools: Vec<Vec<Vec<Rat>>> = base
            .iter()
            .map(|(_, side)| match side {
                Side::Left => distinct(&dst_left),
                Side::Right => distinct(&dst_right),
            })
            .collect();
        let candidates = tuple_space(&pools);
        let solve = |tuple: &[Vec<Rat>]| -> Option<AffineMap> {
            let image_diffs: Vec<Vec<Rat>> = tuple[1..]
                .iter()
                .map(|t| vec_sub(t, &tuple[0]))
                .collect();
            let m = RatMat::from_columns(&image_diffs).mul(&diff_inv);
            if m.det().is_zero() {
                return None;
            }
            let e = vec_sub(&tuple[0], &m.apply(&origin.0));
            let map = AffineMap {
                matrix: m,
                e,
                invertible: true,
                unique: true,
            };
            verify_map(&map).then_some(map)
        };
        return Ok(scan_candidates(&candidates, solve));
    }

    degenerate_containment(
        r,
        &tagged,
        src,
        dst,
        &dst_left,
        &dst_right,
        &verify_map,
        false,
    )
}

/// Materialized ordered tuples over per-position pools, in lexicographic
/// pool-index order.
fn tuple_space(pools: &[Vec<Vec<Rat>>]) -> Vec<Vec<Vec<Rat>>> {
    let mut out: Vec<Vec<Vec<Rat>>> = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for value in pool {
                let mut tuple = prefix.clone();
                tuple.push(value.clone());
                next.push(tuple);
            }
        }
        out = next;
    }
    out
}

/// First successful candidate in tuple order; candidates are independent,
/// so the parallel scan picks the minimum index for determinism.
fn scan_candidates<F>(candidates: &[Vec<Vec<Rat>>], solve: F) -> Option<AffineMap>
where
    F: Fn(&[Vec<Rat>]) -> Option<AffineMap> + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        candidates
            .par_iter()
            .enumerate()
            .filter_map(|(i, tuple)| solve(tuple).map(|m| (i, m)))
            .min_by_key(|(i, _)| *i)
            .map(|(_, m)| m)
    }
    #[cfg(not(feature = "parallel"))]
    {
        candidates.iter().find_map(|tuple| solve(tuple))
    }
}

/// Containment for sources whose points do not span: constant multisets get
/// a translation, collinear two-dimensional ones are solved on the line and
/// extended by an arbitrary transverse action, flagged as non-unique.
#[allow(clippy::too_many_arguments)]
fn degenerate_containment(
    r: usize,
    tagged: &[(Vec<Rat>, Side)],
    src: &PteSolution,
    dst: &PteSolution,
    dst_left: &[Vec<Rat>],
    dst_right: &[Vec<Rat>],
    verify_map: &dyn Fn(&AffineMap) -> bool,
    force_zero_translation: bool,
) -> Result<Option<AffineMap>, Error> {
    let origin = if force_zero_translation {
        vec![Rat::zero(); r]
    } else {
        tagged[0].0.clone()
    };
    // Affine rank relative to the chosen origin.
    let mut echelon = Echelon::new();
    let mut directions: Vec<Vec<Rat>> = Vec::new();
    for (p, _) in tagged {
        let d = vec_sub(p, &origin);
        if !vec_is_zero(&d) && echelon.try_add(&d) {
            directions.push(d);
        }
    }

    match directions.len() {
        0 => {
            // Every source point equals `origin`; any translation onto a
            // constant destination works, with the identity as the linear
            // part.
            let dst_all: Vec<&Vec<Rat>> = dst_left.iter().chain(dst_right).collect();
            let target = dst_all[0].clone();
            if dst_all.iter().any(|p| **p != target) {
                return Ok(None);
            }
            let map = AffineMap {
                matrix: RatMat::identity(r),
                e: vec_sub(&target, &origin),
                invertible: true,
                unique: false,
            };
            Ok(verify_map(&map).then_some(map))
        }
        1 if r == 2 => {
            let v = directions[0].clone();
            // Parametrize source points as origin + lambda * v.
            let coordinate = |p: &[Rat], base: &[Rat], dir: &[Rat]| -> Option<Rat> {
                let d = vec_sub(p, base);
                let idx = dir.iter().position(|x| !x.is_zero()).unwrap();
                let lambda = &d[idx] / &dir[idx];
                let reconstructed: Vec<Rat> =
                    dir.iter().map(|x| &lambda * x).collect();
                (reconstructed == d).then_some(lambda)
            };
            let project = |side: &[Vec<Rat>], base: &[Rat], dir: &[Rat]| -> Option<Vec<Vec<Rat>>> {
                side.iter()
                    .map(|p| coordinate(p, base, dir).map(|l| vec![l]))
                    .collect()
            };

            // The destination must be collinear as well; find its base and
            // direction the same way.
            let (dst_left_pts, dst_right_pts) = (dst_left.to_vec(), dst_right.to_vec());
            let dst_tagged: Vec<Vec<Rat>> = dst_left_pts
                .iter()
                .chain(&dst_right_pts)
                .cloned()
                .collect();
            let dst_origin = if force_zero_translation {
                vec![Rat::zero(); r]
            } else {
                dst_tagged[0].clone()
            };
            let mut dst_dir = None;
            for p in &dst_tagged {
                let d = vec_sub(p, &dst_origin);
                if !vec_is_zero(&d) {
                    dst_dir = Some(d);
                    break;
                }
            }
            let Some(w) = dst_dir else {
                return Ok(None); // source spans a line, destination a point
            };

            let (src_left_pts, src_right_pts) = rational_points(src)?;
            let (Some(src_l), Some(src_r)) = (
                project(&src_left_pts, &origin, &v),
                project(&src_right_pts, &origin, &v),
            ) else {
                return Ok(None);
            };
            let (Some(dst_l), Some(dst_r)) = (
                project(&dst_left_pts, &dst_origin, &w),
                project(&dst_right_pts, &dst_origin, &w),
            ) else {
                return Ok(None); // destination not collinear
            };

            let line_src = PteSolution::from_rat_vectors(1, src.degree(), src_l, src_r)?;
            let line_dst = PteSolution::from_rat_vectors(1, dst.degree(), dst_l, dst_r)?;
            let Some(line_map) = find_affine_containment(&line_src, &line_dst)? else {
                return Ok(None);
            };
            let alpha = line_map.matrix.at(0, 0).clone();
            let beta = line_map.e[0].clone();

            // Extend: v maps to alpha * w; a transverse vector maps to any
            // vector independent of w. Standard basis vectors fill both
            // roles deterministically.
            let unit = |i: usize| {
                let mut u = vec![Rat::zero(); 2];
                u[i] = Rat::one();
                u
            };
            let transverse_src = if v[1].is_zero() { unit(1) } else { unit(0) };
            let transverse_dst = if w[1].is_zero() { unit(1) } else { unit(0) };
            let alpha_w: Vec<Rat> = w.iter().map(|x| &alpha * x).collect();
            let basis_inv = RatMat::from_columns(&[v.clone(), transverse_src.clone()])
                .inverse()
                .expect("independent by construction");
            let m = RatMat::from_columns(&[alpha_w, transverse_dst]).mul(&basis_inv);
            if m.det().is_zero() {
                return Ok(None);
            }
            let beta_w: Vec<Rat> = w.iter().map(|x| &beta * x).collect();
            let shift = vec_sub(&crate::linalg::vec_add(&dst_origin, &beta_w), &m.apply(&origin));
            let map = AffineMap {
                matrix: m,
                e: shift,
                invertible: true,
                unique: false,
            };
            Ok(verify_map(&map).then_some(map))
        }
        _ => Ok(None),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub equivalent: bool,
    pub forward: Option<AffineMap>,
    pub backward: Option<AffineMap>,
}

/// Containment both ways, with the witnessing maps when they exist.
pub fn are_equivalent(s1: &PteSolution, s2: &PteSolution) -> Result<EquivalenceReport, Error> {
    let forward = find_affine_containment(s1, s2)?;
    let backward = find_affine_containment(s2, s1)?;
    Ok(EquivalenceReport {
        equivalent: forward.is_some() && backward.is_some(),
        forward,
        backward,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub ratio: Rat,
    pub obstructed: bool,
}

/// For symmetric one-dimensional solutions a containment map is a pure
/// scaling, so the ratio of the sums of squares must be a rational square;
/// a non-square ratio certifies non-equivalence.
pub fn square_ratio_obstruction(
    s1: &PteSolution,
    s2: &PteSolution,
) -> Result<ObstructionReport, Error> {
    for s in [s1, s2] {
        if s.dimension() != 1 {
            return Err(Error::ObstructionUnsupported(
                "square-ratio obstruction applies to one-dimensional solutions".into(),
            ));
        }
        if !s.is_symmetric() {
            return Err(Error::ObstructionUnsupported(
                "square-ratio obstruction applies to symmetric solutions".into(),
            ));
        }
    }
    let sum_squares = |s: &PteSolution| -> Result<Rat, Error> {
        let (left, _) = rational_points(s)?;
        Ok(left
            .iter()
            .fold(Rat::zero(), |acc, v| acc + &v[0] * &v[0]))
    };
    let denom = sum_squares(s1)?;
    let numer = sum_squares(s2)?;
    if denom.is_zero() {
        return Err(Error::ObstructionUnsupported(
            "sum of squares vanishes (all-zero solution)".into(),
        ));
    }
    let ratio = &numer / &denom;
    Ok(ObstructionReport {
        obstructed: !ratio.is_rational_square(),
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::pte::verify;
    use crate::rat::Rat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ri(n: i64) -> Rat {
        Rat::from_int(n)
    }

    fn r(n: i64, d: i64) -> Rat {
        Rat::new(n, d).unwrap()
    }

    fn m2(rows: [[Rat; 2]; 2]) -> RatMat {
        RatMat::from_rows(rows.into_iter().map(|row| row.to_vec()).collect())
    }

    #[test]
    fn identity_containment() {
        let s = families::borwein2d(&ri(2), &ri(4)).solution;
        let map = find_affine_containment(&s, &s).unwrap().unwrap();
        assert!(map.invertible);
        assert!(map.e.iter().all(Rat::is_zero));
        let report = are_equivalent(&s, &s).unwrap();
        assert!(report.equivalent);

        // The cyclic lift of the one-dimensional pair gives the same
        // multisets, so the identity is a valid containment witness.
        let lifted = crate::transform::cyclic_lift(&families::borwein1d(&ri(2), &ri(4)).solution)
            .unwrap();
        let identity = AffineMap {
            matrix: RatMat::identity(2),
            e: vec![ri(0), ri(0)],
            invertible: true,
            unique: true,
        };
        assert!(identity.apply_solution(&s).unwrap().same_multisets(&lifted));
        assert!(find_affine_containment(&s, &lifted).unwrap().is_some());
    }

    #[test]
    fn instance_equivalence_from_the_parameter_correspondence() {
        // The twelve-point symmetric form at (1, 1) and the cyclic Borwein
        // pair at (3/5, 0): containment holds both ways, since any
        // invertible containment inverts.
        let at = families::at_symmetric_form(&ri(1), &ri(1)).solution;
        let borwein = families::borwein2d(&r(3, 5), &ri(0)).solution;
        let report = are_equivalent(&at, &borwein).unwrap();
        assert!(report.equivalent);
        let forward = report.forward.unwrap();
        let backward = report.backward.unwrap();
        assert!(forward.apply_solution(&at).unwrap().same_multisets(&borwein));
        assert!(backward.apply_solution(&borwein).unwrap().same_multisets(&at));
        assert!(forward.e.iter().all(Rat::is_zero));
        assert!(backward.e.iter().all(Rat::is_zero));
    }

    #[test]
    fn random_affine_images_preserve_validity_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let base = families::hexagon_pte(&ri(0), &ri(2)).solution;
        let mut tried = 0;
        while tried < 6 {
            let entries: Vec<Rat> = (0..4).map(|_| crate::testutil::sample_rat(&mut rng)).collect();
            let m = m2([
                [entries[0].clone(), entries[1].clone()],
                [entries[2].clone(), entries[3].clone()],
            ]);
            if m.det().is_zero() {
                continue;
            }
            let map = AffineMap {
                matrix: m,
                e: vec![
                    crate::testutil::sample_rat(&mut rng),
                    crate::testutil::sample_rat(&mut rng),
                ],
                invertible: true,
                unique: true,
            };
            let image = map.apply_solution(&base).unwrap();
            assert_eq!(
                verify(&base).unwrap().max_valid_degree,
                verify(&image).unwrap().max_valid_degree
            );
            tried += 1;
        }
    }

    #[test]
    fn symmetric_translate_onto_borwein() {
        // The proof instance: the symmetric twelve-point form at
        // (a, b) = (1, -1) carries onto the cyclic Borwein pair at
        // (m, n) = (3, 3) with M = [[-6, -6], [12, 0]] and no translation.
        let src = families::at_symmetric_form(&ri(1), &ri(-1)).solution;
        let dst = families::borwein2d(&ri(3), &ri(3)).solution;

        let expected = AffineMap {
            matrix: m2([[ri(-6), ri(-6)], [ri(12), ri(0)]]),
            e: vec![ri(0), ri(0)],
            invertible: true,
            unique: true,
        };
        let image = expected.apply_solution(&src).unwrap();
        assert!(image.same_multisets(&dst));

        let found = find_affine_containment(&src, &dst).unwrap().unwrap();
        assert!(found.e.iter().all(Rat::is_zero));
        assert!(found.apply_solution(&src).unwrap().same_multisets(&dst));
    }

    #[test]
    fn general_scan_recovers_zero_translation_on_symmetric_pairs() {
        let src = families::at_symmetric_form(&ri(1), &ri(-1)).solution;
        let dst = families::borwein2d(&ri(3), &ri(3)).solution;
        let found = search_containment(&src, &dst, false).unwrap().unwrap();
        assert!(found.e.iter().all(Rat::is_zero));
    }

    #[test]
    fn obstruction_blocks_borwein_vs_hexagon() {
        let borwein = families::borwein1d(&ri(2), &ri(4)).solution;
        let hexagon = families::hexagon1d(&ri(0), &ri(2)).solution;
        let report = square_ratio_obstruction(&borwein, &hexagon).unwrap();
        assert_eq!(report.ratio, r(1, 133));
        assert!(report.obstructed);

        // The exhaustive scan agrees with the certificate.
        assert!(find_affine_containment(&borwein, &hexagon)
            .unwrap()
            .is_none());
        assert!(!are_equivalent(&borwein, &hexagon).unwrap().equivalent);
    }

    #[test]
    fn obstruction_mlsu_vs_hexagon() {
        let mlsu = families::mlsu1d(&ri(0), &ri(1)).solution;
        let hexagon = families::hexagon1d(&ri(0), &ri(2)).solution;
        let report = square_ratio_obstruction(&mlsu, &hexagon).unwrap();
        assert_eq!(report.ratio, r(4, 3));
        assert!(report.obstructed);
    }

    #[test]
    fn obstruction_self_ratio_is_one() {
        let s = families::chernick(&ri(1), &ri(2)).solution;
        let report = square_ratio_obstruction(&s, &s).unwrap();
        assert_eq!(report.ratio, Rat::one());
        assert!(!report.obstructed);
    }

    #[test]
    fn obstruction_requires_symmetric_1d() {
        let s2d = families::borwein2d(&ri(2), &ri(4)).solution;
        assert!(square_ratio_obstruction(&s2d, &s2d).is_err());
        let asym = families::alpers_tijdeman(&ri(1), &ri(1)).solution;
        assert!(square_ratio_obstruction(&asym, &asym).is_err());
    }

    #[test]
    fn chernick_not_contained_in_hexagon() {
        let chernick = families::chernick(&ri(1), &ri(2)).solution;
        let hexagon = families::hexagon1d(&ri(0), &ri(2)).solution;
        let report = square_ratio_obstruction(&chernick, &hexagon).unwrap();
        assert!(report.obstructed);
        assert!(!are_equivalent(&chernick, &hexagon).unwrap().equivalent);
    }

    #[test]
    fn found_maps_reproduce_destination_exactly() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..5 {
            let m = crate::testutil::sample_rat(&mut rng);
            let n = crate::testutil::sample_rat(&mut rng);
            let src = families::borwein2d(&m, &n).solution;
            // A known invertible map with translation; the search must
            // recover some witness whose image is exact.
            let map = AffineMap {
                matrix: m2([[ri(2), ri(1)], [ri(1), ri(1)]]),
                e: vec![ri(3), ri(-2)],
                invertible: true,
                unique: true,
            };
            let dst = map.apply_solution(&src).unwrap();
            let found = find_affine_containment(&src, &dst).unwrap().unwrap();
            assert!(found.apply_solution(&src).unwrap().same_multisets(&dst));
        }
    }

    #[test]
    fn invertible_containment_preserves_validity_degree() {
        let src = families::alpers_tijdeman(&ri(1), &ri(1)).solution;
        let map = AffineMap {
            matrix: m2([[ri(1), ri(2)], [ri(0), ri(1)]]),
            e: vec![ri(-1), ri(4)],
            invertible: true,
            unique: true,
        };
        let dst = map.apply_solution(&src).unwrap();
        let a = verify(&src).unwrap();
        let b = verify(&dst).unwrap();
        assert_eq!(a.max_valid_degree, b.max_valid_degree);
    }

    #[test]
    fn base_falls_back_to_the_right_side() {
        // The left side alone is collinear; the spanning base must borrow a
        // point from the right side and the containment is still found.
        let left = vec![vec![ri(0), ri(0)], vec![ri(1), ri(1)], vec![ri(2), ri(2)]];
        let right = vec![vec![ri(0), ri(1)], vec![ri(1), ri(0)], vec![ri(2), ri(2)]];
        let src = PteSolution::from_rat_vectors(2, 1, left, right).unwrap();
        assert!(verify(&src).unwrap().valid);
        let map = AffineMap {
            matrix: m2([[ri(2), ri(0)], [ri(0), ri(2)]]),
            e: vec![ri(1), ri(-1)],
            invertible: true,
            unique: true,
        };
        let dst = map.apply_solution(&src).unwrap();
        let found = find_affine_containment(&src, &dst).unwrap().unwrap();
        assert!(found.apply_solution(&src).unwrap().same_multisets(&dst));
    }

    #[test]
    fn collinear_sources_are_projected() {
        // Points on the line y = 2x + 1 built from {0,3} vs {1,2}.
        let lift = |values: [i64; 2]| -> Vec<Vec<Rat>> {
            values
                .into_iter()
                .map(|v| vec![ri(v), ri(2 * v + 1)])
                .collect()
        };
        let src = PteSolution::from_rat_vectors(2, 1, lift([0, 3]), lift([1, 2])).unwrap();
        // Destination on the line y = x, scaled by 3.
        let lift_dst = |values: [i64; 2]| -> Vec<Vec<Rat>> {
            values
                .into_iter()
                .map(|v| vec![ri(3 * v), ri(3 * v)])
                .collect()
        };
        let dst = PteSolution::from_rat_vectors(2, 1, lift_dst([0, 3]), lift_dst([1, 2])).unwrap();
        let map = find_affine_containment(&src, &dst).unwrap().unwrap();
        assert!(!map.unique);
        assert!(map.apply_solution(&src).unwrap().same_multisets(&dst));
    }

    #[test]
    fn constant_sources() {
        let constant = |v: i64| vec![vec![ri(v), ri(v)], vec![ri(v), ri(v)]];
        let src = PteSolution::from_rat_vectors(2, 1, constant(1), constant(1)).unwrap();
        let dst = PteSolution::from_rat_vectors(2, 1, constant(4), constant(4)).unwrap();
        let map = find_affine_containment(&src, &dst).unwrap().unwrap();
        assert!(!map.unique);
        assert_eq!(map.e, vec![ri(3), ri(3)]);

        let spread =
            PteSolution::from_rat_vectors(2, 1, vec![vec![ri(0), ri(0)], vec![ri(1), ri(0)]], vec![
                vec![ri(0), ri(0)],
                vec![ri(1), ri(0)],
            ])
            .unwrap();
        assert!(find_affine_containment(&src, &spread).unwrap().is_none());
    }

    #[test]
    fn shape_mismatches_are_errors() {
        let a = families::borwein1d(&ri(2), &ri(4)).solution;
        let b = families::borwein2d(&ri(2), &ri(4)).solution;
        assert!(find_affine_containment(&a, &b).is_err());
    }
}
