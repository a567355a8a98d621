//! Exhaustive small-instance oracles: every solution pair inside a
//! coordinate box, and the scan for sub-tight designs inside a point pool.
//!
//! The box search enumerates sorted point multisets once, computes their
//! mixed power sums in machine integers, and joins multisets with equal
//! signatures; a pair of distinct disjoint multisets in one signature class
//! is exactly a valid solution. Cost is estimated up front and the search
//! refuses to run past its budget rather than truncating silently.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::ellipse::{is_design, DesignSet};
use crate::pte::PteSolution;
use crate::rat::Rat;
use crate::util::{combinations, compositions};
use crate::Error;

pub const DEFAULT_SEARCH_BUDGET: u64 = 1_000_000;
pub const DEFAULT_SUBSET_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum DedupMode {
    /// Every valid disjoint pair in the box, oriented left <= right.
    #[default]
    None,
    /// One representative per translation/ordering class: sides translated
    /// so the minimum coordinate is 0, sorted, and ordered.
    Canonical,
    /// Canonical dedup followed by grouping under affine equivalence.
    AffineClasses,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchSpec {
    pub dimension: usize,
    pub degree: u32,
    pub size: usize,
    /// Coordinates range over `-bound..=bound`.
    pub bound: i64,
    #[serde(default)]
    pub dedup: DedupMode,
    /// Maximum number of multisets the enumeration may touch.
    #[serde(default)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub solutions: Vec<PteSolution>,
    /// Multisets enumerated plus candidate pairs compared.
    pub states_visited: u64,
    pub multisets_enumerated: u64,
    pub pairs_checked: u64,
}

fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Number of size-m multisets over p points, saturating on overflow.
fn multiset_count(points: u64, size: u64) -> u64 {
    binomial(points + size - 1, size).unwrap_or(u64::MAX)
}

/// All valid disjoint solutions of the given degree and size whose
/// coordinates lie in the box, up to the chosen dedup. Runs the enumeration
/// in parallel when the `parallel` feature is enabled.
pub fn search_pte(spec: &SearchSpec) -> Result<SearchOutcome, Error> {
    run_search(spec, cfg!(feature = "parallel"))
}

/// Same search on the sequential path regardless of features; results are
/// identical.
pub fn search_pte_sequential(spec: &SearchSpec) -> Result<SearchOutcome, Error> {
    run_search(spec, false)
}

fn run_search(spec: &SearchSpec, parallel: bool) -> Result<SearchOutcome, Error> {
    if spec.dimension == 0 || spec.dimension > 2 {
        return Err(Error::BadSolutionShape(
            "box search supports dimensions 1 and 2".into(),
        ));
    }
    if spec.size == 0 || spec.bound < 1 {
        return Err(Error::BadSolutionShape(
            "size and bound must be positive".into(),
        ));
    }
    let side = (2 * spec.bound + 1) as u64;
    let point_count = match spec.dimension {
        1 => side,
        _ => side.saturating_mul(side),
    };
    let estimate = multiset_count(point_count, spec.size as u64);
    let budget = spec.budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    // Signatures are exact i128 sums of |c|^k terms; make sure they fit.
    let fits = (spec.bound as i128)
        .checked_pow(spec.degree)
        .and_then(|v| v.checked_mul(spec.size as i128))
        .is_some();
    if !fits {
        return Err(Error::BadSolutionShape(
            "bound^degree * size exceeds the machine-integer signature range".into(),
        ));
    }

    // Box points in lexicographic order; multisets are non-decreasing index
    // tuples, so every unordered multiset appears exactly once.
    let points = box_points(spec.dimension, spec.bound);
    let tuples = compositions_for(spec.degree, spec.dimension);

    // Per first-point partition: (signatures, index multisets).
    type Partition = (Vec<Vec<i128>>, Vec<Vec<u32>>);
    let per_first: Vec<Partition> = map_over_firsts(
        points.len(),
        parallel,
        |first| {
            let mut sigs = Vec::new();
            let mut sets = Vec::new();
            let mut current = vec![first as u32; 1];
            enumerate_from(
                &points,
                spec.size,
                &mut current,
                &mut |multiset: &[u32]| {
                    sigs.push(signature(&points, multiset, &tuples));
                    sets.push(multiset.to_vec());
                },
            );
            (sigs, sets)
        },
    );

    let mut signatures: Vec<Vec<i128>> = Vec::new();
    let mut multisets: Vec<Vec<u32>> = Vec::new();
    for (sigs, sets) in per_first {
        signatures.extend(sigs);
        multisets.extend(sets);
    }
    let multisets_enumerated = multisets.len() as u64;

    let mut buckets: HashMap<&[i128], Vec<usize>> = HashMap::new();
    for (idx, sig) in signatures.iter().enumerate() {
        buckets.entry(sig.as_slice()).or_default().push(idx);
    }

    let mut pairs_checked = 0u64;
    let mut raw: Vec<(usize, usize)> = Vec::new();
    let mut bucket_ids: Vec<&Vec<usize>> = buckets.values().collect();
    bucket_ids.sort();
    for ids in bucket_ids {
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                pairs_checked += 1;
                if disjoint_multisets(&multisets[i], &multisets[j]) {
                    raw.push((i, j));
                }
            }
        }
    }
    raw.sort();

    let to_solution = |(i, j): (usize, usize)| -> PteSolution {
        let realize = |ids: &[u32]| -> Vec<Vec<Rat>> {
            ids.iter()
                .map(|&id| points[id as usize].iter().map(|&c| Rat::from_int(c)).collect())
                .collect()
        };
        PteSolution::from_rat_vectors(
            spec.dimension,
            spec.degree,
            realize(&multisets[i]),
            realize(&multisets[j]),
        )
        .expect("well-shaped by construction")
    };

    let mut solutions: Vec<PteSolution> = match spec.dedup {
        DedupMode::None => raw.into_iter().map(to_solution).collect(),
        DedupMode::Canonical | DedupMode::AffineClasses => {
            let mut seen = std::collections::BTreeSet::new();
            let mut kept = Vec::new();
            for pair in raw {
                let sol = to_solution(pair);
                let key = canonical_key(&sol);
                if seen.insert(key) {
                    kept.push(sol);
                }
            }
            if spec.dedup == DedupMode::AffineClasses {
                let mut reps: Vec<PteSolution> = Vec::new();
                for sol in kept {
                    let mut fresh = true;
                    for rep in &reps {
                        if crate::equivalence::are_equivalent(rep, &sol)?.equivalent {
                            fresh = false;
                            break;
                        }
                    }
                    if fresh {
                        reps.push(sol);
                    }
                }
                reps
            } else {
                kept
            }
        }
    };
    solutions.sort_by_key(canonical_key);

    Ok(SearchOutcome {
        states_visited: multisets_enumerated + pairs_checked,
        multisets_enumerated,
        pairs_checked,
        solutions,
    })
}

fn box_points(dimension: usize, bound: i64) -> Vec<Vec<i64>> {
    let range = -bound..=bound;
    match dimension {
        1 => range.map(|x| vec![x]).collect(),
        _ => {
            let mut pts = Vec::new();
            for x in range.clone() {
                for y in range.clone() {
                    pts.push(vec![x, y]);
                }
            }
            pts
        }
    }
}

fn compositions_for(degree: u32, dimension: usize) -> Vec<Vec<u32>> {
    let mut tuples = Vec::new();
    for d in 1..=degree {
        tuples.extend(compositions(d, dimension));
    }
    tuples
}

/// Mixed power sums of the multiset for every exponent tuple, in machine
/// integers; box bounds keep the values far from overflow.
fn signature(points: &[Vec<i64>], multiset: &[u32], tuples: &[Vec<u32>]) -> Vec<i128> {
    tuples
        .iter()
        .map(|tuple| {
            multiset
                .iter()
                .map(|&id| {
                    let p = &points[id as usize];
                    tuple
                        .iter()
                        .enumerate()
                        .map(|(c, &k)| (p[c] as i128).pow(k))
                        .product::<i128>()
                })
                .sum()
        })
        .collect()
}

fn enumerate_from(
    points: &[Vec<i64>],
    size: usize,
    current: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if current.len() == size {
        emit(current);
        return;
    }
    let start = *current.last().unwrap();
    for next in start..points.len() as u32 {
        current.push(next);
        enumerate_from(points, size, current, emit);
        current.pop();
    }
}

/// Runs the per-first-point partition of the enumeration, in parallel when
/// requested and available. Partitions share nothing; concatenation in
/// first-point order keeps the result canonical regardless of schedule.
fn map_over_firsts<T: Send>(
    count: usize,
    parallel: bool,
    work: impl Fn(usize) -> T + Sync + Send,
) -> Vec<T> {
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return (0..count).into_par_iter().map(work).collect();
    }
    let _ = parallel;
    (0..count).map(work).collect()
}

fn disjoint_multisets(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    true
}

/// Translation-normalized key: shift each coordinate so its minimum over
/// both sides is zero, sort the sides, and order them.
fn canonical_key(s: &PteSolution) -> String {
    let (left, right) = s
        .rational_sides()
        .expect("search solutions are rational");
    let dim = s.dimension();
    let mut mins = vec![Rat::zero(); dim];
    for (c, min) in mins.iter_mut().enumerate() {
        *min = left
            .iter()
            .chain(&right)
            .map(|v| v[c].clone())
            .min()
            .unwrap();
    }
    let shift = |side: &[Vec<Rat>]| -> Vec<Vec<Rat>> {
        let mut out: Vec<Vec<Rat>> = side
            .iter()
            .map(|v| v.iter().zip(&mins).map(|(x, m)| x - m).collect())
            .collect();
        out.sort();
        out
    };
    let (a, b) = (shift(&left), shift(&right));
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    format!("{a:?}|{b:?}")
}

#[derive(Debug, Clone)]
pub struct StroudOutcome {
    /// A sub-multiset of the pool of size at most `degree` that is a
    /// `degree`-design, were one to exist.
    pub counterexample: Option<DesignSet>,
    pub subsets_scanned: u64,
}

/// Scans every subset of the pool of size `1..=degree` for a design of that
/// degree. The size bound on designs says none exists; any hit is returned.
pub fn stroud_witness(
    pool: &DesignSet,
    degree: u32,
    budget: Option<u64>,
) -> Result<StroudOutcome, Error> {
    run_stroud(pool, degree, budget, cfg!(feature = "parallel"))
}

/// Sequential-path variant of the subset scan.
pub fn stroud_witness_sequential(
    pool: &DesignSet,
    degree: u32,
    budget: Option<u64>,
) -> Result<StroudOutcome, Error> {
    run_stroud(pool, degree, budget, false)
}

fn run_stroud(
    pool: &DesignSet,
    degree: u32,
    budget: Option<u64>,
    parallel: bool,
) -> Result<StroudOutcome, Error> {
    let n = pool.len();
    let max_size = (degree as usize).min(n);
    let mut estimate: u64 = 0;
    for s in 1..=max_size {
        estimate = estimate.saturating_add(binomial(n as u64, s as u64).unwrap_or(u64::MAX));
    }
    let budget = budget.unwrap_or(DEFAULT_SUBSET_BUDGET);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }

    let mut scanned = 0u64;
    for size in 1..=max_size {
        let subsets = combinations(n, size);
        scanned += subsets.len() as u64;
        let hit = find_design_subset(pool, &subsets, degree, parallel);
        if let Some(idx) = hit {
            let coords = subsets[idx]
                .iter()
                .map(|&i| pool.coords()[i].clone())
                .collect();
            return Ok(StroudOutcome {
                counterexample: Some(DesignSet::new(pool.d(), pool.norm().clone(), coords)?),
                subsets_scanned: scanned,
            });
        }
    }
    Ok(StroudOutcome {
        counterexample: None,
        subsets_scanned: scanned,
    })
}

/// Index of the first subset that forms a design of the given degree.
fn find_design_subset(
    pool: &DesignSet,
    subsets: &[Vec<usize>],
    degree: u32,
    parallel: bool,
) -> Option<usize> {
    let check = |subset: &Vec<usize>| -> bool {
        let coords: Vec<_> = subset.iter().map(|&i| pool.coords()[i].clone()).collect();
        let candidate = DesignSet::new(pool.d(), pool.norm().clone(), coords)
            .expect("subset of a valid design set");
        is_design(&candidate, degree)
    };
    #[cfg(feature = "parallel")]
    if parallel {
        use rayon::prelude::*;
        return subsets
            .par_iter()
            .enumerate()
            .filter(|(_, s)| check(s))
            .map(|(i, _)| i)
            .min();
    }
    let _ = parallel;
    subsets.iter().position(check)
}
