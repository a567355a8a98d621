//! Small combinatorial helpers shared by the verifier and the search oracles.

/// All tuples of `parts` non-negative integers summing to `total`, in
/// lexicographic order with the first component descending.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; parts];
    fn rec(total: u32, idx: usize, current: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if idx + 1 == current.len() {
            current[idx] = total;
            out.push(current.clone());
            return;
        }
        for first in (0..=total).rev() {
            current[idx] = first;
            rec(total - first, idx + 1, current, out);
        }
    }
    if parts > 0 {
        rec(total, 0, &mut current, &mut out);
    }
    out
}

/// Invokes `f` on every k-element index combination of `0..n`, in
/// lexicographic order. Stops early when `f` returns `true` and reports it.
pub(crate) fn any_combination(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) -> bool {
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return true;
        }
        // Advance to the next combination.
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return false;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Collects every k-element index combination of `0..n`.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    any_combination(n, k, |c| {
        out.push(c.to_vec());
        false
    });
    out
}
