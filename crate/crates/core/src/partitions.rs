//! Integer partitions: enumeration and counting.
//!
//! `p_r(n)` counts partitions of `n` into exactly `r` positive parts; these
//! index the algebras all of whose local summands are chain algebras, hence
//! the prehomogeneous modules with finitely many orbits.

/// All partitions of `n` into exactly `r` parts, each written descending.
pub fn partitions_exact(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(r);
    fn go(n: usize, r: usize, max: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 0 {
            if n == 0 {
                out.push(current.clone());
            }
            return;
        }
        // each remaining part is at least 1 and at most max
        let hi = max.min(n.saturating_sub(r - 1));
        for part in (1..=hi).rev() {
            current.push(part);
            go(n - part, r - 1, part, current, out);
            current.pop();
        }
    }
    if r == 0 {
        if n == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(n, r, n, &mut current, &mut out);
    out
}

/// All partitions of `n` (any number of parts), grouped naturally.
pub fn partitions_all(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for r in 1..=n.max(1) {
        out.extend(partitions_exact(n, r));
    }
    if n == 0 {
        out.push(Vec::new());
    }
    out
}

/// `p_r(n)` by the recurrence `p(n, r) = p(n-1, r-1) + p(n-r, r)`;
/// an independent route against the enumeration above.
pub fn count_partitions_exact(n: usize, r: usize) -> u64 {
    if r == 0 {
        return u64::from(n == 0);
    }
    if n < r {
        return 0;
    }
    let mut table = vec![vec![0u64; r + 1]; n + 1];
    table[0][0] = 1;
    for nn in 1..=n {
        for rr in 1..=r.min(nn) {
            table[nn][rr] = table[nn - 1][rr - 1]
                + if nn >= rr { table[nn - rr][rr] } else { 0 };
        }
    }
    table[n][r]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        // p(n) = sum_r p_r(n): 1, 1, 2, 3, 5, 7, 11, 15, 22
        let p: Vec<u64> = (0..=8)
            .map(|n| (0..=n).map(|r| count_partitions_exact(n, r)).sum())
            .collect();
        assert_eq!(p, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn enumeration_matches_recurrence() {
        for n in 0..=10 {
            for r in 0..=n {
                assert_eq!(
                    partitions_exact(n, r).len() as u64,
                    count_partitions_exact(n, r),
                    "n={n} r={r}"
                );
            }
        }
    }

    #[test]
    fn parts_are_descending_and_sum() {
        for p in partitions_exact(8, 3) {
            assert_eq!(p.iter().sum::<usize>(), 8);
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(p.len(), 3);
        }
    }
}
