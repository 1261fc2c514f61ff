//! A-priori bounds on the number of cycles a run can take, and the total
//! order on tree signatures that drives them.
//!
//! Each cycle strictly advances the rank of the moving tree's signature and
//! of the fixed tree's signature in the order implemented here, which is
//! what makes the method finite. Counting how far those ranks can advance
//! gives two upper bounds — the coarse [`z_sup`] and the much sharper
//! [`z_prime_sup`] — while an explicit instance family shows runs really can
//! take [`z_inf`] cycles.

use crate::forest::Signature;
use std::cmp::Ordering;
use thiserror::Error;

/// The alternating total order on signatures: level 1 compares descending
/// (a wider first level orders earlier), level 2 ascending, level 3
/// descending, and so on; a missing level counts as 0. The empty signature
/// orders after everything else, so a shrinking-to-empty moving tree still
/// advances in rank.
pub fn compare_signatures(x: &Signature, y: &Signature) -> Ordering {
    let len = x.g.len().max(y.g.len());
    for t in 0..len {
        let xv = x.g.get(t).copied().unwrap_or(0);
        let yv = y.g.get(t).copied().unwrap_or(0);
        let cmp = if t % 2 == 0 { yv.cmp(&xv) } else { xv.cmp(&yv) };
        if cmp != Ordering::Equal {
            return cmp;
        }
    }
    Ordering::Equal
}

/// Errors from the bound computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("dimensions must be positive (got {m}x{n})")]
    EmptyDimension { m: usize, n: usize },
    #[error("refined bound is exhaustive and supports m + n <= {cap}; got {m} + {n}")]
    TooLarge { m: usize, n: usize, cap: usize },
}

/// Size cap for [`z_prime_sup`], which enumerates every signature pair: at
/// `m + n = 22` the pair count is in the low millions and the computation
/// stays well under a second; growth beyond that is exponential.
pub const Z_PRIME_SUP_MAX_DIM_SUM: usize = 22;

/// Coarse upper bound on cycles for an `m×n` instance: `C(m+n, m) − 1`,
/// the number of nonempty ways to interleave the two trees' level profiles.
/// Saturates at `u128::MAX` for dimensions where the binomial overflows.
pub fn z_sup(m: usize, n: usize) -> u128 {
    match binomial_saturating(m + n, m.min(n)) {
        u128::MAX => u128::MAX, // keep the saturation sentinel intact
        b => b - 1,             // C(m+n, m) ≥ 1 always
    }
}

fn binomial_saturating(n: usize, k: usize) -> u128 {
    let mut result: u128 = 1;
    for i in 1..=k {
        // Multiply before dividing: each prefix is itself a binomial, so the
        // division is exact.
        match result.checked_mul((n - k + i) as u128) {
            Some(v) => result = v / i as u128,
            None => return u128::MAX,
        }
    }
    result
}

/// Lower bound witnessed by the worst-case instance family: the `n×n` member
/// takes exactly `3·2^(n−1) − 2` cycles. Saturates for `n > 127`.
pub fn z_inf(n: usize) -> u128 {
    assert!(n >= 1, "z_inf needs n >= 1");
    if n > 127 {
        return u128::MAX;
    }
    (3u128 << (n - 1)) - 2
}

/// Refined upper bound on cycles: the length of the longest chain of
/// simultaneously realizable signature-rank pairs.
///
/// Every cycle strictly increases both the moving tree's rank `K` and the
/// fixed tree's rank `K'`, and a state with a `(p, q)`-shaped moving tree
/// forces an `(m−p, n−q)`-shaped fixed tree. The bound therefore enumerates
/// all signatures of both trees in rank order, forms every compatible
/// `(K, K')` pair, and takes the longest subsequence strictly increasing in
/// both coordinates. Exhaustive: see [`Z_PRIME_SUP_MAX_DIM_SUM`].
pub fn z_prime_sup(m: usize, n: usize) -> Result<u64, BoundsError> {
    if m == 0 || n == 0 {
        return Err(BoundsError::EmptyDimension { m, n });
    }
    if m + n > Z_PRIME_SUP_MAX_DIM_SUM {
        return Err(BoundsError::TooLarge { m, n, cap: Z_PRIME_SUP_MAX_DIM_SUM });
    }

    // The moving tree has rows on odd levels: 1..=m of them, and 0..=n-1
    // columns (the fixed tree keeps at least one column). The fixed tree has
    // columns on odd levels: 1..=n of them, and 0..=m-1 rows.
    let moving = enumerate_ranks(m, n - 1);
    let fixed = enumerate_ranks(n, m - 1);

    let mut pairs: Vec<(u32, u32)> = Vec::new();
    for (p, by_even) in moving.iter().enumerate().skip(1) {
        for (q, ranks) in by_even.iter().enumerate() {
            let (pf, qf) = (m - p, n - q);
            for &k in ranks {
                for &kf in &fixed[qf][pf] {
                    pairs.push((k, kf));
                }
            }
        }
    }

    // Longest chain strictly increasing in both coordinates: sort by the
    // first coordinate (ties broken by the second, descending, so equal
    // firsts cannot chain), then patience-style strict LIS on the second.
    pairs.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut tails: Vec<u32> = Vec::new();
    for &(_, kf) in &pairs {
        let idx = tails.partition_point(|&t| t < kf);
        if idx == tails.len() {
            tails.push(kf);
        } else {
            tails[idx] = kf;
        }
    }
    Ok(tails.len() as u64)
}

/// Enumerates every signature with up to `max_odd` nodes on odd levels and
/// `max_even` on even levels, in the order of [`compare_signatures`], and
/// returns rank lists bucketed by exact (odd, even) node counts. Ranks are
/// globally sequential, so each bucket's list is ascending.
///
/// The walk emits in sorted order directly: at a descending position the
/// extensions (largest first) precede the bare prefix, at an ascending
/// position the bare prefix precedes the extensions (smallest first).
fn enumerate_ranks(max_odd: usize, max_even: usize) -> Vec<Vec<Vec<u32>>> {
    let mut buckets = vec![vec![Vec::new(); max_even + 1]; max_odd + 1];
    let mut counter: u32 = 0;
    walk(1, max_odd, max_even, 0, 0, &mut counter, &mut buckets);
    buckets
}

fn walk(
    pos: usize,
    odd_left: usize,
    even_left: usize,
    odd_used: usize,
    even_used: usize,
    counter: &mut u32,
    buckets: &mut [Vec<Vec<u32>>],
) {
    let emit = |counter: &mut u32, buckets: &mut [Vec<Vec<u32>>]| {
        buckets[odd_used][even_used].push(*counter);
        *counter += 1;
    };
    if pos % 2 == 1 {
        for x in (1..=odd_left).rev() {
            walk(pos + 1, odd_left - x, even_left, odd_used + x, even_used, counter, buckets);
        }
        if pos > 1 {
            emit(counter, buckets);
        }
    } else {
        emit(counter, buckets);
        for x in 1..=even_left {
            walk(pos + 1, odd_left, even_left - x, odd_used, even_used + x, counter, buckets);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(g: &[u32]) -> Signature {
        Signature { g: g.to_vec() }
    }

    #[test]
    fn order_alternates_by_level() {
        use Ordering::*;
        assert_eq!(compare_signatures(&sig(&[2]), &sig(&[2, 1])), Less);
        assert_eq!(compare_signatures(&sig(&[1, 1, 1]), &sig(&[1, 1])), Less);
        assert_eq!(compare_signatures(&sig(&[3]), &sig(&[2, 5])), Less);
        assert_eq!(compare_signatures(&sig(&[2, 1]), &sig(&[2, 2])), Less);
        assert_eq!(compare_signatures(&sig(&[2, 1, 2]), &sig(&[2, 1, 1])), Less);
        assert_eq!(compare_signatures(&sig(&[1]), &sig(&[])), Less);
        assert_eq!(compare_signatures(&sig(&[2, 2]), &sig(&[2, 2])), Equal);
        assert_eq!(compare_signatures(&sig(&[]), &sig(&[1, 4])), Greater);
    }

    #[test]
    fn coarse_bound_matches_closed_form() {
        assert_eq!(z_sup(1, 1), 1);
        assert_eq!(z_sup(2, 2), 5);
        assert_eq!(z_sup(3, 4), 34);
        assert_eq!(z_sup(10, 10), 184_755);
        // Saturates rather than wrapping on huge boards.
        assert_eq!(z_sup(1000, 1000), u128::MAX);
    }

    #[test]
    fn witness_family_law() {
        assert_eq!(z_inf(1), 1);
        assert_eq!(z_inf(2), 4);
        assert_eq!(z_inf(5), 46);
        assert_eq!(z_inf(10), 1534);
        assert_eq!(z_inf(20), 1_572_862);
    }

    #[test]
    fn refined_bound_small_cases() {
        assert_eq!(z_prime_sup(1, 1), Ok(1));
        assert_eq!(z_prime_sup(2, 2), Ok(4));
        assert_eq!(z_prime_sup(2, 3), Ok(6));
        assert_eq!(z_prime_sup(3, 3), Ok(10));
        assert_eq!(z_prime_sup(3, 4), Ok(14));
        assert_eq!(z_prime_sup(4, 4), Ok(22));
        // One-row problems admit exactly one cycle per column.
        for n in 1..=8 {
            assert_eq!(z_prime_sup(1, n), Ok(n as u64));
        }
    }

    #[test]
    fn refined_bound_is_symmetric() {
        for (m, n) in [(2, 5), (3, 5), (4, 6)] {
            assert_eq!(z_prime_sup(m, n), z_prime_sup(n, m));
        }
    }

    #[test]
    fn refined_bound_rejects_out_of_range() {
        assert_eq!(z_prime_sup(0, 3), Err(BoundsError::EmptyDimension { m: 0, n: 3 }));
        assert_eq!(
            z_prime_sup(12, 11),
            Err(BoundsError::TooLarge { m: 12, n: 11, cap: Z_PRIME_SUP_MAX_DIM_SUM })
        );
    }

    #[test]
    fn enumeration_counts_match_binomial_identity() {
        // The number of signatures with exactly p odd-level and q even-level
        // nodes is C(p+q−1, q).
        let buckets = enumerate_ranks(5, 5);
        for (p, by_even) in buckets.iter().enumerate().skip(1) {
            for (q, bucket) in by_even.iter().enumerate() {
                let expected = binomial_saturating(p + q - 1, q);
                assert_eq!(bucket.len() as u128, expected, "count mismatch at p={p} q={q}");
            }
        }
    }

    #[test]
    fn enumeration_ranks_are_sorted_buckets() {
        let buckets = enumerate_ranks(4, 3);
        for row in &buckets {
            for bucket in row {
                assert!(bucket.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}
