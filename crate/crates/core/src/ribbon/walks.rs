use num_bigint::BigUint;
use num_traits::Zero;

use crate::maps::{binomial, catalan};

/// `t_{p,r}`: ±1 walks from 0 that hit `r` for the first time at step `p`.
///
/// Counted by dynamic programming over walks that stay strictly below `r`.
pub fn first_passage_count(p: u64, r: u64) -> BigUint {
    if r == 0 {
        return if p == 0 { 1u32.into() } else { BigUint::zero() };
    }
    if p < r || (p + r) % 2 == 1 {
        return BigUint::zero();
    }
    // position h in (-(p), r) stored at index h + p
    let width = (p + r) as usize;
    let off = p as usize;
    let mut cur = vec![BigUint::zero(); width];
    cur[off] = 1u32.into();
    for _ in 0..p - 1 {
        let mut next = vec![BigUint::zero(); width];
        for (i, c) in cur.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if i > 0 {
                next[i - 1] += c;
            }
            if i + 1 < width {
                next[i + 1] += c;
            }
        }
        cur = next;
    }
    cur[off + r as usize - 1].clone()
}

/// Ballot form `(r/p)·binom(p, (p+r)/2)`.
pub fn first_passage_ballot(p: u64, r: u64) -> BigUint {
    if r == 0 {
        return if p == 0 { 1u32.into() } else { BigUint::zero() };
    }
    if p < r || (p + r) % 2 == 1 {
        return BigUint::zero();
    }
    binomial(p, (p + r) / 2) * r / p
}

/// `c(p, q)`: ways to plant trees on an edge whose sides have boundary
/// lengths `p` and `q`. Both sides of a surviving edge have length at least 1.
pub fn edge_collapse_count(p: u64, q: u64) -> BigUint {
    if p == 0 || q == 0 || (p + q) % 2 == 1 {
        return BigUint::zero();
    }
    catalan((p + q - 2) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(first_passage_count(1, 1), 1u32.into());
        assert_eq!(first_passage_count(3, 1), 1u32.into());
        assert_eq!(first_passage_count(3, 3), 1u32.into());
        assert_eq!(first_passage_count(5, 1), 2u32.into());
        assert_eq!(first_passage_count(4, 1), BigUint::zero());
        assert_eq!(edge_collapse_count(1, 1), 1u32.into());
        assert_eq!(edge_collapse_count(3, 5), 5u32.into());
        assert_eq!(edge_collapse_count(2, 3), BigUint::zero());
    }

    #[test]
    fn dp_matches_ballot() {
        for p in 0..40 {
            for r in 0..=p + 1 {
                assert_eq!(first_passage_count(p, r), first_passage_ballot(p, r), "p={p} r={r}");
            }
        }
    }

    #[test]
    fn alley_identity() {
        for p in 1..24u64 {
            for q in 1..=24 - p {
                let lhs: BigUint = (1..=p.min(q))
                    .map(|r| first_passage_count(p, r) * first_passage_count(q, r))
                    .sum();
                assert_eq!(lhs, edge_collapse_count(p, q), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn odd_first_passage_sums_to_catalan() {
        // first passage to 1 at step 2m+1 is C_m
        for m in 0..15 {
            assert_eq!(first_passage_count(2 * m + 1, 1), catalan(m));
        }
    }
}
