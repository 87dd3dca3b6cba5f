use itertools::Itertools;

use crate::error::{Error, Result};
use crate::model::Preference;

fn check_cap(agent: usize, pairs: usize, cap: usize) -> Result<()> {
    if pairs == 0 || pairs > cap || pairs > 30 {
        return Err(Error::CapExceeded { agent, pairs, cap });
    }
    Ok(())
}

/// Every ranked partition of `A_i × Z`, i.e. every weak order.
///
/// Classes are peeled off best-first: the best class is each nonempty subset
/// of the remaining pairs in increasing bitmask order, so the output order is
/// deterministic.
pub fn enumerate_weak_orderings(
    agent: usize,
    actions: usize,
    outcomes: usize,
    cap: usize,
) -> Result<Vec<Preference>> {
    let n = actions * outcomes;
    check_cap(agent, n, cap)?;
    let mut out = Vec::with_capacity(ordered_partition_count(n) as usize);
    let mut rank = vec![0u32; n];
    let full = (1u32 << n) - 1;
    peel(full, 0, &mut rank, &mut |rank, classes| {
        out.push(from_rank(agent, actions, outcomes, rank, classes));
    });
    Ok(out)
}

fn peel(remaining: u32, depth: u32, rank: &mut [u32], emit: &mut impl FnMut(&[u32], u32)) {
    if remaining == 0 {
        emit(rank, depth);
        return;
    }
    // Submasks of `remaining` in increasing order.
    let mut sub = remaining & remaining.wrapping_neg();
    loop {
        let mut bits = sub;
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            rank[b] = depth;
            bits &= bits - 1;
        }
        peel(remaining & !sub, depth + 1, rank, emit);
        if sub == remaining {
            break;
        }
        sub = (sub.wrapping_sub(remaining)) & remaining;
    }
}

fn from_rank(
    agent: usize,
    actions: usize,
    outcomes: usize,
    rank: &[u32],
    classes: u32,
) -> Preference {
    let mut buckets: Vec<Vec<(usize, usize)>> = vec![Vec::new(); classes as usize];
    for (p, &r) in rank.iter().enumerate() {
        buckets[r as usize].push((p / outcomes, p % outcomes));
    }
    Preference::from_classes(agent, actions, outcomes, &buckets).expect("generated partition")
}

/// Every strict order of `A_i × Z`, in lexicographic permutation order.
pub fn enumerate_strict_orderings(
    agent: usize,
    actions: usize,
    outcomes: usize,
    cap: usize,
) -> Result<Vec<Preference>> {
    let n = actions * outcomes;
    check_cap(agent, n, cap)?;
    Ok((0..n)
        .permutations(n)
        .map(|perm| {
            let classes: Vec<Vec<(usize, usize)>> = perm
                .into_iter()
                .map(|p| vec![(p / outcomes, p % outcomes)])
                .collect();
            Preference::from_classes(agent, actions, outcomes, &classes).expect("permutation")
        })
        .collect())
}

/// Every ordering that depends only on the outcome: a weak order of `Z`
/// lifted to `A_i × Z`.
pub fn classical_orderings(
    agent: usize,
    actions: usize,
    outcomes: usize,
    cap: usize,
) -> Result<Vec<Preference>> {
    let over_outcomes = enumerate_weak_orderings(agent, 1, outcomes, cap)?;
    Ok(over_outcomes
        .iter()
        .map(|o| Preference::from_keys(agent, actions, outcomes, |(_, z)| o.rank_of(0, z)))
        .collect())
}

/// Number of weak orders on `n` labelled elements (ordered Bell / Fubini
/// numbers), via `a(n) = Σ_k C(n,k) a(n-k)`.
pub fn ordered_partition_count(n: usize) -> u64 {
    let mut a = vec![1u64; n + 1];
    for m in 1..=n {
        let mut binom = 1u64;
        let mut total = 0u64;
        for k in 1..=m {
            binom = binom * (m - k + 1) as u64 / k as u64;
            total += binom * a[m - k];
        }
        a[m] = total;
    }
    a[n]
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    /// Brute force: rank vectors in `{0..n}^n` whose values are exactly
    /// `{0..k}` for some k.
    fn brute_force_weak(n: usize) -> HashSet<Vec<u32>> {
        let mut out = HashSet::new();
        let total = (n as u64).pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let v: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (c % n as u64) as u32;
                    c /= n as u64;
                    d
                })
                .collect();
            let max = *v.iter().max().unwrap();
            if (0..=max).all(|k| v.contains(&k)) {
                out.insert(v);
            }
        }
        out
    }

    fn ranks(o: &Preference) -> Vec<u32> {
        (0..o.action_count() * o.outcome_count())
            .map(|p| o.rank_of(p / o.outcome_count(), p % o.outcome_count()))
            .collect()
    }

    #[test]
    fn weak_counts_match_brute_force() {
        // 3, 13, 75 come from the brute-force enumeration below.
        for (n, expected) in [(1, 1), (2, 3), (3, 13), (4, 75), (5, 541)] {
            let oracle = brute_force_weak(n);
            assert_eq!(oracle.len(), expected);
            let got = enumerate_weak_orderings(0, n, 1, 8).unwrap();
            assert_eq!(got.len(), expected);
            let got: HashSet<_> = got.iter().map(ranks).collect();
            assert_eq!(got, oracle);
        }
    }

    #[test]
    fn fubini_recursion_matches_enumeration() {
        for n in 1..=6 {
            let got = enumerate_weak_orderings(0, n, 1, 8).unwrap().len() as u64;
            assert_eq!(got, ordered_partition_count(n));
        }
        assert_eq!(ordered_partition_count(6), 4683);
    }

    #[test]
    fn strict_counts() {
        assert_eq!(enumerate_strict_orderings(0, 3, 1, 8).unwrap().len(), 6);
        assert_eq!(enumerate_strict_orderings(0, 1, 1, 8).unwrap().len(), 1);
        assert!(enumerate_strict_orderings(0, 2, 2, 8)
            .unwrap()
            .iter()
            .all(Preference::is_strict));
    }

    #[test]
    fn weak_minus_strict_on_three() {
        let weak: HashSet<_> = enumerate_weak_orderings(0, 3, 1, 8)
            .unwrap()
            .into_iter()
            .collect();
        let strict: HashSet<_> = enumerate_strict_orderings(0, 3, 1, 8)
            .unwrap()
            .into_iter()
            .collect();
        assert!(strict.is_subset(&weak));
        assert_eq!(weak.difference(&strict).count(), 7);
    }

    #[test]
    fn caps_enforced() {
        assert_eq!(
            enumerate_weak_orderings(2, 7, 1, 6).unwrap_err(),
            Error::CapExceeded {
                agent: 2,
                pairs: 7,
                cap: 6
            }
        );
        assert!(enumerate_strict_orderings(0, 3, 3, 8).is_err());
    }

    #[test]
    fn classical_count_is_weak_orders_of_outcomes() {
        let cl = classical_orderings(0, 3, 2, 6).unwrap();
        assert_eq!(cl.len(), 3);
        for o in &cl {
            for z in 0..2 {
                assert_eq!(o.rank_of(0, z), o.rank_of(2, z));
            }
        }
    }
}
