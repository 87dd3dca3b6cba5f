use crate::error::{Error, Result};

/// `(action index, outcome index)` for a single agent.
pub type Pair = (usize, usize);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Prefer,
    Indifferent,
    Dispreferred,
}

/// A complete, transitive, reflexive ordering of one agent's `A_i × Z`,
/// stored as a ranked partition: `rank[pair]` is the index of the pair's
/// indifference class, best class first.
///
/// Class indices are dense (`0..class_count`), so two values are equal exactly
/// when they induce the same relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Preference {
    agent: usize,
    actions: usize,
    outcomes: usize,
    rank: Vec<u32>,
    classes: u32,
}

impl Preference {
    /// Builds an ordering from its indifference classes, best first.
    ///
    /// Fails unless the classes are nonempty and partition
    /// `{0..actions} × {0..outcomes}` exactly.
    pub fn from_classes(
        agent: usize,
        actions: usize,
        outcomes: usize,
        classes: &[Vec<Pair>],
    ) -> Result<Self> {
        const UNSET: u32 = u32::MAX;
        let mut rank = vec![UNSET; actions * outcomes];
        for (k, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::invariant(
                    format!("ordering class {k}"),
                    "class must be nonempty",
                ));
            }
            for &(a, z) in class {
                if a >= actions || z >= outcomes {
                    return Err(Error::invariant(
                        format!("ordering class {k}"),
                        format!("pair ({a}, {z}) outside A_i x Z"),
                    ));
                }
                let slot = &mut rank[a * outcomes + z];
                if *slot != UNSET {
                    return Err(Error::invariant(
                        format!("ordering class {k}"),
                        format!("pair ({a}, {z}) appears twice"),
                    ));
                }
                *slot = k as u32;
            }
        }
        if let Some(missing) = rank.iter().position(|&r| r == UNSET) {
            return Err(Error::invariant(
                "ordering",
                format!(
                    "partition incomplete: pair ({}, {}) missing",
                    missing / outcomes,
                    missing % outcomes
                ),
            ));
        }
        Ok(Preference {
            agent,
            actions,
            outcomes,
            rank,
            classes: classes.len() as u32,
        })
    }

    /// Builds an ordering from any per-pair key: lower keys rank higher and
    /// equal keys share a class.
    pub fn from_keys<K: Ord + Clone>(
        agent: usize,
        actions: usize,
        outcomes: usize,
        key: impl Fn(Pair) -> K,
    ) -> Self {
        let keys: Vec<K> = (0..actions * outcomes)
            .map(|p| key((p / outcomes, p % outcomes)))
            .collect();
        let mut distinct = keys.clone();
        distinct.sort();
        distinct.dedup();
        let rank = keys
            .iter()
            .map(|k| distinct.binary_search(k).expect("key present") as u32)
            .collect();
        Preference {
            agent,
            actions,
            outcomes,
            rank,
            classes: distinct.len() as u32,
        }
    }

    /// Same ordering attributed to a different agent.
    pub fn for_agent(mut self, agent: usize) -> Self {
        self.agent = agent;
        self
    }

    pub fn agent(&self) -> usize {
        self.agent
    }

    pub fn action_count(&self) -> usize {
        self.actions
    }

    pub fn outcome_count(&self) -> usize {
        self.outcomes
    }

    pub fn class_count(&self) -> usize {
        self.classes as usize
    }

    pub fn is_strict(&self) -> bool {
        self.classes as usize == self.rank.len()
    }

    /// Class index of a pair; smaller is better.
    pub fn rank(&self, (a, z): Pair) -> Result<usize> {
        if a < self.actions && z < self.outcomes {
            Ok(self.rank[a * self.outcomes + z] as usize)
        } else {
            Err(Error::UnknownPair {
                action: a,
                outcome: z,
            })
        }
    }

    pub fn compare(&self, p: Pair, q: Pair) -> Result<Comparison> {
        let (rp, rq) = (self.rank(p)?, self.rank(q)?);
        Ok(match rp.cmp(&rq) {
            std::cmp::Ordering::Less => Comparison::Prefer,
            std::cmp::Ordering::Equal => Comparison::Indifferent,
            std::cmp::Ordering::Greater => Comparison::Dispreferred,
        })
    }

    // Unchecked variants for hot search loops; callers guarantee bounds.

    #[inline]
    pub(crate) fn rank_of(&self, a: usize, z: usize) -> u32 {
        self.rank[a * self.outcomes + z]
    }

    /// `p ≿ q`.
    #[inline]
    pub fn weakly_prefers(&self, p: Pair, q: Pair) -> bool {
        self.rank_of(p.0, p.1) <= self.rank_of(q.0, q.1)
    }

    /// `p ≻ q`.
    #[inline]
    pub fn strictly_prefers(&self, p: Pair, q: Pair) -> bool {
        self.rank_of(p.0, p.1) < self.rank_of(q.0, q.1)
    }

    /// Indifference classes, best first; pairs within a class are in
    /// `(action, outcome)` order.
    pub fn classes(&self) -> Vec<Vec<Pair>> {
        let mut out = vec![Vec::new(); self.classes as usize];
        for (p, &r) in self.rank.iter().enumerate() {
            out[r as usize].push((p / self.outcomes, p % self.outcomes));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // a=0, b=1; z0=0, z1=1
    fn sample() -> Preference {
        Preference::from_classes(0, 2, 2, &[vec![(0, 1)], vec![(0, 0), (1, 1)], vec![(1, 0)]])
            .unwrap()
    }

    #[test]
    fn compare_across_and_within_classes() {
        let ord = sample();
        assert_eq!(ord.compare((0, 1), (1, 0)), Ok(Comparison::Prefer));
        assert_eq!(ord.compare((1, 0), (0, 1)), Ok(Comparison::Dispreferred));
        assert_eq!(ord.compare((0, 0), (1, 1)), Ok(Comparison::Indifferent));
        assert!(!ord.is_strict());
    }

    #[test]
    fn two_class_ordering_indifference() {
        // (a0,z1) ~ (a1,z0) > (a0,z0) ~ (a1,z1)
        let ord = Preference::from_classes(0, 2, 2, &[vec![(0, 1), (1, 0)], vec![(0, 0), (1, 1)]])
            .unwrap();
        assert_eq!(ord.compare((0, 1), (1, 0)), Ok(Comparison::Indifferent));
        assert_eq!(ord.compare((1, 0), (1, 1)), Ok(Comparison::Prefer));
    }

    #[test]
    fn unknown_pair() {
        let ord = sample();
        assert_eq!(
            ord.compare((2, 0), (0, 0)),
            Err(Error::UnknownPair {
                action: 2,
                outcome: 0
            })
        );
    }

    #[test]
    fn rejects_bad_partitions() {
        let missing =
            Preference::from_classes(0, 2, 2, &[vec![(0, 0), (0, 1)], vec![(1, 0)]]).unwrap_err();
        assert!(missing.to_string().contains("partition incomplete"));
        let twice =
            Preference::from_classes(0, 1, 2, &[vec![(0, 0)], vec![(0, 0), (0, 1)]]).unwrap_err();
        assert!(twice.to_string().contains("twice"));
        let empty = Preference::from_classes(0, 1, 1, &[vec![(0, 0)], vec![]]).unwrap_err();
        assert!(empty.to_string().contains("nonempty"));
    }

    #[test]
    fn strictness() {
        let strict =
            Preference::from_classes(0, 1, 3, &[vec![(0, 2)], vec![(0, 0)], vec![(0, 1)]]).unwrap();
        assert!(strict.is_strict());
    }

    #[test]
    fn keys_merge_ties() {
        let ord = Preference::from_keys(0, 2, 2, |(a, z)| a + z);
        assert_eq!(ord.class_count(), 3);
        assert_eq!(ord.compare((0, 1), (1, 0)), Ok(Comparison::Indifferent));
        assert_eq!(ord.classes()[0], vec![(0, 0)]);
    }
}
