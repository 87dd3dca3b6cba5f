//! Simple-voting environments (`A_i = {abstain} ∪ Z`), the unanimity and
//! monotonicity axioms, and the majority referendum and plurality builders.

use std::sync::Arc;

use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::model::{Environment, Profile};

use super::DetMechanism;

/// Per-agent action indices for abstaining and for voting for each outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VotingLayout {
    pub abstain: Vec<usize>,
    /// `vote_for[i][z]` is agent `i`'s action that votes for outcome `z`.
    pub vote_for: Vec<Vec<usize>>,
}

impl VotingLayout {
    /// Recognises a voting environment: every agent's action labels are the
    /// outcome labels plus exactly one abstention label.
    pub fn of(env: &Environment) -> Result<Self> {
        let mut abstain = Vec::new();
        let mut vote_for = Vec::new();
        for i in 0..env.agent_count() {
            let actions = env.actions(i);
            if actions.len() != env.outcome_count() + 1 {
                return Err(Error::NotVotingEnvironment(format!(
                    "agent {i} has {} actions, expected {}",
                    actions.len(),
                    env.outcome_count() + 1
                )));
            }
            let votes = env
                .outcomes()
                .iter()
                .map(|z| {
                    env.action_index(i, z).ok_or_else(|| {
                        Error::NotVotingEnvironment(format!("agent {i} cannot vote for {z:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let abst = (0..actions.len())
                .find(|a| !votes.contains(a))
                .expect("one extra action");
            abstain.push(abst);
            vote_for.push(votes);
        }
        Ok(VotingLayout { abstain, vote_for })
    }

    /// The candidate an action votes for, if any.
    pub fn candidate(&self, agent: usize, action: usize) -> Option<usize> {
        self.vote_for[agent].iter().position(|&a| a == action)
    }
}

/// `f(z, ..., z) = z` for every candidate `z`.
pub fn satisfies_unanimity(f: &DetMechanism) -> Result<bool> {
    let env = f.env();
    let layout = VotingLayout::of(env)?;
    Ok((0..env.outcome_count()).all(|z| {
        let p = Profile(
            (0..env.agent_count())
                .map(|i| layout.vote_for[i][z])
                .collect(),
        );
        f.outcome(&p) == z
    }))
}

/// `f(x_i, a_{-i}) = z` implies `f(z, a_{-i}) = z`.
pub fn satisfies_monotonicity(f: &DetMechanism) -> Result<bool> {
    let env = f.env();
    let layout = VotingLayout::of(env)?;
    for i in 0..env.agent_count() {
        for sub in env.sub_profiles(i)? {
            for x in 0..env.action_count(i) {
                let z = f.outcome_at(i, x, &sub);
                if f.outcome_at(i, layout.vote_for[i][z], &sub) != z {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

fn voting_env(n: usize, abstain: &str, candidates: Vec<String>) -> Result<Environment> {
    let mut actions = vec![abstain.to_string()];
    actions.extend(candidates.iter().cloned());
    Environment::uniform(vec![actions; n], candidates, DomainSpec::Unrestricted)
}

/// `2m+1` voters choosing among abstain/remain/leave; the outcome is leave
/// exactly when leave votes outnumber remain votes.
pub fn build_majority_referendum(m: usize) -> Result<DetMechanism> {
    if m == 0 {
        return Err(Error::invariant("m", "must be at least 1"));
    }
    let env = Arc::new(voting_env(
        2 * m + 1,
        "abstain",
        vec!["remain".into(), "leave".into()],
    )?);
    let layout = VotingLayout::of(&env)?;
    let (remain, leave) = (0, 1);
    DetMechanism::from_fn(Arc::clone(&env), |p| {
        let count = |z: usize| {
            p.0.iter()
                .enumerate()
                .filter(|&(i, &a)| layout.vote_for[i][z] == a)
                .count()
        };
        if count(leave) > count(remain) {
            leave
        } else {
            remain
        }
    })
}

/// Plurality over `m` candidates labelled `1..=m` with abstention `0`.
///
/// Abstentions are ignored. Ties, including the all-abstain profile, go to
/// the candidate listed earliest in `tiebreak` (0-based candidate indices);
/// `None` means `1 < 2 < ... < m`.
pub fn build_plurality(n: usize, m: usize, tiebreak: Option<Vec<usize>>) -> Result<DetMechanism> {
    if n < 2 || m < 2 {
        return Err(Error::invariant("plurality", "needs n >= 2 and m >= 2"));
    }
    let order = tiebreak.unwrap_or_else(|| (0..m).collect());
    let mut sorted = order.clone();
    sorted.sort_unstable();
    if sorted != (0..m).collect::<Vec<_>>() {
        return Err(Error::invariant(
            "tiebreak",
            "must be a permutation of the candidates",
        ));
    }
    let env = Arc::new(voting_env(
        n,
        "0",
        (1..=m).map(|c| c.to_string()).collect(),
    )?);
    let layout = VotingLayout::of(&env)?;
    DetMechanism::from_fn(Arc::clone(&env), |p| {
        let mut tally = vec![0usize; m];
        for (i, &a) in p.0.iter().enumerate() {
            if let Some(z) = layout.candidate(i, a) {
                tally[z] += 1;
            }
        }
        let best = *tally.iter().max().expect("m >= 2");
        *order
            .iter()
            .find(|&&z| tally[z] == best)
            .expect("some candidate attains the maximum")
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(f: &DetMechanism, votes: &[&str]) -> usize {
        let p = f
            .env()
            .parse_profile(&votes.iter().map(|s| s.to_string()).collect::<Vec<_>>())
            .unwrap();
        f.outcome(&p)
    }

    #[test]
    fn referendum_outcomes() {
        let f = build_majority_referendum(1).unwrap();
        assert_eq!(f.env().agent_count(), 3);
        assert_eq!(labels(&f, &["leave", "leave", "abstain"]), 1);
        assert_eq!(labels(&f, &["leave", "remain", "abstain"]), 0);
        assert_eq!(labels(&f, &["abstain", "abstain", "abstain"]), 0);
        assert!(satisfies_unanimity(&f).unwrap());
    }

    #[test]
    fn plurality_ties_and_axioms() {
        let f = build_plurality(2, 2, None).unwrap();
        assert_eq!(labels(&f, &["1", "1"]), 0);
        assert_eq!(labels(&f, &["1", "2"]), 0);
        assert_eq!(labels(&f, &["0", "0"]), 0);
        assert_eq!(labels(&f, &["0", "2"]), 1);
        assert!(satisfies_unanimity(&f).unwrap());
        assert!(satisfies_monotonicity(&f).unwrap());

        let g = build_plurality(2, 2, Some(vec![1, 0])).unwrap();
        assert_eq!(labels(&g, &["1", "2"]), 1);
        assert!(build_plurality(2, 2, Some(vec![0, 0])).is_err());
    }

    #[test]
    fn constant_mechanism_axioms() {
        let base = build_plurality(2, 2, None).unwrap();
        let constant = DetMechanism::new(
            Arc::clone(base.env_arc()),
            vec![0; base.env().profile_count()],
        )
        .unwrap();
        assert!(!satisfies_unanimity(&constant).unwrap());
        assert!(satisfies_monotonicity(&constant).unwrap());
    }

    #[test]
    fn switching_to_the_winner_that_flips_breaks_monotonicity() {
        let base = build_plurality(2, 2, None).unwrap();
        // f(0, 0) = 1 but f(vote 1, 0) = 2.
        let mut table = base.table().to_vec();
        let env = base.env();
        table[env.profile_index(&[1, 0])] = 1;
        let f = DetMechanism::new(Arc::clone(base.env_arc()), table).unwrap();
        assert!(!satisfies_monotonicity(&f).unwrap());
    }

    #[test]
    fn non_voting_environment_rejected() {
        let env = Arc::new(
            Environment::uniform(
                vec![vec!["a".into(), "b".into()]; 2],
                vec!["x".into(), "y".into()],
                DomainSpec::Unrestricted,
            )
            .unwrap(),
        );
        let f = DetMechanism::new(env, vec![0; 4]).unwrap();
        assert!(matches!(
            satisfies_unanimity(&f),
            Err(Error::NotVotingEnvironment(_))
        ));
        assert!(satisfies_monotonicity(&f).is_err());
    }
}
