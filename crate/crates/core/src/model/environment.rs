use std::collections::HashSet;

use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::model::{Profile, Profiles, SubProfile};

/// A finite collective-choice environment: agents with finite action sets, a
/// finite outcome set, and one admissible preference domain per agent.
///
/// Actions and outcomes are addressed by index everywhere; labels are kept
/// for I/O.
#[derive(Debug, Clone, PartialEq)]
pub struct Environment {
    actions: Vec<Vec<String>>,
    outcomes: Vec<String>,
    domains: Vec<DomainSpec>,
    strides: Vec<usize>,
}

impl Environment {
    pub fn new(
        actions: Vec<Vec<String>>,
        outcomes: Vec<String>,
        domains: Vec<DomainSpec>,
    ) -> Result<Self> {
        if actions.is_empty() {
            return Err(Error::invariant("agents", "at least one agent is required"));
        }
        for (i, list) in actions.iter().enumerate() {
            if list.is_empty() {
                return Err(Error::invariant(
                    format!("agents[{i}]"),
                    "action list must be nonempty",
                ));
            }
            if let Some(dup) = first_duplicate(list) {
                return Err(Error::invariant(
                    format!("agents[{i}]"),
                    format!("duplicate action label {dup:?}"),
                ));
            }
        }
        if outcomes.is_empty() {
            return Err(Error::invariant(
                "outcomes",
                "outcome list must be nonempty",
            ));
        }
        if let Some(dup) = first_duplicate(&outcomes) {
            return Err(Error::invariant(
                "outcomes",
                format!("duplicate outcome label {dup:?}"),
            ));
        }
        if domains.len() != actions.len() {
            return Err(Error::invariant(
                "domains",
                format!(
                    "expected {} domain entries, found {}",
                    actions.len(),
                    domains.len()
                ),
            ));
        }

        let mut strides = vec![1usize; actions.len()];
        for i in (0..actions.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * actions[i + 1].len();
        }

        let env = Environment {
            actions,
            outcomes,
            domains,
            strides,
        };
        for (i, domain) in env.domains.iter().enumerate() {
            domain.validate_for(&env, i)?;
        }
        Ok(env)
    }

    /// Same agents and outcomes with every agent given `domain`.
    pub fn uniform(
        actions: Vec<Vec<String>>,
        outcomes: Vec<String>,
        domain: DomainSpec,
    ) -> Result<Self> {
        let domains = vec![domain; actions.len()];
        Self::new(actions, outcomes, domains)
    }

    /// Replaces the domain list, revalidating explicit orderings.
    pub fn with_domains(&self, domains: Vec<DomainSpec>) -> Result<Self> {
        Self::new(self.actions.clone(), self.outcomes.clone(), domains)
    }

    pub fn agent_count(&self) -> usize {
        self.actions.len()
    }

    pub fn actions(&self, agent: usize) -> &[String] {
        &self.actions[agent]
    }

    pub fn all_actions(&self) -> &[Vec<String>] {
        &self.actions
    }

    pub fn action_count(&self, agent: usize) -> usize {
        self.actions[agent].len()
    }

    pub fn outcomes(&self) -> &[String] {
        &self.outcomes
    }

    pub fn outcome_count(&self) -> usize {
        self.outcomes.len()
    }

    pub fn domains(&self) -> &[DomainSpec] {
        &self.domains
    }

    pub fn domain(&self, agent: usize) -> &DomainSpec {
        &self.domains[agent]
    }

    /// `|A_i × Z|`.
    pub fn pair_count(&self, agent: usize) -> usize {
        self.action_count(agent) * self.outcome_count()
    }

    pub fn check_agent(&self, agent: usize) -> Result<()> {
        if agent < self.agent_count() {
            Ok(())
        } else {
            Err(Error::AgentOutOfRange(agent))
        }
    }

    pub fn action_index(&self, agent: usize, label: &str) -> Option<usize> {
        self.actions.get(agent)?.iter().position(|a| a == label)
    }

    pub fn outcome_index(&self, label: &str) -> Option<usize> {
        self.outcomes.iter().position(|z| z == label)
    }

    pub fn profile_count(&self) -> usize {
        self.strides[0] * self.actions[0].len()
    }

    pub fn sub_profile_count(&self, agent: usize) -> usize {
        self.profile_count() / self.action_count(agent)
    }

    /// Position of a profile in lexicographic enumeration order.
    pub fn profile_index(&self, profile: &[usize]) -> usize {
        debug_assert_eq!(profile.len(), self.agent_count());
        profile.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    /// Index of the profile `(x_i, sub)` without materialising it.
    pub fn joined_index(&self, agent: usize, action: usize, sub: &SubProfile) -> usize {
        let mut idx = action * self.strides[agent];
        for (j, a) in sub.iter_agents(agent) {
            idx += a * self.strides[j];
        }
        idx
    }

    pub fn profile_at(&self, mut index: usize) -> Profile {
        let mut out = vec![0; self.agent_count()];
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = index / self.strides[i];
            index %= self.strides[i];
        }
        Profile(out)
    }

    /// Every element of `Π A_i`, lexicographic in per-agent action indices.
    pub fn profiles(&self) -> Profiles {
        Profiles::new(self.actions.iter().map(Vec::len).collect())
    }

    /// Every element of `A_{-i}`, lexicographic.
    pub fn sub_profiles(&self, agent: usize) -> Result<Vec<SubProfile>> {
        self.check_agent(agent)?;
        let radices: Vec<usize> = (0..self.agent_count())
            .filter(|&j| j != agent)
            .map(|j| self.action_count(j))
            .collect();
        Ok(Profiles::new(radices).map(|p| SubProfile(p.0)).collect())
    }

    pub fn profile_labels(&self, profile: &Profile) -> Vec<String> {
        profile
            .0
            .iter()
            .enumerate()
            .map(|(j, &a)| self.actions[j][a].clone())
            .collect()
    }

    pub fn sub_profile_labels(&self, agent: usize, sub: &SubProfile) -> Vec<String> {
        sub.iter_agents(agent)
            .map(|(j, a)| self.actions[j][a].clone())
            .collect()
    }

    /// Parses a full profile given as action labels.
    pub fn parse_profile(&self, labels: &[String]) -> Result<Profile> {
        if labels.len() != self.agent_count() {
            return Err(Error::invariant(
                "profile",
                format!(
                    "expected {} actions, found {}",
                    self.agent_count(),
                    labels.len()
                ),
            ));
        }
        labels
            .iter()
            .enumerate()
            .map(|(j, l)| {
                self.action_index(j, l).ok_or_else(|| {
                    Error::invariant(
                        format!("profile[{j}]"),
                        format!("unknown action {l:?} for agent {j}"),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(Profile)
    }

    pub fn parse_sub_profile(&self, agent: usize, labels: &[String]) -> Result<SubProfile> {
        self.check_agent(agent)?;
        let others: Vec<usize> = (0..self.agent_count()).filter(|&j| j != agent).collect();
        if labels.len() != others.len() {
            return Err(Error::invariant(
                "sub_profile",
                format!("expected {} actions, found {}", others.len(), labels.len()),
            ));
        }
        others
            .iter()
            .zip(labels)
            .map(|(&j, l)| {
                self.action_index(j, l).ok_or_else(|| {
                    Error::invariant("sub_profile", format!("unknown action {l:?} for agent {j}"))
                })
            })
            .collect::<Result<Vec<_>>>()
            .map(SubProfile)
    }
}

fn first_duplicate(labels: &[String]) -> Option<&String> {
    let mut seen = HashSet::new();
    labels.iter().find(|l| !seen.insert(l.as_str()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn env(actions: &[&[&str]], outcomes: &[&str]) -> Environment {
        Environment::uniform(
            actions.iter().map(|a| labels(a)).collect(),
            labels(outcomes),
            DomainSpec::Unrestricted,
        )
        .unwrap()
    }

    #[test]
    fn profiles_in_lexicographic_order() {
        let e = env(&[&["a", "b"], &["c"]], &["z"]);
        let ps: Vec<_> = e.profiles().map(|p| e.profile_labels(&p)).collect();
        assert_eq!(ps, vec![labels(&["a", "c"]), labels(&["b", "c"])]);

        let e = env(&[&["a", "b"], &["c", "d"]], &["z"]);
        let ps: Vec<_> = e.profiles().collect();
        assert_eq!(ps.len(), 4);
        assert_eq!(e.profile_labels(&ps[0]), labels(&["a", "c"]));
        assert_eq!(e.profile_labels(&ps[1]), labels(&["a", "d"]));
    }

    #[test]
    fn referendum_sized_counts() {
        let v: &[&str] = &["0", "r", "l"];
        let e = env(&[v, v, v], &["R", "L"]);
        assert_eq!(e.profiles().count(), 27);
        assert_eq!(e.sub_profiles(1).unwrap().len(), 9);
    }

    #[test]
    fn sub_profiles_of_second_agent() {
        let e = env(&[&["a", "b"], &["c", "d"]], &["z"]);
        let subs = e.sub_profiles(0).unwrap();
        let ls: Vec<_> = subs.iter().map(|s| e.sub_profile_labels(0, s)).collect();
        assert_eq!(ls, vec![labels(&["c"]), labels(&["d"])]);
        assert_eq!(e.sub_profiles(2), Err(Error::AgentOutOfRange(2)));
    }

    #[test]
    fn single_agent_has_one_empty_sub_profile() {
        let e = env(&[&["a", "b"]], &["z"]);
        let subs = e.sub_profiles(0).unwrap();
        assert_eq!(subs, vec![SubProfile(vec![])]);
    }

    #[test]
    fn joined_index_matches_profile_index() {
        let e = env(&[&["a", "b"], &["c", "d", "e"], &["f", "g"]], &["z"]);
        for i in 0..3 {
            for sub in e.sub_profiles(i).unwrap() {
                for x in 0..e.action_count(i) {
                    let p = sub.join(i, x);
                    assert_eq!(e.joined_index(i, x, &sub), e.profile_index(&p.0));
                    assert_eq!(e.profile_at(e.profile_index(&p.0)), p);
                }
            }
        }
    }

    #[test]
    fn rejects_duplicate_labels() {
        let err = Environment::uniform(
            vec![labels(&["a", "a"])],
            labels(&["z"]),
            DomainSpec::Unrestricted,
        )
        .unwrap_err();
        assert!(matches!(err, Error::InvariantViolation { .. }));
        assert!(
            Environment::uniform(vec![labels(&["a"])], vec![], DomainSpec::Unrestricted).is_err()
        );
    }
}
