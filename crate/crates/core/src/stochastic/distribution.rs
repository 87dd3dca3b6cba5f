use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Environment, Profile, SubProfile};
use crate::rational::{format_rational, Rational};

/// An exact probability vector over outcomes, indexed like `Environment::outcomes`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Distribution {
    probs: Vec<Rational>,
}

impl Distribution {
    pub fn new(probs: Vec<Rational>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::invariant(
                "distribution",
                "must cover at least one outcome",
            ));
        }
        if let Some(k) = probs.iter().position(|p| *p < Rational::zero()) {
            return Err(Error::invariant(
                format!("distribution[{k}]"),
                "probabilities must be nonnegative",
            ));
        }
        let total: Rational = probs.iter().sum();
        if !total.is_one() {
            return Err(Error::invariant(
                "distribution",
                format!(
                    "probabilities must sum to 1 (found {})",
                    format_rational(&total)
                ),
            ));
        }
        Ok(Distribution { probs })
    }

    pub fn uniform(outcomes: usize) -> Self {
        Distribution {
            probs: vec![Rational::new(1, outcomes as i64); outcomes],
        }
    }

    pub fn point(outcomes: usize, at: usize) -> Self {
        let mut probs = vec![Rational::zero(); outcomes];
        probs[at] = Rational::one();
        Distribution { probs }
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn prob(&self, outcome: usize) -> Rational {
        self.probs[outcome]
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Every outcome has positive probability.
    pub fn is_totally_mixed(&self) -> bool {
        self.probs.iter().all(|p| *p > Rational::zero())
    }
}

/// A probabilistic mechanism `f: Π A_i → Δ(Z)` as a total table in profile
/// enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbMechanism {
    env: Arc<Environment>,
    table: Vec<Distribution>,
}

impl ProbMechanism {
    pub fn new(env: Arc<Environment>, table: Vec<Distribution>) -> Result<Self> {
        if table.len() != env.profile_count() {
            return Err(Error::invariant(
                "table",
                format!(
                    "expected {} profiles, found {}",
                    env.profile_count(),
                    table.len()
                ),
            ));
        }
        if let Some(k) = table.iter().position(|d| d.len() != env.outcome_count()) {
            return Err(Error::invariant(
                format!("table[{k}]"),
                format!("distribution must have {} entries", env.outcome_count()),
            ));
        }
        Ok(ProbMechanism { env, table })
    }

    pub fn env(&self) -> &Environment {
        &self.env
    }

    pub fn env_arc(&self) -> &Arc<Environment> {
        &self.env
    }

    pub fn table(&self) -> &[Distribution] {
        &self.table
    }

    pub fn at(&self, profile: &Profile) -> &Distribution {
        &self.table[self.env.profile_index(&profile.0)]
    }

    #[inline]
    pub fn at_joined(&self, agent: usize, action: usize, sub: &SubProfile) -> &Distribution {
        &self.table[self.env.joined_index(agent, action, sub)]
    }

    /// Every profile is mapped to a totally mixed distribution.
    pub fn is_completely_mixed(&self) -> bool {
        self.table.iter().all(Distribution::is_totally_mixed)
    }

    pub fn with_env(&self, env: Arc<Environment>) -> Result<Self> {
        if env.all_actions() != self.env.all_actions() || env.outcomes() != self.env.outcomes() {
            return Err(Error::invariant("environment", "agents or outcomes differ"));
        }
        Ok(ProbMechanism {
            env,
            table: self.table.clone(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let d = Distribution::new(vec![Rational::new(1, 3), Rational::new(2, 3)]).unwrap();
        assert!(d.is_totally_mixed());
        let err = Distribution::new(vec![Rational::new(1, 2), Rational::new(1, 3)]).unwrap_err();
        assert!(err.to_string().contains("probabilities must sum to 1"));
        assert!(Distribution::new(vec![Rational::new(3, 2), Rational::new(-1, 2)]).is_err());
    }

    #[test]
    fn mixedness() {
        assert!(Distribution::uniform(3).is_totally_mixed());
        assert!(!Distribution::point(2, 0).is_totally_mixed());
    }
}
