use std::sync::Arc;

use crate::error::{Error, Result};
use crate::model::{Environment, Profile, SubProfile};

/// A deterministic mechanism `f: Π A_i → Z` as a total table in profile
/// enumeration order.
#[derive(Debug, Clone, PartialEq)]
pub struct DetMechanism {
    env: Arc<Environment>,
    table: Vec<usize>,
}

impl DetMechanism {
    pub fn new(env: Arc<Environment>, table: Vec<usize>) -> Result<Self> {
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
        if let Some(k) = table.iter().position(|&z| z >= env.outcome_count()) {
            return Err(Error::invariant(
                format!("table[{k}]"),
                format!("outcome index {} out of range", table[k]),
            ));
        }
        Ok(DetMechanism { env, table })
    }

    pub fn from_fn(env: Arc<Environment>, mut rule: impl FnMut(&Profile) -> usize) -> Result<Self> {
        let table = env.profiles().map(|p| rule(&p)).collect();
        Self::new(env, table)
    }

    pub fn env(&self) -> &Environment {
        &self.env
    }

    pub fn env_arc(&self) -> &Arc<Environment> {
        &self.env
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn outcome(&self, profile: &Profile) -> usize {
        self.table[self.env.profile_index(&profile.0)]
    }

    /// `f(x_i, a_{-i})`.
    #[inline]
    pub fn outcome_at(&self, agent: usize, action: usize, sub: &SubProfile) -> usize {
        self.table[self.env.joined_index(agent, action, sub)]
    }

    /// Same table over an environment with different domains.
    pub fn with_env(&self, env: Arc<Environment>) -> Result<Self> {
        if env.all_actions() != self.env.all_actions() || env.outcomes() != self.env.outcomes() {
            return Err(Error::invariant("environment", "agents or outcomes differ"));
        }
        Ok(DetMechanism {
            env,
            table: self.table.clone(),
        })
    }

    /// Every table over `env`, in odometer order (first profile slowest).
    pub fn all_tables(env: Arc<Environment>) -> impl Iterator<Item = DetMechanism> {
        let profiles = env.profile_count();
        let outcomes = env.outcome_count();
        let total = (outcomes as u128).pow(profiles as u32);
        (0..total).map(move |mut code| {
            let mut table = vec![0; profiles];
            for slot in table.iter_mut().rev() {
                *slot = (code % outcomes as u128) as usize;
                code /= outcomes as u128;
            }
            DetMechanism {
                env: Arc::clone(&env),
                table,
            }
        })
    }
}
