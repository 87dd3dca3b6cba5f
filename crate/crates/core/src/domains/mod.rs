//! Preference domains: enumeration of weak and strict orders, structural
//! predicates (separability, classicality), and the lexicographic queueing
//! preferences.

mod enumerate;
mod properties;
mod queueing;

pub use enumerate::{
    classical_orderings, enumerate_strict_orderings, enumerate_weak_orderings,
    ordered_partition_count,
};
pub use properties::{is_classical, is_separable, separability_violation, SeparabilityViolation};
pub use queueing::{build_queueing_pref_1, build_queueing_pref_2};

use crate::error::{Error, Result};
use crate::model::{Environment, Preference};

/// The admissible set `D_i` for one agent.
#[derive(Debug, Clone, PartialEq)]
pub enum DomainSpec {
    /// All weak orders `R_i`.
    Unrestricted,
    /// All strict orders `P_i`.
    StrictOnly,
    /// Weak orders with at least one nontrivial indifference, `R_i \ P_i`.
    WeakOnly,
    Explicit(Vec<Preference>),
}

/// The three enumerable domain families sharing one characterization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Unrestricted,
    StrictOnly,
    WeakOnly,
}

impl DomainKind {
    pub const ALL: [DomainKind; 3] = [
        DomainKind::Unrestricted,
        DomainKind::StrictOnly,
        DomainKind::WeakOnly,
    ];

    pub fn spec(self) -> DomainSpec {
        match self {
            DomainKind::Unrestricted => DomainSpec::Unrestricted,
            DomainKind::StrictOnly => DomainSpec::StrictOnly,
            DomainKind::WeakOnly => DomainSpec::WeakOnly,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DomainKind::Unrestricted => "unrestricted",
            DomainKind::StrictOnly => "strict",
            DomainKind::WeakOnly => "weak_only",
        }
    }
}

impl DomainSpec {
    pub fn kind(&self) -> Option<DomainKind> {
        match self {
            DomainSpec::Unrestricted => Some(DomainKind::Unrestricted),
            DomainSpec::StrictOnly => Some(DomainKind::StrictOnly),
            DomainSpec::WeakOnly => Some(DomainKind::WeakOnly),
            DomainSpec::Explicit(_) => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DomainSpec::Explicit(_) => "explicit",
            other => other.kind().map(DomainKind::name).unwrap_or("explicit"),
        }
    }

    pub(crate) fn validate_for(&self, env: &Environment, agent: usize) -> Result<()> {
        let DomainSpec::Explicit(list) = self else {
            return Ok(());
        };
        if list.is_empty() {
            return Err(Error::invariant(
                format!("domains[{agent}]"),
                "explicit domain must list at least one ordering",
            ));
        }
        for (k, ord) in list.iter().enumerate() {
            if ord.agent() != agent
                || ord.action_count() != env.action_count(agent)
                || ord.outcome_count() != env.outcome_count()
            {
                return Err(Error::invariant(
                    format!("domains[{agent}].orderings[{k}]"),
                    "ordering is not over this agent's action-outcome pairs",
                ));
            }
        }
        Ok(())
    }
}

/// Upper bounds on `|A_i × Z|` for enumerating generated domains.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub weak: usize,
    pub strict: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { weak: 6, strict: 8 }
    }
}

impl Caps {
    pub fn uniform(cap: usize) -> Self {
        Caps {
            weak: cap,
            strict: cap,
        }
    }
}

/// Materialises agent `agent`'s domain as a list of orderings in generator
/// order.
pub fn domain_orderings(
    env: &Environment,
    agent: usize,
    spec: &DomainSpec,
    caps: Caps,
) -> Result<Vec<Preference>> {
    env.check_agent(agent)?;
    let (actions, outcomes) = (env.action_count(agent), env.outcome_count());
    match spec {
        DomainSpec::Unrestricted => enumerate_weak_orderings(agent, actions, outcomes, caps.weak),
        DomainSpec::StrictOnly => enumerate_strict_orderings(agent, actions, outcomes, caps.strict),
        DomainSpec::WeakOnly => Ok(
            enumerate_weak_orderings(agent, actions, outcomes, caps.weak)?
                .into_iter()
                .filter(|o| !o.is_strict())
                .collect(),
        ),
        DomainSpec::Explicit(list) => {
            spec.validate_for(env, agent)?;
            Ok(list.clone())
        }
    }
}

/// Materialises every agent's domain.
pub fn resolve_domains(
    env: &Environment,
    specs: &[DomainSpec],
    caps: Caps,
) -> Result<Vec<Vec<Preference>>> {
    if specs.len() != env.agent_count() {
        return Err(Error::invariant(
            "domains",
            format!(
                "expected {} domain entries, found {}",
                env.agent_count(),
                specs.len()
            ),
        ));
    }
    specs
        .iter()
        .enumerate()
        .map(|(i, s)| domain_orderings(env, i, s, caps))
        .collect()
}
