//! JSON documents for environments, mechanisms, orderings and witnesses.
//!
//! Labels are used throughout, never indices, and probabilities are `p/q`
//! strings. An ordering is a list of indifference classes, best first, each
//! a list of `[action, outcome]` pairs.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::deterministic::DetMechanism;
use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::model::{Environment, Preference};
use crate::rational::{format_rational, parse_rational};
use crate::stochastic::{Distribution, ProbMechanism};
use crate::witness::BaWitness;

pub type OrderingDoc = Vec<Vec<[String; 2]>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainDoc {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orderings: Option<Vec<OrderingDoc>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvironmentDoc {
    pub agents: Vec<Vec<String>>,
    pub outcomes: Vec<String>,
    pub domains: Vec<DomainDoc>,
}

/// A mechanism with its environment. Exactly one of `outcomes`
/// (deterministic) or `distributions` (probabilistic) is present, parallel to
/// `profiles`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MechanismDoc {
    pub environment: EnvironmentDoc,
    pub profiles: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcomes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distributions: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDoc {
    /// 0-based agent index.
    pub agent: usize,
    pub r: String,
    pub l: String,
    pub a_minus: Vec<String>,
    pub b_minus: Vec<String>,
    pub ordering: OrderingDoc,
}

/// Any document accepted by `validate`.
#[derive(Debug, Clone, PartialEq)]
pub enum Document {
    Environment(Environment),
    Deterministic(DetMechanism),
    Probabilistic(ProbMechanism),
}

pub fn ordering_to_doc(env: &Environment, ord: &Preference) -> OrderingDoc {
    let agent = ord.agent();
    ord.classes()
        .into_iter()
        .map(|class| {
            class
                .into_iter()
                .map(|(a, z)| [env.actions(agent)[a].clone(), env.outcomes()[z].clone()])
                .collect()
        })
        .collect()
}

pub fn ordering_from_doc(env: &Environment, agent: usize, doc: &OrderingDoc) -> Result<Preference> {
    env.check_agent(agent)?;
    let classes = doc
        .iter()
        .map(|class| {
            class
                .iter()
                .map(|[a, z]| {
                    let ai = env.action_index(agent, a).ok_or_else(|| {
                        Error::invariant(
                            "ordering",
                            format!("unknown action {a:?} for agent {agent}"),
                        )
                    })?;
                    let zi = env.outcome_index(z).ok_or_else(|| {
                        Error::invariant("ordering", format!("unknown outcome {z:?}"))
                    })?;
                    Ok((ai, zi))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Preference::from_classes(
        agent,
        env.action_count(agent),
        env.outcome_count(),
        &classes,
    )
}

pub fn domain_to_doc(env: &Environment, spec: &DomainSpec) -> DomainDoc {
    DomainDoc {
        kind: spec.name().to_string(),
        orderings: match spec {
            DomainSpec::Explicit(list) => {
                Some(list.iter().map(|o| ordering_to_doc(env, o)).collect())
            }
            _ => None,
        },
    }
}

/// Domain entries need the agents and outcomes to resolve labels, so they are
/// parsed against a bare environment.
pub fn domain_from_doc(env: &Environment, agent: usize, doc: &DomainDoc) -> Result<DomainSpec> {
    let location = format!("domains[{agent}]");
    let spec = match doc.kind.as_str() {
        "unrestricted" => DomainSpec::Unrestricted,
        "strict" => DomainSpec::StrictOnly,
        "weak_only" => DomainSpec::WeakOnly,
        "explicit" => {
            let list = doc.orderings.as_ref().ok_or_else(|| {
                Error::invariant(&location, "explicit domain needs an orderings list")
            })?;
            let parsed = list
                .iter()
                .enumerate()
                .map(|(k, o)| {
                    ordering_from_doc(env, agent, o).map_err(|e| match e {
                        Error::InvariantViolation { message, .. } => {
                            Error::invariant(format!("{location}.orderings[{k}]"), message)
                        }
                        other => other,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            DomainSpec::Explicit(parsed)
        }
        other => {
            return Err(Error::invariant(
                &location,
                format!("unknown domain kind {other:?}"),
            ))
        }
    };
    if doc.orderings.is_some() && !matches!(spec, DomainSpec::Explicit(_)) {
        return Err(Error::invariant(
            &location,
            "orderings are only allowed for explicit domains",
        ));
    }
    Ok(spec)
}

pub fn environment_to_doc(env: &Environment) -> EnvironmentDoc {
    EnvironmentDoc {
        agents: env.all_actions().to_vec(),
        outcomes: env.outcomes().to_vec(),
        domains: env
            .domains()
            .iter()
            .map(|d| domain_to_doc(env, d))
            .collect(),
    }
}

pub fn environment_from_doc(doc: &EnvironmentDoc) -> Result<Environment> {
    let bare = Environment::uniform(
        doc.agents.clone(),
        doc.outcomes.clone(),
        DomainSpec::Unrestricted,
    )?;
    let domains = parse_domain_list(&bare, &doc.domains)?;
    bare.with_domains(domains)
}

pub fn parse_domain_list(env: &Environment, docs: &[DomainDoc]) -> Result<Vec<DomainSpec>> {
    if docs.len() != env.agent_count() {
        return Err(Error::invariant(
            "domains",
            format!(
                "expected {} domain entries, found {}",
                env.agent_count(),
                docs.len()
            ),
        ));
    }
    docs.iter()
        .enumerate()
        .map(|(i, d)| domain_from_doc(env, i, d))
        .collect()
}

/// Maps each listed profile to its table slot, requiring every profile of
/// the environment exactly once.
fn profile_slots(env: &Environment, profiles: &[Vec<String>]) -> Result<Vec<usize>> {
    if profiles.len() != env.profile_count() {
        return Err(Error::invariant(
            "profiles",
            format!(
                "expected {} profiles, found {}",
                env.profile_count(),
                profiles.len()
            ),
        ));
    }
    let mut seen = vec![false; env.profile_count()];
    profiles
        .iter()
        .enumerate()
        .map(|(k, labels)| {
            let p = env.parse_profile(labels).map_err(|e| match e {
                Error::InvariantViolation { message, .. } => {
                    Error::invariant(format!("profiles[{k}]"), message)
                }
                other => other,
            })?;
            let slot = env.profile_index(&p.0);
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::invariant(
                    format!("profiles[{k}]"),
                    "duplicate profile",
                ));
            }
            Ok(slot)
        })
        .collect()
}

pub fn det_to_doc(f: &DetMechanism) -> MechanismDoc {
    let env = f.env();
    MechanismDoc {
        environment: environment_to_doc(env),
        profiles: env.profiles().map(|p| env.profile_labels(&p)).collect(),
        outcomes: Some(
            f.table()
                .iter()
                .map(|&z| env.outcomes()[z].clone())
                .collect(),
        ),
        distributions: None,
    }
}

pub fn prob_to_doc(f: &ProbMechanism) -> MechanismDoc {
    let env = f.env();
    MechanismDoc {
        environment: environment_to_doc(env),
        profiles: env.profiles().map(|p| env.profile_labels(&p)).collect(),
        outcomes: None,
        distributions: Some(
            f.table()
                .iter()
                .map(|d| d.probs().iter().map(format_rational).collect())
                .collect(),
        ),
    }
}

pub fn mechanism_from_doc(doc: &MechanismDoc) -> Result<Document> {
    let env = Arc::new(environment_from_doc(&doc.environment)?);
    let slots = profile_slots(&env, &doc.profiles)?;
    match (&doc.outcomes, &doc.distributions) {
        (Some(outcomes), None) => {
            if outcomes.len() != slots.len() {
                return Err(Error::invariant("outcomes", "must be parallel to profiles"));
            }
            let mut table = vec![0; slots.len()];
            for (k, (label, &slot)) in outcomes.iter().zip(&slots).enumerate() {
                table[slot] = env.outcome_index(label).ok_or_else(|| {
                    Error::invariant(
                        format!("outcomes[{k}]"),
                        format!("unknown outcome {label:?}"),
                    )
                })?;
            }
            Ok(Document::Deterministic(DetMechanism::new(env, table)?))
        }
        (None, Some(dists)) => {
            if dists.len() != slots.len() {
                return Err(Error::invariant(
                    "distributions",
                    "must be parallel to profiles",
                ));
            }
            let mut table = vec![None; slots.len()];
            for (k, (row, &slot)) in dists.iter().zip(&slots).enumerate() {
                let location = format!("distributions[{k}]");
                if row.len() != env.outcome_count() {
                    return Err(Error::invariant(
                        location,
                        format!("expected {} probabilities", env.outcome_count()),
                    ));
                }
                let probs = row
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?;
                let d = Distribution::new(probs).map_err(|e| match e {
                    Error::InvariantViolation { message, .. } => {
                        Error::invariant(location.clone(), message)
                    }
                    other => other,
                })?;
                table[slot] = Some(d);
            }
            let table = table
                .into_iter()
                .map(|d| d.expect("every slot filled"))
                .collect();
            Ok(Document::Probabilistic(ProbMechanism::new(env, table)?))
        }
        _ => Err(Error::invariant(
            "mechanism",
            "exactly one of `outcomes` or `distributions` is required",
        )),
    }
}

/// Parses and validates an environment or mechanism document.
pub fn parse_document(json: &str) -> Result<Document> {
    let value: serde_json::Value =
        serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    if value.get("agents").is_some() {
        let doc: EnvironmentDoc =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Document::Environment(environment_from_doc(&doc)?))
    } else {
        let doc: MechanismDoc =
            serde_json::from_value(value).map_err(|e| Error::Parse(e.to_string()))?;
        mechanism_from_doc(&doc)
    }
}

pub fn witness_to_doc(env: &Environment, w: &BaWitness) -> WitnessDoc {
    let actions = env.actions(w.agent);
    WitnessDoc {
        agent: w.agent,
        r: actions[w.r].clone(),
        l: actions[w.l].clone(),
        a_minus: env.sub_profile_labels(w.agent, &w.a_minus),
        b_minus: env.sub_profile_labels(w.agent, &w.b_minus),
        ordering: ordering_to_doc(env, &w.ordering),
    }
}

pub fn witness_from_doc(env: &Environment, doc: &WitnessDoc) -> Result<BaWitness> {
    env.check_agent(doc.agent)?;
    let action = |label: &str| {
        env.action_index(doc.agent, label)
            .ok_or_else(|| Error::invariant("witness", format!("unknown action {label:?}")))
    };
    Ok(BaWitness {
        agent: doc.agent,
        r: action(&doc.r)?,
        l: action(&doc.l)?,
        a_minus: env.parse_sub_profile(doc.agent, &doc.a_minus)?,
        b_minus: env.parse_sub_profile(doc.agent, &doc.b_minus)?,
        ordering: ordering_from_doc(env, doc.agent, &doc.ordering)?,
    })
}
