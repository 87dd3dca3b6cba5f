//! The outcome-invariance characterization of anomaly-free deterministic
//! mechanisms: whenever two actions of an agent tie at some opponent
//! sub-profile, they must tie with that same outcome at every sub-profile.
//! Under all-weak, all-strict, or weak-only domains this holds exactly when
//! no witness exists.

use std::ops::ControlFlow;

use crate::domains::DomainKind;
use crate::model::{Preference, SubProfile};
use crate::witness::BaWitness;

use super::DetMechanism;

/// Two actions `r < ℓ` tie on `outcome` at `a_minus` but not at `b_minus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieViolation {
    pub agent: usize,
    pub r: usize,
    pub l: usize,
    pub a_minus: SubProfile,
    pub b_minus: SubProfile,
    pub outcome: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TieInvariance {
    Holds,
    Fails(TieViolation),
}

fn for_each_violation(f: &DetMechanism, mut visit: impl FnMut(TieViolation) -> ControlFlow<()>) {
    let env = f.env();
    for agent in 0..env.agent_count() {
        let subs = env.sub_profiles(agent).expect("agent in range");
        let n = env.action_count(agent);
        for r in 0..n {
            for l in r + 1..n {
                for a in &subs {
                    let z = f.outcome_at(agent, r, a);
                    if f.outcome_at(agent, l, a) != z {
                        continue;
                    }
                    for b in &subs {
                        if f.outcome_at(agent, r, b) == z && f.outcome_at(agent, l, b) == z {
                            continue;
                        }
                        let v = TieViolation {
                            agent,
                            r,
                            l,
                            a_minus: a.clone(),
                            b_minus: b.clone(),
                            outcome: z,
                        };
                        if visit(v).is_break() {
                            return;
                        }
                    }
                }
            }
        }
    }
}

/// First violation in `(i, r, ℓ, a, b)` order, or `Holds`.
pub fn check_tie_invariance(f: &DetMechanism) -> TieInvariance {
    let mut first = None;
    for_each_violation(f, |v| {
        first = Some(v);
        ControlFlow::Break(())
    });
    match first {
        Some(v) => TieInvariance::Fails(v),
        None => TieInvariance::Holds,
    }
}

/// Every violation, in the same order as `check_tie_invariance`.
pub fn tie_invariance_violations(f: &DetMechanism) -> Vec<TieViolation> {
    let mut all = Vec::new();
    for_each_violation(f, |v| {
        all.push(v);
        ControlFlow::Continue(())
    });
    all
}

/// Anomaly-freeness decided through the characterization, valid when every
/// agent's domain is of the given kind.
pub fn nba_by_characterization(f: &DetMechanism, _kind: DomainKind) -> bool {
    check_tie_invariance(f) == TieInvariance::Holds
}

/// Builds a witness ordering from a violation, admissible in `kind`.
///
/// With `p = (r, f(r,b))` and the tie outcome `z`:
/// - if `p ≠ (r, z)`, rank `p ≻ (ℓ,z) ≻ (r,z)` above everything else;
/// - otherwise `f(ℓ,b) ≠ z`, and `(ℓ,z) ≻ (r,z)` above everything else works.
///
/// The tail is either strict (canonical pair order) or, for weak-only
/// domains, merged into the class of `(r, z)`. A violation needs at least two
/// outcomes and two actions, so that class is never a singleton.
pub fn witness_from_violation(f: &DetMechanism, v: &TieViolation, kind: DomainKind) -> BaWitness {
    let env = f.env();
    let (na, nz) = (env.action_count(v.agent), env.outcome_count());
    let z = v.outcome;
    let top = (v.r, f.outcome_at(v.agent, v.r, &v.b_minus));
    let mut head: Vec<(usize, usize)> = Vec::new();
    if top != (v.r, z) {
        head.push(top);
    }
    head.push((v.l, z));
    head.push((v.r, z));

    let rest: Vec<(usize, usize)> = (0..na)
        .flat_map(|a| (0..nz).map(move |o| (a, o)))
        .filter(|p| !head.contains(p))
        .collect();

    let mut classes: Vec<Vec<(usize, usize)>> = head.iter().map(|&p| vec![p]).collect();
    match kind {
        DomainKind::WeakOnly => classes.last_mut().expect("nonempty").extend(rest),
        DomainKind::Unrestricted | DomainKind::StrictOnly => {
            classes.extend(rest.into_iter().map(|p| vec![p]))
        }
    }
    let ordering =
        Preference::from_classes(v.agent, na, nz, &classes).expect("constructed partition");
    BaWitness {
        agent: v.agent,
        r: v.r,
        l: v.l,
        a_minus: v.a_minus.clone(),
        b_minus: v.b_minus.clone(),
        ordering,
    }
}
