use crate::domains::{resolve_domains, DomainSpec};
use crate::error::Result;
use crate::model::{Comparison, Environment, Preference, SubProfile};
use crate::search::{self, Conditions, SearchOptions, SearchResult};
use crate::witness::{BaWitness, WitnessViolation};

use super::DetMechanism;

struct Deterministic<'a> {
    f: &'a DetMechanism,
    strict_iii: bool,
}

impl Conditions for Deterministic<'_> {
    fn env(&self) -> &Environment {
        self.f.env()
    }

    fn ties(&self, i: usize, r: usize, l: usize, a: &SubProfile) -> bool {
        self.f.outcome_at(i, r, a) == self.f.outcome_at(i, l, a)
    }

    fn prefers_l(&self, ord: &Preference, i: usize, r: usize, l: usize, a: &SubProfile) -> bool {
        let z = self.f.outcome_at(i, r, a);
        ord.strictly_prefers((l, z), (r, z))
    }

    fn best_reply(&self, ord: &Preference, i: usize, r: usize, b: &SubProfile) -> bool {
        let top = (r, self.f.outcome_at(i, r, b));
        (0..self.f.env().action_count(i)).all(|x| {
            let other = (x, self.f.outcome_at(i, x, b));
            if self.strict_iii && x != r {
                ord.strictly_prefers(top, other)
            } else {
                ord.weakly_prefers(top, other)
            }
        })
    }
}

/// First witness in canonical order over the given domains, or `None` when
/// the mechanism has no anomaly there.
///
/// Fails with `CapExceeded` when a generated domain is too large to
/// enumerate.
pub fn find_ba_witness(f: &DetMechanism, domains: &[DomainSpec]) -> Result<Option<BaWitness>> {
    Ok(search_ba_witness(f, domains, &SearchOptions::default())?.witness)
}

pub fn search_ba_witness(
    f: &DetMechanism,
    domains: &[DomainSpec],
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let resolved = resolve_domains(f.env(), domains, opts.caps)?;
    Ok(search_ba_witness_in(f, &resolved, opts))
}

/// Search over domains that are already materialised (one list per agent).
pub fn search_ba_witness_in(
    f: &DetMechanism,
    domains: &[Vec<Preference>],
    opts: &SearchOptions,
) -> SearchResult {
    let cond = Deterministic {
        f,
        strict_iii: opts.strict_iii,
    };
    search::run(&cond, domains, opts.jobs)
}

/// Re-checks a witness directly against the mechanism table.
pub fn validate_witness(
    f: &DetMechanism,
    w: &BaWitness,
    strict_iii: bool,
) -> std::result::Result<(), WitnessViolation> {
    let env = f.env();
    check_shape(env, w)?;
    let at = |x: usize, sub: &SubProfile| f.outcome(&sub.join(w.agent, x));
    let cmp = |p, q| {
        w.ordering
            .compare(p, q)
            .map_err(|e| WitnessViolation::Malformed(e.to_string()))
    };

    if at(w.r, &w.a_minus) != at(w.l, &w.a_minus) {
        return Err(WitnessViolation::NoTie);
    }
    let protest = cmp((w.l, at(w.l, &w.a_minus)), (w.r, at(w.r, &w.a_minus)))?;
    if protest != Comparison::Prefer {
        return Err(WitnessViolation::NotPreferred);
    }
    let top = (w.r, at(w.r, &w.b_minus));
    for x in 0..env.action_count(w.agent) {
        let c = cmp(top, (x, at(x, &w.b_minus)))?;
        let ok = match c {
            Comparison::Prefer => true,
            Comparison::Indifferent => !strict_iii || x == w.r,
            Comparison::Dispreferred => false,
        };
        if !ok {
            return Err(WitnessViolation::NotBestReply(x));
        }
    }
    Ok(())
}

pub(crate) fn check_shape(
    env: &Environment,
    w: &BaWitness,
) -> std::result::Result<(), WitnessViolation> {
    let bad = |m: &str| Err(WitnessViolation::Malformed(m.to_string()));
    if w.agent >= env.agent_count() {
        return bad("agent out of range");
    }
    let n = env.action_count(w.agent);
    if w.r >= n || w.l >= n {
        return bad("action out of range");
    }
    if w.r == w.l {
        return bad("r and l must differ");
    }
    if w.a_minus == w.b_minus {
        return bad("a_-i and b_-i must differ");
    }
    for sub in [&w.a_minus, &w.b_minus] {
        if sub.0.len() + 1 != env.agent_count()
            || sub
                .iter_agents(w.agent)
                .any(|(j, a)| a >= env.action_count(j))
        {
            return bad("sub-profile does not fit the environment");
        }
    }
    if w.ordering.agent() != w.agent
        || w.ordering.action_count() != n
        || w.ordering.outcome_count() != env.outcome_count()
    {
        return bad("ordering is not over the agent's action-outcome pairs");
    }
    Ok(())
}
