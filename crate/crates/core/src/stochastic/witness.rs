use crate::deterministic::check_shape;
use crate::domains::{resolve_domains, DomainSpec};
use crate::error::Result;
use crate::model::{Environment, Preference, SubProfile};
use crate::search::{self, Conditions, SearchOptions, SearchResult};
use crate::witness::{BaWitness, WitnessViolation};

use super::fsd::{dominates, fsd, Lottery};
use super::ProbMechanism;

struct Probabilistic<'a> {
    f: &'a ProbMechanism,
}

impl Conditions for Probabilistic<'_> {
    fn env(&self) -> &Environment {
        self.f.env()
    }

    fn ties(&self, i: usize, r: usize, l: usize, a: &SubProfile) -> bool {
        self.f.at_joined(i, r, a) == self.f.at_joined(i, l, a)
    }

    fn prefers_l(&self, ord: &Preference, i: usize, r: usize, l: usize, a: &SubProfile) -> bool {
        dominates(
            ord,
            l,
            self.f.at_joined(i, l, a),
            r,
            self.f.at_joined(i, r, a),
        )
    }

    fn best_reply(&self, ord: &Preference, i: usize, r: usize, b: &SubProfile) -> bool {
        let top = self.f.at_joined(i, r, b);
        (0..self.f.env().action_count(i))
            .filter(|&x| x != r)
            .all(|x| dominates(ord, r, top, x, self.f.at_joined(i, x, b)))
    }
}

/// First probabilistic witness in canonical order: the two actions give the
/// identical distribution at `a_{-i}`, `[ℓ, ·]` dominates `[r, ·]` there,
/// and `[r, f(r, b_{-i})]` dominates every other action's lottery at
/// `b_{-i}`.
pub fn find_prob_ba_witness(
    f: &ProbMechanism,
    domains: &[DomainSpec],
) -> Result<Option<BaWitness>> {
    Ok(search_prob_ba_witness(f, domains, &SearchOptions::default())?.witness)
}

pub fn search_prob_ba_witness(
    f: &ProbMechanism,
    domains: &[DomainSpec],
    opts: &SearchOptions,
) -> Result<SearchResult> {
    let resolved = resolve_domains(f.env(), domains, opts.caps)?;
    Ok(search_prob_ba_witness_in(f, &resolved, opts))
}

pub fn search_prob_ba_witness_in(
    f: &ProbMechanism,
    domains: &[Vec<Preference>],
    opts: &SearchOptions,
) -> SearchResult {
    search::run(&Probabilistic { f }, domains, opts.jobs)
}

/// Re-checks a probabilistic witness through the public `fsd` comparator.
pub fn validate_prob_witness(
    f: &ProbMechanism,
    w: &BaWitness,
) -> std::result::Result<(), WitnessViolation> {
    check_shape(f.env(), w)?;
    let lot = |x: usize, sub: &SubProfile| Lottery::new(x, f.at(&sub.join(w.agent, x)).clone());
    let dom = |lhs: &Lottery, rhs: &Lottery| {
        fsd(&w.ordering, lhs, rhs).map_err(|e| WitnessViolation::Malformed(e.to_string()))
    };

    let (ra, la) = (lot(w.r, &w.a_minus), lot(w.l, &w.a_minus));
    if ra.dist != la.dist {
        return Err(WitnessViolation::NoTie);
    }
    if !dom(&la, &ra)? {
        return Err(WitnessViolation::NotPreferred);
    }
    let rb = lot(w.r, &w.b_minus);
    for x in (0..f.env().action_count(w.agent)).filter(|&x| x != w.r) {
        if !dom(&rb, &lot(x, &w.b_minus))? {
            return Err(WitnessViolation::NotBestReply(x));
        }
    }
    Ok(())
}
