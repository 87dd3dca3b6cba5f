//! Test-side oracles. These only use the public data accessors (table
//! lookups and pairwise comparisons) and re-derive every condition from
//! scratch, so they share no logic with the library's search.

#![allow(dead_code)]

use expressive_choice::deterministic::DetMechanism;
use expressive_choice::model::{Comparison, Preference, Profile, SubProfile};
use expressive_choice::rational::Rational;
use expressive_choice::stochastic::{Distribution, ProbMechanism};

/// All opponent sub-profiles of `agent`, built with a local odometer.
pub fn subs(radices: &[usize], agent: usize) -> Vec<Vec<usize>> {
    let others: Vec<usize> = radices
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != agent)
        .map(|(_, &r)| r)
        .collect();
    let mut out = vec![vec![]];
    for r in others {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..r).map(move |a| {
                    let mut q = p.clone();
                    q.push(a);
                    q
                })
            })
            .collect();
    }
    out
}

pub fn insert(sub: &[usize], agent: usize, action: usize) -> Profile {
    let mut p = sub.to_vec();
    p.insert(agent, action);
    Profile(p)
}

fn radices_of(env: &expressive_choice::model::Environment) -> Vec<usize> {
    (0..env.agent_count())
        .map(|i| env.action_count(i))
        .collect()
}

fn cmp(ord: &Preference, p: (usize, usize), q: (usize, usize)) -> Comparison {
    ord.compare(p, q).expect("pairs in range")
}

/// Deterministic anomaly by brute force over the given orderings.
pub fn naive_ba(f: &DetMechanism, domains: &[Vec<Preference>]) -> bool {
    let env = f.env();
    let radices = radices_of(env);
    for i in 0..env.agent_count() {
        let subs = subs(&radices, i);
        let out = |x: usize, s: &[usize]| f.outcome(&insert(s, i, x));
        for r in 0..radices[i] {
            for l in 0..radices[i] {
                if r == l {
                    continue;
                }
                for a in &subs {
                    if out(r, a) != out(l, a) {
                        continue;
                    }
                    for ord in &domains[i] {
                        if cmp(ord, (l, out(l, a)), (r, out(r, a))) != Comparison::Prefer {
                            continue;
                        }
                        for b in subs.iter().filter(|b| *b != a) {
                            let best = (0..radices[i]).all(|x| {
                                cmp(ord, (r, out(r, b)), (x, out(x, b))) != Comparison::Dispreferred
                            });
                            if best {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// `φ` computed directly: mass of outcomes `z` with `(x, z) ≿ target`.
pub fn oracle_phi(
    ord: &Preference,
    x: usize,
    d: &Distribution,
    target: (usize, usize),
) -> Rational {
    (0..d.len())
        .filter(|&z| cmp(ord, (x, z), target) != Comparison::Dispreferred)
        .map(|z| d.prob(z))
        .sum()
}

pub fn oracle_fsd(
    ord: &Preference,
    lhs: (usize, &Distribution),
    rhs: (usize, &Distribution),
) -> bool {
    let mut strict = false;
    for x in 0..ord.action_count() {
        for z in 0..ord.outcome_count() {
            let (p, q) = (
                oracle_phi(ord, lhs.0, lhs.1, (x, z)),
                oracle_phi(ord, rhs.0, rhs.1, (x, z)),
            );
            if p < q {
                return false;
            }
            strict |= p > q;
        }
    }
    strict
}

/// Probabilistic anomaly by brute force: exact tie, FSD protest, and no
/// other action dominating `r` at `b`.
pub fn naive_prob_ba(f: &ProbMechanism, domains: &[Vec<Preference>]) -> bool {
    let env = f.env();
    let radices = radices_of(env);
    for i in 0..env.agent_count() {
        let subs = subs(&radices, i);
        let lot = |x: usize, s: &[usize]| f.at(&insert(s, i, x)).clone();
        for r in 0..radices[i] {
            for l in 0..radices[i] {
                if r == l {
                    continue;
                }
                for a in &subs {
                    let (ra, la) = (lot(r, a), lot(l, a));
                    if ra != la {
                        continue;
                    }
                    for ord in &domains[i] {
                        if !oracle_fsd(ord, (l, &la), (r, &ra)) {
                            continue;
                        }
                        for b in subs.iter().filter(|b| *b != a) {
                            let rb = lot(r, b);
                            let best = (0..radices[i])
                                .filter(|&x| x != r)
                                .all(|x| oracle_fsd(ord, (r, &rb), (x, &lot(x, b))));
                            if best {
                                return true;
                            }
                        }
                    }
                }
            }
        }
    }
    false
}

/// Re-checks the three deterministic conditions for a concrete witness.
pub fn det_witness_holds(
    f: &DetMechanism,
    agent: usize,
    r: usize,
    l: usize,
    a: &SubProfile,
    b: &SubProfile,
    ord: &Preference,
) -> bool {
    let out = |x: usize, s: &SubProfile| f.outcome(&insert(&s.0, agent, x));
    r != l
        && a != b
        && out(r, a) == out(l, a)
        && cmp(ord, (l, out(l, a)), (r, out(r, a))) == Comparison::Prefer
        && (0..f.env().action_count(agent))
            .all(|x| cmp(ord, (r, out(r, b)), (x, out(x, b))) != Comparison::Dispreferred)
}
