//! Exhaustive witness search over `(i, r, ℓ, a_{-i}, b_{-i}, ≿_i)`.
//!
//! The outer `(i, r, ℓ)` loop is split into tasks. Tasks may run on a worker
//! pool, but the reported witness is always the first one in canonical order
//! and statistics only cover tasks up to and including the winning one, so
//! results do not depend on the number of workers.

use rayon::prelude::*;

use crate::domains::Caps;
use crate::model::{Environment, Preference, SubProfile};
use crate::witness::BaWitness;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub caps: Caps,
    /// Require `r` to be the unique best reply at `b_{-i}`.
    pub strict_iii: bool,
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            caps: Caps::default(),
            strict_iii: false,
            jobs: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// `(i, r, ℓ, a_{-i})` tuples where the two actions tie.
    pub ties: u64,
    /// `(tie, b_{-i}, ≿_i)` combinations tested for the best-reply condition.
    pub best_reply_checks: u64,
}

impl SearchStats {
    fn add(&mut self, other: SearchStats) {
        self.ties += other.ties;
        self.best_reply_checks += other.best_reply_checks;
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub witness: Option<BaWitness>,
    pub stats: SearchStats,
}

/// The three conditions of the anomaly for one kind of mechanism.
pub(crate) trait Conditions: Sync {
    fn env(&self) -> &Environment;
    /// Condition (i): the actions give the same outcome at `a`.
    fn ties(&self, agent: usize, r: usize, l: usize, a: &SubProfile) -> bool;
    /// Condition (ii): `ℓ` is preferred to `r` at `a`.
    fn prefers_l(&self, ord: &Preference, agent: usize, r: usize, l: usize, a: &SubProfile)
        -> bool;
    /// Condition (iii): `r` is a best reply at `b`.
    fn best_reply(&self, ord: &Preference, agent: usize, r: usize, b: &SubProfile) -> bool;
}

struct Task {
    agent: usize,
    r: usize,
    l: usize,
}

pub(crate) fn run<C: Conditions>(
    cond: &C,
    domains: &[Vec<Preference>],
    jobs: usize,
) -> SearchResult {
    let env = cond.env();
    let subs: Vec<Vec<SubProfile>> = (0..env.agent_count())
        .map(|i| env.sub_profiles(i).expect("agent in range"))
        .collect();
    let tasks: Vec<Task> = (0..env.agent_count())
        .flat_map(|agent| {
            let n = env.action_count(agent);
            (0..n).flat_map(move |r| {
                (0..n)
                    .filter(move |&l| l != r)
                    .map(move |l| Task { agent, r, l })
            })
        })
        .collect();

    let solve = |t: &Task| solve_task(cond, t, &subs[t.agent], &domains[t.agent]);

    let mut stats = SearchStats::default();
    if jobs <= 1 {
        for t in &tasks {
            let (w, s) = solve(t);
            stats.add(s);
            if w.is_some() {
                return SearchResult { witness: w, stats };
            }
        }
        return SearchResult {
            witness: None,
            stats,
        };
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("worker pool");
    pool.install(|| {
        for chunk in tasks.chunks(jobs * 4) {
            let results: Vec<_> = chunk.par_iter().map(solve).collect();
            for (w, s) in results {
                stats.add(s);
                if w.is_some() {
                    return SearchResult { witness: w, stats };
                }
            }
        }
        SearchResult {
            witness: None,
            stats,
        }
    })
}

fn solve_task<C: Conditions>(
    cond: &C,
    t: &Task,
    subs: &[SubProfile],
    domain: &[Preference],
) -> (Option<BaWitness>, SearchStats) {
    let mut stats = SearchStats::default();
    for a in subs {
        if !cond.ties(t.agent, t.r, t.l, a) {
            continue;
        }
        stats.ties += 1;
        let protesting: Vec<&Preference> = domain
            .iter()
            .filter(|o| cond.prefers_l(o, t.agent, t.r, t.l, a))
            .collect();
        if protesting.is_empty() {
            continue;
        }
        for b in subs.iter().filter(|b| *b != a) {
            for ord in &protesting {
                stats.best_reply_checks += 1;
                if cond.best_reply(ord, t.agent, t.r, b) {
                    let w = BaWitness {
                        agent: t.agent,
                        r: t.r,
                        l: t.l,
                        a_minus: a.clone(),
                        b_minus: b.clone(),
                        ordering: (*ord).clone(),
                    };
                    return (Some(w), stats);
                }
            }
        }
    }
    (None, stats)
}
