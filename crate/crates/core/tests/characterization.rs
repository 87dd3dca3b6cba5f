mod common;

use std::sync::Arc;

use expressive_choice::deterministic::{
    check_tie_invariance, search_ba_witness_in, tie_invariance_violations, validate_witness,
    witness_from_violation, DetMechanism, TieInvariance,
};
use expressive_choice::domains::{resolve_domains, Caps, DomainKind, DomainSpec};
use expressive_choice::model::Environment;
use expressive_choice::search::SearchOptions;

fn env(actions: &[usize], outcomes: usize) -> Arc<Environment> {
    let labels = |p: &str, n: usize| (0..n).map(|k| format!("{p}{k}")).collect::<Vec<_>>();
    Arc::new(
        Environment::uniform(
            actions
                .iter()
                .enumerate()
                .map(|(i, &n)| labels(&format!("x{i}_"), n))
                .collect(),
            labels("z", outcomes),
            DomainSpec::Unrestricted,
        )
        .unwrap(),
    )
}

/// Every table of `env` under all three generated kinds: the
/// characterization, the search and the brute-force oracle agree, and every
/// violation yields a valid constructive witness in that kind.
fn check_universe(env: Arc<Environment>) -> usize {
    let mut tables = 0;
    for kind in DomainKind::ALL {
        let specs = vec![kind.spec(); env.agent_count()];
        let domains = resolve_domains(&env, &specs, Caps::default()).unwrap();
        for f in DetMechanism::all_tables(Arc::clone(&env)) {
            tables += 1;
            let nba = check_tie_invariance(&f) == TieInvariance::Holds;
            let found = search_ba_witness_in(&f, &domains, &SearchOptions::default()).witness;
            assert_eq!(nba, found.is_none(), "{kind:?} {:?}", f.table());
            assert_eq!(
                nba,
                !common::naive_ba(&f, &domains),
                "{kind:?} {:?}",
                f.table()
            );
            if let Some(w) = found {
                validate_witness(&f, &w, false).unwrap();
            }
            for v in tie_invariance_violations(&f) {
                let w = witness_from_violation(&f, &v, kind);
                assert!(w.ordering_in(&specs[v.agent]), "{kind:?} {v:?}");
                validate_witness(&f, &w, false).unwrap();
            }
        }
    }
    tables
}

#[test]
fn three_actions_two_outcomes() {
    assert_eq!(check_universe(env(&[3, 2], 2)), 3 * 64);
}

#[test]
fn two_actions_three_outcomes() {
    assert_eq!(check_universe(env(&[2, 2], 3)), 3 * 81);
}

#[test]
fn three_agents_two_actions() {
    assert_eq!(check_universe(env(&[2, 2, 2], 2)), 3 * 256);
}

#[test]
fn parallel_search_matches_sequential() {
    let env = env(&[3, 2], 2);
    let domains = resolve_domains(
        &env,
        &[DomainSpec::Unrestricted, DomainSpec::Unrestricted],
        Caps::default(),
    )
    .unwrap();
    let seq = SearchOptions::default();
    let par = SearchOptions { jobs: 4, ..seq };
    for f in DetMechanism::all_tables(Arc::clone(&env)) {
        assert_eq!(
            search_ba_witness_in(&f, &domains, &seq),
            search_ba_witness_in(&f, &domains, &par)
        );
    }
}
