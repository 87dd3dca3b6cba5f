//! End-to-end checks of the main results on small universes, used by
//! `verify-paper`. Each check returns a pass/fail line with counts.

use std::sync::Arc;

use itertools::Itertools;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::deterministic::{
    build_groves_queueing, build_plurality, check_tie_invariance, satisfies_monotonicity,
    satisfies_unanimity, search_ba_witness_in, tie_invariance_violations, validate_witness,
    verify_prop4_witness, DetMechanism, TieInvariance,
};
use crate::domains::{
    build_queueing_pref_1, build_queueing_pref_2, classical_orderings, enumerate_strict_orderings,
    is_separable, resolve_domains, Caps, DomainKind, DomainSpec,
};
use crate::error::Result;
use crate::model::{Environment, Preference};
use crate::queueing::QueueingParams;
use crate::rational::{parse_rational_list, Rational};
use crate::search::SearchOptions;
use crate::stochastic::{
    build_example1, find_prob_ba_witness, fsd, lemma1_verdict, phi, random_completely_mixed,
    random_totally_mixed, search_prob_ba_witness_in, validate_prob_witness, Dichotomy, Lottery,
    ProbMechanism,
};

pub const DEFAULT_SEED: u64 = 42;
/// Denominator for sampled probabilities.
pub const SAMPLE_DENOMINATOR: i64 = 12;
pub const RANDOM_MECHANISMS: usize = 200;
pub const DICHOTOMY_SAMPLES: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Claim {
    fn new(name: &'static str, passed: bool, detail: String) -> Self {
        Claim {
            name,
            passed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("[{mark}] {}: {}", self.name, self.detail)
    }
}

/// Two agents with two actions each and two outcomes.
pub fn small_universe() -> Arc<Environment> {
    let labels = |p: &str| vec![format!("{p}0"), format!("{p}1")];
    Arc::new(
        Environment::uniform(
            vec![labels("a"), labels("b")],
            labels("z"),
            DomainSpec::Unrestricted,
        )
        .expect("valid environment"),
    )
}

/// The quarter grid `{0, 1/4, 1/2, 3/4}` with `θ = (1/2, 1/2)`.
pub fn quarter_grid_params() -> QueueingParams {
    let half = Rational::new(1, 2);
    QueueingParams::new(
        [half, half],
        QueueingParams::default_u_bar(),
        parse_rational_list("0,1/4,1/2,3/4").expect("literal grid"),
    )
    .expect("valid parameters")
}

fn has_witness(f: &DetMechanism, domains: &[Vec<Preference>]) -> bool {
    match search_ba_witness_in(f, domains, &SearchOptions::default()).witness {
        Some(w) => validate_witness(f, &w, false).is_ok(),
        None => false,
    }
}

fn uniform_domains(env: &Environment, kind: DomainKind) -> Result<Vec<Vec<Preference>>> {
    resolve_domains(env, &vec![kind.spec(); env.agent_count()], Caps::default())
}

pub fn characterization_agreement() -> Result<Claim> {
    let env = small_universe();
    let (mut agree, mut total) = (0, 0);
    for kind in DomainKind::ALL {
        let domains = uniform_domains(&env, kind)?;
        for f in DetMechanism::all_tables(Arc::clone(&env)) {
            let holds = check_tie_invariance(&f) == TieInvariance::Holds;
            total += 1;
            if holds != has_witness(&f, &domains) {
                agree += 1;
            }
        }
    }
    Ok(Claim::new(
        "tie-invariance-characterization",
        agree == total,
        format!("{agree}/{total} verdicts agree with exhaustive search"),
    ))
}

pub fn voting_axioms_force_anomaly() -> Result<Claim> {
    let env = build_plurality(2, 2, None)?.env_arc().clone();
    let domains = DomainKind::ALL
        .iter()
        .map(|&k| uniform_domains(&env, k))
        .collect::<Result<Vec<_>>>()?;
    let (mut qualifying, mut exceptions) = (0, 0);
    for f in DetMechanism::all_tables(Arc::clone(&env)) {
        if !(satisfies_unanimity(&f)? && satisfies_monotonicity(&f)?) {
            continue;
        }
        qualifying += 1;
        exceptions += domains.iter().filter(|d| !has_witness(&f, d)).count();
    }
    Ok(Claim::new(
        "unanimous-monotone-voting-has-anomaly",
        qualifying > 0 && exceptions == 0,
        format!(
            "{qualifying} unanimous monotone tables (n=2, m=2), {exceptions} exceptions over 3 domain kinds"
        ),
    ))
}

pub fn groves_breaks_tie_invariance() -> Result<Claim> {
    let f = build_groves_queueing(&quarter_grid_params())?;
    let fails = matches!(check_tie_invariance(&f), TieInvariance::Fails(_));
    let shaped = tie_invariance_violations(&f)
        .iter()
        .filter(|v| {
            let (a, b) = (v.a_minus.0[0], v.b_minus.0[0]);
            v.agent == 0 && a < v.r && v.r < v.l && v.l < b
        })
        .count();
    Ok(Claim::new(
        "groves-violates-tie-invariance",
        fails && shaped > 0,
        format!("{shaped} violations with a_2 < r_1 < l_1 < b_2 on grid 0,1/4,1/2,3/4"),
    ))
}

pub fn queueing_preferences_separable() -> Result<Claim> {
    let points = parse_rational_list("0,1/4,1/2,3/4,1")?;
    let (mut checked, mut failures) = (0, 0);
    for size in 3..=points.len() {
        for grid in points.iter().copied().combinations(size) {
            for (&t1, &t2) in points.iter().cartesian_product(&points) {
                let params =
                    QueueingParams::new([t1, t2], QueueingParams::default_u_bar(), grid.clone())?;
                let f = build_groves_queueing(&params)?;
                for pref in [
                    build_queueing_pref_1(&params, f.env())?,
                    build_queueing_pref_2(&params, f.env())?,
                ] {
                    checked += 1;
                    if !is_separable(&pref) {
                        failures += 1;
                    }
                }
            }
        }
    }
    Ok(Claim::new(
        "queueing-preferences-separable",
        failures == 0,
        format!("{checked} preferences checked, {failures} not separable"),
    ))
}

pub fn groves_constructive_witness() -> Result<Claim> {
    let params = quarter_grid_params();
    let f = build_groves_queueing(&params)?;
    let (passed, detail) = match verify_prop4_witness(&params) {
        Ok(w) => match validate_witness(&f, &w, false) {
            Ok(()) => {
                let a = f.env().actions(0);
                (
                    true,
                    format!("witness r={} l={} re-validated", a[w.r], a[w.l]),
                )
            }
            Err(e) => (false, e.to_string()),
        },
        Err(e) => (false, e.to_string()),
    };
    Ok(Claim::new(
        "groves-partially-honest-witness",
        passed,
        detail,
    ))
}

/// The dichotomy for strict orderings: one of the two actions can never
/// dominate the other under totally mixed lotteries.
pub fn strict_dominance_dichotomy(seed: u64) -> Result<Claim> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orderings = enumerate_strict_orderings(0, 2, 2, 8)?;
    let (mut cases, mut violations) = (0, 0);
    for ord in &orderings {
        for (r, l) in [(0, 1), (1, 0)] {
            let verdict = lemma1_verdict(ord, r, l)?;
            for _ in 0..DICHOTOMY_SAMPLES {
                let g = random_totally_mixed(&mut rng, 2, SAMPLE_DENOMINATOR);
                let h = random_totally_mixed(&mut rng, 2, SAMPLE_DENOMINATOR);
                let (weak, strong) = match verdict {
                    Dichotomy::S1 => (l, r),
                    Dichotomy::S2 => (r, l),
                };
                let lot = |x, d: &crate::stochastic::Distribution| Lottery::new(x, d.clone());
                cases += 1;
                if fsd(ord, &lot(weak, &g), &lot(strong, &h))?
                    || fsd(ord, &lot(weak, &h), &lot(strong, &g))?
                {
                    violations += 1;
                }
            }
        }
    }
    Ok(Claim::new(
        "strict-dominance-dichotomy",
        violations == 0,
        format!(
            "{} strict orderings, {cases} sampled lottery pairs, {violations} dominance violations",
            orderings.len()
        ),
    ))
}

pub fn completely_mixed_no_anomaly(seed: u64) -> Result<Claim> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let env = small_universe();
    let domains = uniform_domains(&env, DomainKind::StrictOnly)?;
    let mut clean = 0;
    for _ in 0..RANDOM_MECHANISMS {
        let f = random_completely_mixed(&mut rng, Arc::clone(&env), SAMPLE_DENOMINATOR);
        if search_prob_ba_witness_in(&f, &domains, &SearchOptions::default())
            .witness
            .is_none()
        {
            clean += 1;
        }
    }
    Ok(Claim::new(
        "completely-mixed-strict-no-anomaly",
        clean == RANDOM_MECHANISMS,
        format!("{clean}/{RANDOM_MECHANISMS} sampled mechanisms without a witness"),
    ))
}

pub type PhiRow = (usize, usize, usize, (usize, usize), Rational, Rational);

/// The eight `φ` values of the worked two-by-two example, as
/// `(lhs action, rhs action, opponent, target, lhs φ, rhs φ)`.
pub fn example1_phi_table() -> Vec<PhiRow> {
    let q = Rational::new;
    let one = Rational::from_integer(1);
    vec![
        (0, 1, 0, (0, 1), q(2, 3), q(1, 3)),
        (0, 1, 0, (1, 0), q(2, 3), q(1, 3)),
        (0, 1, 0, (0, 0), one, one),
        (0, 1, 0, (1, 1), one, one),
        (1, 0, 1, (0, 1), q(3, 4), q(1, 2)),
        (1, 0, 1, (1, 0), q(3, 4), q(1, 2)),
        (1, 0, 1, (0, 0), one, one),
        (1, 0, 1, (1, 1), one, one),
    ]
}

/// Checks `f` against the worked example: the listed `φ` values under the
/// first ordering of agent 0's domain, and the witness `ℓ = a0, r = a1`,
/// `a_{-1} = b0`, `b_{-1} = b1`.
pub fn example_reproduction(f: &ProbMechanism) -> Result<Claim> {
    let name = "expressive-lottery-example";
    let env = f.env();
    let ordering = match env.domain(0) {
        DomainSpec::Explicit(list) if !list.is_empty() => list[0].clone(),
        _ => {
            return Ok(Claim::new(
                name,
                false,
                "agent 0 needs an explicit domain".into(),
            ))
        }
    };
    let mut matched = 0;
    let table = example1_phi_table();
    for &(x, y, b, target, want_x, want_y) in &table {
        let at = |a: usize| {
            let p = crate::model::Profile(vec![a, b]);
            Lottery::new(a, f.at(&p).clone())
        };
        if phi(&ordering, &at(x), target)? == want_x && phi(&ordering, &at(y), target)? == want_y {
            matched += 1;
        }
    }
    let witness = find_prob_ba_witness(f, env.domains())?;
    let witness_ok = witness.as_ref().is_some_and(|w| {
        w.agent == 0
            && w.l == 0
            && w.r == 1
            && w.a_minus.0 == [0]
            && w.b_minus.0 == [1]
            && validate_prob_witness(f, w).is_ok()
    });
    Ok(Claim::new(
        name,
        matched == table.len() && witness_ok,
        format!(
            "{matched}/{} phi values match, witness (l=a0, r=a1, a=b0, b=b1) {}",
            table.len(),
            if witness_ok { "found" } else { "missing" }
        ),
    ))
}

pub fn classical_no_anomaly() -> Result<Claim> {
    let env = small_universe();
    let domains = (0..env.agent_count())
        .map(|i| {
            classical_orderings(
                i,
                env.action_count(i),
                env.outcome_count(),
                Caps::default().weak,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut total, mut exceptions) = (0, 0);
    for f in DetMechanism::all_tables(Arc::clone(&env)) {
        total += 1;
        if search_ba_witness_in(&f, &domains, &SearchOptions::default())
            .witness
            .is_some()
        {
            exceptions += 1;
        }
    }
    Ok(Claim::new(
        "classical-preferences-no-anomaly",
        exceptions == 0,
        format!("{total} mechanisms, {exceptions} with a witness under classical domains"),
    ))
}

/// Runs every check in a fixed order.
pub fn verify_all(seed: u64) -> Result<Vec<Claim>> {
    Ok(vec![
        characterization_agreement()?,
        voting_axioms_force_anomaly()?,
        groves_breaks_tie_invariance()?,
        queueing_preferences_separable()?,
        groves_constructive_witness()?,
        strict_dominance_dichotomy(seed)?,
        completely_mixed_no_anomaly(seed)?,
        example_reproduction(&build_example1()?)?,
        classical_no_anomaly()?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochastic::Distribution;

    #[test]
    fn example_passes_and_mutation_fails() {
        let f = build_example1().unwrap();
        assert!(example_reproduction(&f).unwrap().passed);
        let mut table = f.table().to_vec();
        table[3] = Distribution::new(vec![Rational::new(1, 4), Rational::new(3, 4)]).unwrap();
        let g = ProbMechanism::new(f.env_arc().clone(), table).unwrap();
        let claim = example_reproduction(&g).unwrap();
        assert!(!claim.passed, "{}", claim.line());
    }
}
