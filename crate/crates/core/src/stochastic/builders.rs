use std::sync::Arc;

use rand::Rng;

use crate::domains::DomainSpec;
use crate::error::{Error, Result};
use crate::model::{Environment, Preference};
use crate::rational::Rational;

use super::{Distribution, ProbMechanism};

/// Voting without abstention (`A_i = Z`, labels `1..=m`): candidate `z` is
/// chosen with probability (votes for `z`) / `n`.
pub fn build_relative_frequency(n: usize, m: usize) -> Result<ProbMechanism> {
    if n < 2 || m < 2 {
        return Err(Error::invariant("relfreq", "needs n >= 2 and m >= 2"));
    }
    let candidates: Vec<String> = (1..=m).map(|c| c.to_string()).collect();
    let env = Arc::new(Environment::uniform(
        vec![candidates.clone(); n],
        candidates,
        DomainSpec::Unrestricted,
    )?);
    let table = env
        .profiles()
        .map(|p| {
            let probs = (0..m)
                .map(|z| Rational::new(p.0.iter().filter(|&&a| a == z).count() as i64, n as i64))
                .collect();
            Distribution::new(probs)
        })
        .collect::<Result<Vec<_>>>()?;
    ProbMechanism::new(env, table)
}

/// Agent 1's ordering in the two-by-two example:
/// `(a0,z1) ∼ (a1,z0) ≻ (a0,z0) ∼ (a1,z1)`.
pub fn example1_ordering() -> Preference {
    Preference::from_classes(0, 2, 2, &[vec![(0, 1), (1, 0)], vec![(0, 0), (1, 1)]])
        .expect("valid partition")
}

/// The completely mixed two-by-two mechanism over `Z = {z0, z1}`:
///
/// | profile    | z0  | z1  |
/// |------------|-----|-----|
/// | (a0, b0)   | 1/3 | 2/3 |
/// | (a0, b1)   | 1/2 | 1/2 |
/// | (a1, b0)   | 1/3 | 2/3 |
/// | (a1, b1)   | 3/4 | 1/4 |
///
/// Agent 1's domain is the single expressive ordering from
/// [`example1_ordering`]; agent 2's is unrestricted.
pub fn build_example1() -> Result<ProbMechanism> {
    let env = Arc::new(Environment::new(
        vec![
            vec!["a0".into(), "a1".into()],
            vec!["b0".into(), "b1".into()],
        ],
        vec!["z0".into(), "z1".into()],
        vec![
            DomainSpec::Explicit(vec![example1_ordering()]),
            DomainSpec::Unrestricted,
        ],
    )?);
    let row =
        |p: i64, q: i64| Distribution::new(vec![Rational::new(p, q), Rational::new(q - p, q)]);
    let table = vec![row(1, 3)?, row(1, 2)?, row(1, 3)?, row(3, 4)?];
    ProbMechanism::new(env, table)
}

/// A totally mixed distribution with weights `k/D`, `k ∈ {1..D-1}`,
/// renormalised to sum to one.
pub fn random_totally_mixed<R: Rng + ?Sized>(
    rng: &mut R,
    outcomes: usize,
    denominator: i64,
) -> Distribution {
    let weights: Vec<i64> = (0..outcomes)
        .map(|_| rng.gen_range(1..denominator))
        .collect();
    let total: i64 = weights.iter().sum();
    Distribution::new(weights.iter().map(|&w| Rational::new(w, total)).collect())
        .expect("normalised weights")
}

/// A completely mixed mechanism over `env` with every row drawn by
/// [`random_totally_mixed`].
pub fn random_completely_mixed<R: Rng + ?Sized>(
    rng: &mut R,
    env: Arc<Environment>,
    denominator: i64,
) -> ProbMechanism {
    let table = (0..env.profile_count())
        .map(|_| random_totally_mixed(rng, env.outcome_count(), denominator))
        .collect();
    ProbMechanism::new(env, table).expect("one row per profile")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Profile;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn relative_frequency_rows() {
        let f = build_relative_frequency(2, 2).unwrap();
        assert_eq!(f.at(&Profile(vec![0, 1])).probs(), &[q(1, 2), q(1, 2)]);
        assert_eq!(f.at(&Profile(vec![0, 0])).probs(), &[q(1, 1), q(0, 1)]);
        let g = build_relative_frequency(3, 2).unwrap();
        assert_eq!(g.at(&Profile(vec![0, 0, 1])).probs(), &[q(2, 3), q(1, 3)]);
        assert!(!f.is_completely_mixed());
    }

    #[test]
    fn example1_table() {
        let f = build_example1().unwrap();
        assert_eq!(f.at(&Profile(vec![0, 0])), f.at(&Profile(vec![1, 0])));
        assert_eq!(f.at(&Profile(vec![1, 1])).prob(0), q(3, 4));
        assert!(f.is_completely_mixed());
    }

    #[test]
    fn random_rows_are_totally_mixed() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let d = random_totally_mixed(&mut rng, 3, 12);
            assert!(d.is_totally_mixed());
        }
    }
}
