use num_traits::Zero;

use crate::error::{Error, Result};
use crate::model::{Pair, Preference};
use crate::rational::Rational;

use super::Distribution;

/// `[x_i, g]`: the agent plays `action` and outcomes are drawn from `dist`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lottery {
    pub action: usize,
    pub dist: Distribution,
}

impl Lottery {
    pub fn new(action: usize, dist: Distribution) -> Self {
        Lottery { action, dist }
    }
}

fn check(ord: &Preference, lot: &Lottery) -> Result<()> {
    if lot.action >= ord.action_count() {
        return Err(Error::AgentMismatch(format!(
            "action {} is not one of the ordering agent's {} actions",
            lot.action,
            ord.action_count()
        )));
    }
    if lot.dist.len() != ord.outcome_count() {
        return Err(Error::AgentMismatch(format!(
            "distribution over {} outcomes, ordering over {}",
            lot.dist.len(),
            ord.outcome_count()
        )));
    }
    Ok(())
}

/// Probability that the lottery yields a pair weakly preferred to `target`:
/// the sum of `g(z̃)` over outcomes with `(action, z̃) ≿ target`.
pub fn phi(ord: &Preference, lot: &Lottery, target: Pair) -> Result<Rational> {
    check(ord, lot)?;
    let bound = ord
        .rank(target)
        .map_err(|e| Error::AgentMismatch(e.to_string()))?;
    Ok(phi_unchecked(ord, lot.action, &lot.dist, bound as u32))
}

#[inline]
fn phi_unchecked(ord: &Preference, action: usize, dist: &Distribution, bound: u32) -> Rational {
    dist.probs()
        .iter()
        .enumerate()
        .filter(|&(z, _)| ord.rank_of(action, z) <= bound)
        .fold(Rational::zero(), |acc, (_, p)| acc + p)
}

/// First-order stochastic dominance of `lhs` over `rhs`: `φ^lhs ≥ φ^rhs` at
/// every pair, strictly at some pair.
pub fn fsd(ord: &Preference, lhs: &Lottery, rhs: &Lottery) -> Result<bool> {
    check(ord, lhs)?;
    check(ord, rhs)?;
    Ok(dominates(ord, lhs.action, &lhs.dist, rhs.action, &rhs.dist))
}

pub(crate) fn dominates(
    ord: &Preference,
    lhs_action: usize,
    lhs: &Distribution,
    rhs_action: usize,
    rhs: &Distribution,
) -> bool {
    // φ only depends on the target's class, so checking each class once suffices.
    let mut strict = false;
    for bound in 0..ord.class_count() as u32 {
        let l = phi_unchecked(ord, lhs_action, lhs, bound);
        let r = phi_unchecked(ord, rhs_action, rhs, bound);
        if l < r {
            return false;
        }
        strict |= l > r;
    }
    strict
}
