use crate::error::{Error, Result};
use crate::model::Preference;

/// Which side of the dichotomy holds for a strict ordering and actions
/// `r ≠ ℓ`, against every pair of totally mixed `g, h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dichotomy {
    /// Neither `[ℓ,g]` nor `[ℓ,h]` dominates `[r,h]` / `[r,g]`.
    S1,
    /// Neither `[r,g]` nor `[r,h]` dominates `[ℓ,h]` / `[ℓ,g]`.
    S2,
}

/// The best outcome `z*(x)` for action `x` under a strict ordering.
pub fn top_outcome(ord: &Preference, action: usize) -> usize {
    (0..ord.outcome_count())
        .min_by_key(|&z| ord.rank_of(action, z))
        .expect("at least one outcome")
}

/// `S1` when `(r, z*(r)) ≻ (ℓ, z*(ℓ))`, else `S2`.
///
/// Under `S1`, any lottery on `ℓ` puts zero mass at or above `(r, z*(r))`
/// while a totally mixed lottery on `r` puts positive mass there, so `ℓ`
/// can never dominate `r`. `S2` is the mirror image.
pub fn lemma1_verdict(ord: &Preference, r: usize, l: usize) -> Result<Dichotomy> {
    if !ord.is_strict() {
        return Err(Error::NotStrict);
    }
    if r == l {
        return Err(Error::ActionsEqual);
    }
    if r >= ord.action_count() || l >= ord.action_count() {
        return Err(Error::AgentMismatch("action out of range".to_string()));
    }
    let best_r = (r, top_outcome(ord, r));
    let best_l = (l, top_outcome(ord, l));
    Ok(if ord.strictly_prefers(best_r, best_l) {
        Dichotomy::S1
    } else {
        Dichotomy::S2
    })
}
