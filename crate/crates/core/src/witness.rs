//! Brexit-anomaly witnesses shared by the deterministic and probabilistic
//! analyses.

use crate::domains::DomainSpec;
use crate::model::{Preference, SubProfile};

/// `(i, r_i, ℓ_i, a_{-i}, b_{-i}, ≿_i)`: the two actions tie at `a_{-i}` yet
/// `ℓ_i` is preferred there, while `r_i` is a best reply at `b_{-i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BaWitness {
    pub agent: usize,
    pub r: usize,
    pub l: usize,
    pub a_minus: SubProfile,
    pub b_minus: SubProfile,
    pub ordering: Preference,
}

impl BaWitness {
    /// Whether the witness ordering is admissible under `domain`.
    pub fn ordering_in(&self, domain: &DomainSpec) -> bool {
        match domain {
            DomainSpec::Unrestricted => true,
            DomainSpec::StrictOnly => self.ordering.is_strict(),
            DomainSpec::WeakOnly => !self.ordering.is_strict(),
            DomainSpec::Explicit(list) => list.contains(&self.ordering),
        }
    }
}

/// Why a claimed witness does not certify the anomaly.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WitnessViolation {
    #[error("witness is malformed: {0}")]
    Malformed(String),
    #[error("actions do not tie at a_-i (condition i)")]
    NoTie,
    #[error("l is not preferred to r at a_-i (condition ii)")]
    NotPreferred,
    #[error("r is not a best reply at b_-i against action {0} (condition iii)")]
    NotBestReply(usize),
}
