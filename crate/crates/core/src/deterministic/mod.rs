//! Deterministic mechanisms: outcome tables, the tie-invariance
//! characterization, exhaustive witness search, voting axioms and builders,
//! and the Groves queueing mechanism.

mod groves;
mod mechanism;
mod tie_invariance;
mod voting;
mod witness;

pub use groves::{build_groves_queueing, groves_outcome, verify_prop4_witness};
pub use mechanism::DetMechanism;
pub use tie_invariance::{
    check_tie_invariance, nba_by_characterization, tie_invariance_violations,
    witness_from_violation, TieInvariance, TieViolation,
};
pub use voting::{
    build_majority_referendum, build_plurality, satisfies_monotonicity, satisfies_unanimity,
    VotingLayout,
};
pub(crate) use witness::check_shape;
pub use witness::{find_ba_witness, search_ba_witness, search_ba_witness_in, validate_witness};
