//! Probabilistic mechanisms: exact distributions over outcomes, lotteries
//! compared by first-order stochastic dominance over action-outcome pairs,
//! and the probabilistic witness search.

mod builders;
mod distribution;
mod fsd;
mod lemma;
mod witness;

pub use builders::{
    build_example1, build_relative_frequency, example1_ordering, random_completely_mixed,
    random_totally_mixed,
};
pub use distribution::{Distribution, ProbMechanism};
pub use fsd::{fsd, phi, Lottery};
pub use lemma::{lemma1_verdict, top_outcome, Dichotomy};
pub use witness::{
    find_prob_ba_witness, search_prob_ba_witness, search_prob_ba_witness_in, validate_prob_witness,
};
