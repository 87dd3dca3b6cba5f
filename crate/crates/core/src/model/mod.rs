//! Environments, preference orderings over action-outcome pairs, and action
//! profiles.

mod environment;
mod preference;
mod profile;

pub use environment::Environment;
pub use preference::{Comparison, Pair, Preference};
pub use profile::{Profile, Profiles, SubProfile};
