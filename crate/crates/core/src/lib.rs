//! Collective choice with expressive preferences.
//!
//! Agents rank action-outcome pairs rather than outcomes alone, so an agent
//! can value casting a protest vote even when it does not change the result.
//! This crate decides whether deterministic and probabilistic mechanisms over
//! finite environments admit a *Brexit anomaly*: an agent who protests with
//! `ℓ` when `r` and `ℓ` lead to the same outcome, yet for whom `r` is a best
//! reply against some other opponent profile.
//!
//! Decisions are made two ways: by exhaustive witness search over
//! enumerated preference domains, and (for deterministic mechanisms) by the
//! tie-invariance characterization. All probabilities and queueing payoffs
//! are exact rationals.

pub mod analysis;
pub mod claims;
pub mod cli;
pub mod deterministic;
pub mod domains;
pub mod error;
pub mod io;
pub mod model;
pub mod queueing;
pub mod rational;
pub mod search;
pub mod stochastic;
pub mod witness;

pub use error::{Error, Result};
