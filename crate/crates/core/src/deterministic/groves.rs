//! The two-patient Groves queueing mechanism on a finite report grid, and the
//! constructive anomaly witness for a partially honest patient 1.

use std::sync::Arc;

use crate::domains::{build_queueing_pref_1, DomainSpec};
use crate::error::{Error, Result};
use crate::model::{Environment, SubProfile};
use crate::queueing::{QueueingOutcome, QueueingParams};
use crate::rational::{format_rational, Rational};
use crate::witness::BaWitness;

use super::{validate_witness, DetMechanism};

/// Groves outcome for reports `(x_1, x_2)`: the higher report is served
/// first and pays the other report; ties favour patient 2.
pub fn groves_outcome(x1: Rational, x2: Rational) -> QueueingOutcome {
    let zero = Rational::from_integer(0);
    if x1 > x2 {
        QueueingOutcome {
            w: [0, 1],
            t: [x2, zero],
        }
    } else {
        QueueingOutcome {
            w: [1, 0],
            t: [zero, x1],
        }
    }
}

/// Both patients report from `params.grid`; only reachable outcomes are
/// materialised, in order of first appearance.
pub fn build_groves_queueing(params: &QueueingParams) -> Result<DetMechanism> {
    let grid = &params.grid;
    if grid.is_empty() {
        return Err(Error::invariant("grid", "must be nonempty"));
    }
    let mut outcomes: Vec<QueueingOutcome> = Vec::new();
    let mut table = Vec::with_capacity(grid.len() * grid.len());
    for &x1 in grid {
        for &x2 in grid {
            let o = groves_outcome(x1, x2);
            let idx = match outcomes.iter().position(|p| *p == o) {
                Some(k) => k,
                None => {
                    outcomes.push(o);
                    outcomes.len() - 1
                }
            };
            table.push(idx);
        }
    }
    let reports: Vec<String> = grid.iter().map(format_rational).collect();
    let env = Environment::uniform(
        vec![reports.clone(), reports],
        outcomes.iter().map(ToString::to_string).collect(),
        DomainSpec::Unrestricted,
    )?;
    DetMechanism::new(Arc::new(env), table)
}

/// The partially-honest witness: `ℓ_1 = θ_1`, `r_1 = b_2` the smallest grid
/// point above `θ_1`, `a_2` the largest grid point below it, with patient 1's
/// lexicographic ordering. The witness is re-validated against the Groves
/// table before it is returned.
pub fn verify_prop4_witness(params: &QueueingParams) -> Result<BaWitness> {
    let theta = params.theta[0];
    let (zero, one) = (Rational::from_integer(0), Rational::from_integer(1));
    if theta <= zero || theta >= one {
        return Err(Error::GridDoesNotSupportWitness(format!(
            "theta1 = {} is not strictly between 0 and 1",
            format_rational(&theta)
        )));
    }
    let grid = &params.grid;
    let l = grid.iter().position(|&g| g == theta).ok_or_else(|| {
        Error::GridDoesNotSupportWitness(format!(
            "theta1 = {} is not a grid point",
            format_rational(&theta)
        ))
    })?;
    let a2 = grid.iter().rposition(|&g| g < theta).ok_or_else(|| {
        Error::GridDoesNotSupportWitness("no grid point below theta1".to_string())
    })?;
    let b2 = grid.iter().position(|&g| g > theta).ok_or_else(|| {
        Error::GridDoesNotSupportWitness("no grid point above theta1".to_string())
    })?;

    let f = build_groves_queueing(params)?;
    let ordering = build_queueing_pref_1(params, f.env())?;
    let witness = BaWitness {
        agent: 0,
        r: b2,
        l,
        a_minus: SubProfile(vec![a2]),
        b_minus: SubProfile(vec![b2]),
        ordering,
    };
    validate_witness(&f, &witness, false)
        .map_err(|v| Error::invariant("witness", v.to_string()))?;
    Ok(witness)
}
