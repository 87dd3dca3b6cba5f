use std::cmp::Reverse;

use num_traits::Signed;

use crate::error::Result;
use crate::model::{Environment, Preference};
use crate::queueing::{QueueingParams, QueueingView};

/// Patient 1's lexicographic ordering: material payoff (higher first), then
/// clinic revenue (higher first), then distance of the report from `θ_1`
/// (smaller first). Pairs tied on all three share a class.
pub fn build_queueing_pref_1(params: &QueueingParams, env: &Environment) -> Result<Preference> {
    let view = QueueingView::of(env)?;
    let theta = params.theta[0];
    let reports = &view.reports[0];
    Ok(Preference::from_keys(
        0,
        reports.len(),
        view.outcomes.len(),
        |(x, z)| {
            let o = &view.outcomes[z];
            (
                Reverse(o.payoff(0, theta, params.u_bar)),
                Reverse(o.revenue()),
                (theta - reports[x]).abs(),
            )
        },
    ))
}

/// Patient 2's classical ordering: material payoff only.
pub fn build_queueing_pref_2(params: &QueueingParams, env: &Environment) -> Result<Preference> {
    let view = QueueingView::of(env)?;
    let theta = params.theta[1];
    Ok(Preference::from_keys(
        1,
        view.reports[1].len(),
        view.outcomes.len(),
        |(_, z)| Reverse(view.outcomes[z].payoff(1, theta, params.u_bar)),
    ))
}
