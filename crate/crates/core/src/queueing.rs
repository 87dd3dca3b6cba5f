//! Two-patient queueing data: report grids, waiting-time/transfer outcomes
//! and their text labels.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::Environment;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct QueueingParams {
    /// Unit waiting cost of each patient, in `[0, 1]`.
    pub theta: [Rational; 2],
    /// Common benefit of treatment, `> 0`.
    pub u_bar: Rational,
    /// Admissible reports, strictly ascending within `[0, 1]`.
    pub grid: Vec<Rational>,
}

impl QueueingParams {
    pub fn new(theta: [Rational; 2], u_bar: Rational, grid: Vec<Rational>) -> Result<Self> {
        let zero = Rational::from_integer(0);
        let one = Rational::from_integer(1);
        for (i, t) in theta.iter().enumerate() {
            if *t < zero || *t > one {
                return Err(Error::invariant(
                    format!("theta{}", i + 1),
                    "must lie in [0, 1]",
                ));
            }
        }
        if u_bar <= zero {
            return Err(Error::invariant("ubar", "must be positive"));
        }
        if grid.is_empty() {
            return Err(Error::invariant("grid", "must be nonempty"));
        }
        if grid.iter().any(|g| *g < zero || *g > one) {
            return Err(Error::invariant("grid", "points must lie in [0, 1]"));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invariant("grid", "must be strictly ascending"));
        }
        Ok(QueueingParams { theta, u_bar, grid })
    }

    /// Default benefit used when none is given.
    pub fn default_u_bar() -> Rational {
        Rational::from_integer(2)
    }
}

/// `((w_1, w_2), (t_1, t_2))` with exactly one patient waiting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QueueingOutcome {
    pub w: [u8; 2],
    pub t: [Rational; 2],
}

impl QueueingOutcome {
    /// Material payoff `ū − θ_i·w_i − t_i` of patient `i` (0-based).
    pub fn payoff(&self, patient: usize, theta: Rational, u_bar: Rational) -> Rational {
        u_bar - theta * Rational::from_integer(self.w[patient] as i64) - self.t[patient]
    }

    /// Total transfers to the clinic.
    pub fn revenue(&self) -> Rational {
        self.t[0] + self.t[1]
    }

    pub fn parse(label: &str) -> Result<Self> {
        let bad = || Error::NotQueueingEnvironment(format!("bad outcome label {label:?}"));
        let rest = label.strip_prefix("w=(").ok_or_else(bad)?;
        let (w, rest) = rest.split_once("),t=(").ok_or_else(bad)?;
        let t = rest.strip_suffix(')').ok_or_else(bad)?;
        let (w1, w2) = w.split_once(',').ok_or_else(bad)?;
        let (t1, t2) = t.split_once(',').ok_or_else(bad)?;
        let w1: u8 = w1.parse().map_err(|_| bad())?;
        let w2: u8 = w2.parse().map_err(|_| bad())?;
        if w1 + w2 != 1 || w1 > 1 || w2 > 1 {
            return Err(bad());
        }
        Ok(QueueingOutcome {
            w: [w1, w2],
            t: [
                parse_rational(t1).map_err(|_| bad())?,
                parse_rational(t2).map_err(|_| bad())?,
            ],
        })
    }
}

impl fmt::Display for QueueingOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "w=({},{}),t=({},{})",
            self.w[0],
            self.w[1],
            format_rational(&self.t[0]),
            format_rational(&self.t[1])
        )
    }
}

/// Numeric reading of a queueing environment's labels.
#[derive(Debug, Clone, PartialEq)]
pub struct QueueingView {
    pub reports: [Vec<Rational>; 2],
    pub outcomes: Vec<QueueingOutcome>,
}

impl QueueingView {
    pub fn of(env: &Environment) -> Result<Self> {
        if env.agent_count() != 2 {
            return Err(Error::NotQueueingEnvironment(format!(
                "expected 2 patients, found {}",
                env.agent_count()
            )));
        }
        let parse_reports = |i: usize| -> Result<Vec<Rational>> {
            env.actions(i)
                .iter()
                .map(|a| {
                    parse_rational(a).map_err(|_| {
                        Error::NotQueueingEnvironment(format!("action {a:?} is not a report"))
                    })
                })
                .collect()
        };
        let outcomes = env
            .outcomes()
            .iter()
            .map(|z| QueueingOutcome::parse(z))
            .collect::<Result<Vec<_>>>()?;
        Ok(QueueingView {
            reports: [parse_reports(0)?, parse_reports(1)?],
            outcomes,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn outcome_label_round_trip() {
        let o = QueueingOutcome {
            w: [0, 1],
            t: [q(1, 4), q(0, 1)],
        };
        assert_eq!(o.to_string(), "w=(0,1),t=(1/4,0)");
        assert_eq!(QueueingOutcome::parse(&o.to_string()).unwrap(), o);
        assert!(QueueingOutcome::parse("w=(1,1),t=(0,0)").is_err());
        assert!(QueueingOutcome::parse("remain").is_err());
    }

    #[test]
    fn payoff_and_revenue() {
        let o = QueueingOutcome {
            w: [1, 0],
            t: [q(0, 1), q(1, 2)],
        };
        assert_eq!(o.payoff(0, q(1, 4), q(2, 1)), q(7, 4));
        assert_eq!(o.payoff(1, q(1, 4), q(2, 1)), q(3, 2));
        assert_eq!(o.revenue(), q(1, 2));
    }

    #[test]
    fn params_validation() {
        let ok = QueueingParams::new([q(1, 2), q(1, 4)], q(2, 1), vec![q(0, 1), q(1, 2)]);
        assert!(ok.is_ok());
        assert!(QueueingParams::new([q(3, 2), q(0, 1)], q(1, 1), vec![q(0, 1)]).is_err());
        assert!(QueueingParams::new([q(0, 1), q(0, 1)], q(0, 1), vec![q(0, 1)]).is_err());
        assert!(QueueingParams::new([q(0, 1), q(0, 1)], q(1, 1), vec![q(1, 2), q(1, 4)]).is_err());
        assert!(QueueingParams::new([q(0, 1), q(0, 1)], q(1, 1), vec![q(5, 4)]).is_err());
    }
}
