//! One-shot analysis of a mechanism over a domain profile, producing a
//! report that serialises deterministically.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde_json::{json, Value};

use crate::deterministic::{
    check_tie_invariance, search_ba_witness_in, validate_witness, witness_from_violation,
    DetMechanism, TieInvariance,
};
use crate::domains::{resolve_domains, DomainKind, DomainSpec};
use crate::error::{Error, Result};
use crate::io::{witness_to_doc, WitnessDoc};
use crate::model::Environment;
use crate::search::{SearchOptions, SearchStats};
use crate::stochastic::{search_prob_ba_witness_in, validate_prob_witness, ProbMechanism};
use crate::witness::BaWitness;

#[derive(Debug, Clone, PartialEq)]
pub enum Subject {
    Deterministic(DetMechanism),
    Probabilistic(ProbMechanism),
}

impl Subject {
    pub fn env(&self) -> &Environment {
        match self {
            Subject::Deterministic(f) => f.env(),
            Subject::Probabilistic(f) => f.env(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Subject::Deterministic(_) => "deterministic",
            Subject::Probabilistic(_) => "probabilistic",
        }
    }

    fn validate(&self, w: &BaWitness, strict_iii: bool) -> bool {
        match self {
            Subject::Deterministic(f) => validate_witness(f, w, strict_iii).is_ok(),
            Subject::Probabilistic(f) => validate_prob_witness(f, w).is_ok(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Search,
    Characterization,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Search => "search",
            Method::Characterization => "characterization",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub mechanism: String,
    pub kind: &'static str,
    pub agents: usize,
    pub profiles: usize,
    pub domains: Vec<String>,
    /// Enumerated domain sizes; absent when the characterization was used.
    pub domain_sizes: Option<Vec<usize>>,
    pub witness: Option<WitnessDoc>,
    pub witness_valid: Option<bool>,
    pub method: Method,
    /// Search counters; absent when the characterization was used.
    pub stats: Option<SearchStats>,
    pub strict_iii: bool,
    pub duration: Duration,
}

impl AnalysisReport {
    pub fn verdict(&self) -> &'static str {
        if self.witness.is_some() {
            "BA"
        } else {
            "NBA"
        }
    }

    /// JSON form. Object keys come out sorted; the duration is only included
    /// on request since it varies between runs.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "mechanism": {
                "name": self.mechanism,
                "kind": self.kind,
                "agents": self.agents,
                "profiles": self.profiles,
            },
            "domains": self.domains,
            "verdict": self.verdict(),
            "witness": self.witness,
            "witness_valid": self.witness_valid,
            "method": self.method.name(),
            "strict_iii": self.strict_iii,
            "stats": {
                "ties": self.stats.map(|s| s.ties),
                "best_reply_checks": self.stats.map(|s| s.best_reply_checks),
                "domain_sizes": self.domain_sizes,
            },
        });
        if timing {
            v["duration_ms"] = json!(self.duration.as_millis() as u64);
        }
        v
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "mechanism: {} ({}, {} agents, {} profiles)",
            self.mechanism, self.kind, self.agents, self.profiles
        );
        let _ = writeln!(s, "domains:   {}", self.domains.join(", "));
        let _ = writeln!(s, "verdict:   {}", self.verdict());
        let _ = writeln!(s, "method:    {}", self.method.name());
        if let Some(w) = &self.witness {
            let _ = writeln!(s, "witness:");
            let _ = writeln!(s, "  agent:   {}", w.agent);
            let _ = writeln!(s, "  r:       {}", w.r);
            let _ = writeln!(s, "  l:       {}", w.l);
            let _ = writeln!(s, "  a_-i:    ({})", w.a_minus.join(", "));
            let _ = writeln!(s, "  b_-i:    ({})", w.b_minus.join(", "));
            let classes: Vec<String> = w
                .ordering
                .iter()
                .map(|c| {
                    let pairs: Vec<String> = c.iter().map(|[a, z]| format!("({a}, {z})")).collect();
                    format!("{{{}}}", pairs.join(" ~ "))
                })
                .collect();
            let _ = writeln!(s, "  ordering: {}", classes.join(" > "));
            if let Some(ok) = self.witness_valid {
                let _ = writeln!(s, "  validated: {}", if ok { "yes" } else { "NO" });
            }
        }
        if let Some(stats) = self.stats {
            let _ = writeln!(
                s,
                "stats:     ties={} best_reply_checks={}",
                stats.ties, stats.best_reply_checks
            );
        }
        if let Some(sizes) = &self.domain_sizes {
            let sizes: Vec<String> = sizes.iter().map(|n| n.to_string()).collect();
            let _ = writeln!(s, "domain sizes: {}", sizes.join(", "));
        }
        let _ = writeln!(s, "time:      {} ms", self.duration.as_millis());
        s
    }
}

/// Decides whether `subject` has an anomaly over `domains`.
///
/// Generated domains that exceed the caps fall back to the tie-invariance
/// characterization for deterministic mechanisms (not under `strict_iii`,
/// where it is not known to apply). Otherwise `CapExceeded` is returned.
pub fn analyze(
    subject: &Subject,
    name: &str,
    domains: &[DomainSpec],
    opts: &SearchOptions,
) -> Result<AnalysisReport> {
    let start = Instant::now();
    let env = subject.env();
    let mut report = AnalysisReport {
        mechanism: name.to_string(),
        kind: subject.kind(),
        agents: env.agent_count(),
        profiles: env.profile_count(),
        domains: domains.iter().map(|d| d.name().to_string()).collect(),
        domain_sizes: None,
        witness: None,
        witness_valid: None,
        method: Method::Search,
        stats: None,
        strict_iii: opts.strict_iii,
        duration: Duration::ZERO,
    };

    let witness = match resolve_domains(env, domains, opts.caps) {
        Ok(resolved) => {
            report.domain_sizes = Some(resolved.iter().map(Vec::len).collect());
            let result = match subject {
                Subject::Deterministic(f) => search_ba_witness_in(f, &resolved, opts),
                Subject::Probabilistic(f) => search_prob_ba_witness_in(f, &resolved, opts),
            };
            report.stats = Some(result.stats);
            result.witness
        }
        Err(err @ Error::CapExceeded { .. }) => {
            let (Subject::Deterministic(f), false) = (subject, opts.strict_iii) else {
                return Err(err);
            };
            let kinds: Option<Vec<DomainKind>> = domains.iter().map(DomainSpec::kind).collect();
            let Some(kinds) = kinds else {
                return Err(err);
            };
            report.method = Method::Characterization;
            match check_tie_invariance(f) {
                TieInvariance::Holds => None,
                TieInvariance::Fails(v) => {
                    let w = witness_from_violation(f, &v, kinds[v.agent]);
                    if !w.ordering_in(&domains[v.agent]) {
                        return Err(Error::invariant(
                            "characterization",
                            "constructed ordering lies outside the domain",
                        ));
                    }
                    Some(w)
                }
            }
        }
        Err(err) => return Err(err),
    };

    if let Some(w) = witness {
        report.witness_valid = Some(subject.validate(&w, opts.strict_iii));
        report.witness = Some(witness_to_doc(env, &w));
    }
    report.duration = start.elapsed();
    Ok(report)
}
