//! The `expressive` command line: `validate`, `build`, `analyze` and
//! `verify-paper`.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{analyze, Subject};
use crate::claims::{verify_all, DEFAULT_SEED};
use crate::deterministic::{build_groves_queueing, build_majority_referendum, build_plurality};
use crate::domains::{
    build_queueing_pref_1, build_queueing_pref_2, classical_orderings, Caps, DomainSpec,
};
use crate::error::Error;
use crate::io::{det_to_doc, parse_document, parse_domain_list, prob_to_doc, Document, DomainDoc};
use crate::queueing::QueueingParams;
use crate::rational::{parse_rational, parse_rational_list};
use crate::search::SearchOptions;
use crate::stochastic::{build_example1, build_relative_frequency, example1_ordering};

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "expressive",
    version,
    about = "Protest-vote anomaly analysis for mechanisms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check an environment or mechanism JSON file.
    Validate { path: PathBuf },
    /// Print a built-in mechanism as JSON.
    Build {
        #[arg(value_enum)]
        name: BuilderName,
        #[command(flatten)]
        params: BuilderParams,
    },
    /// Decide whether a mechanism has an anomaly.
    Analyze(AnalyzeArgs),
    /// Re-check the main results on small universes.
    VerifyPaper {
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BuilderName {
    Referendum,
    Plurality,
    Groves,
    Relfreq,
    Example1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct AnalyzeArgs {
    /// Mechanism JSON file.
    #[arg(long, conflicts_with = "builder")]
    pub mech: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub builder: Option<BuilderName>,
    #[command(flatten)]
    pub params: BuilderParams,
    /// `unrestricted`, `strict`, `weak_only`, `explicit:<name>`, `file:<path>`
    /// or `env` (the domains stored with the mechanism).
    #[arg(long, default_value = "env")]
    pub domains: String,
    /// The mechanism is probabilistic.
    #[arg(long)]
    pub prob: bool,
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    /// Enumeration cap on |A_i × Z| for generated domains.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Accepted for symmetry with `verify-paper`; analysis is deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
    pub report: ReportFormat,
    /// Require `r` to be the unique best reply.
    #[arg(long)]
    pub strict_iii: bool,
    /// Include the wall-clock duration in JSON reports.
    #[arg(long)]
    pub timing: bool,
}

/// Parameters of the built-in mechanisms.
#[derive(Debug, Clone, Args)]
pub struct BuilderParams {
    /// Referendum: 2m+1 voters. Plurality and relfreq: number of candidates.
    #[arg(long)]
    pub m: Option<usize>,
    /// Number of voters for plurality and relfreq.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Plurality tie-break order as 1-based candidates, e.g. `2,1`.
    #[arg(long)]
    pub tiebreak: Option<String>,
    #[arg(long, default_value = "0,1/4,1/2,3/4")]
    pub grid: String,
    #[arg(long, default_value = "1/2")]
    pub theta1: String,
    #[arg(long, default_value = "1/2")]
    pub theta2: String,
    #[arg(long, default_value = "2")]
    pub ubar: String,
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded { .. } => EXIT_CAP,
            _ => EXIT_INVALID,
        };
        let mut message = e.to_string();
        if code == EXIT_CAP {
            message.push_str(
                "; raise --cap, or use a uniform unrestricted/strict/weak_only domain \
                 without --strict-iii so the characterization applies",
            );
        }
        Failure { code, message }
    }
}

impl BuilderParams {
    fn queueing(&self) -> Result<QueueingParams, Failure> {
        Ok(QueueingParams::new(
            [parse_rational(&self.theta1)?, parse_rational(&self.theta2)?],
            parse_rational(&self.ubar)?,
            parse_rational_list(&self.grid)?,
        )?)
    }

    fn m_or(&self, default: usize) -> usize {
        self.m.unwrap_or(default)
    }

    fn tiebreak(&self) -> Result<Option<Vec<usize>>, Failure> {
        let Some(s) = &self.tiebreak else {
            return Ok(None);
        };
        s.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(c) if c >= 1 => Ok(c - 1),
                _ => Err(Failure::usage(format!("bad tiebreak entry {t:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Some)
    }

    fn build(&self, name: BuilderName) -> Result<(String, Subject), Failure> {
        Ok(match name {
            BuilderName::Referendum => {
                let m = self.m_or(1);
                (
                    format!("referendum(m={m})"),
                    Subject::Deterministic(build_majority_referendum(m)?),
                )
            }
            BuilderName::Plurality => {
                let m = self.m_or(2);
                (
                    format!("plurality(n={}, m={m})", self.n),
                    Subject::Deterministic(build_plurality(self.n, m, self.tiebreak()?)?),
                )
            }
            BuilderName::Groves => {
                let q = self.queueing()?;
                (
                    format!(
                        "groves(grid={}, theta1={}, theta2={}, ubar={})",
                        self.grid, self.theta1, self.theta2, self.ubar
                    ),
                    Subject::Deterministic(build_groves_queueing(&q)?),
                )
            }
            BuilderName::Relfreq => {
                let m = self.m_or(2);
                (
                    format!("relfreq(n={}, m={m})", self.n),
                    Subject::Probabilistic(build_relative_frequency(self.n, m)?),
                )
            }
            BuilderName::Example1 => (
                "example1".to_string(),
                Subject::Probabilistic(build_example1()?),
            ),
        })
    }
}

fn read(path: &std::path::Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_INVALID,
        message: format!("{}: {e}", path.display()),
    })
}

fn cmd_validate(path: &std::path::Path) -> Result<String, Failure> {
    let doc = parse_document(&read(path)?)?;
    let what = match doc {
        Document::Environment(_) => "environment",
        Document::Deterministic(_) => "deterministic mechanism",
        Document::Probabilistic(_) => "probabilistic mechanism",
    };
    Ok(format!("ok: valid {what}"))
}

fn cmd_build(name: BuilderName, params: &BuilderParams) -> Result<String, Failure> {
    let (_, subject) = params.build(name)?;
    let doc = match &subject {
        Subject::Deterministic(f) => det_to_doc(f),
        Subject::Probabilistic(f) => prob_to_doc(f),
    };
    Ok(serde_json::to_string_pretty(&doc).expect("documents serialise"))
}

/// Resolves `--domains` against the subject's environment.
fn parse_domains(
    spec: &str,
    subject: &Subject,
    params: &BuilderParams,
    caps: Caps,
) -> Result<Vec<DomainSpec>, Failure> {
    let env = subject.env();
    let n = env.agent_count();
    let uniform = |d: DomainSpec| vec![d; n];
    Ok(match spec {
        "env" => env.domains().to_vec(),
        "unrestricted" => uniform(DomainSpec::Unrestricted),
        "strict" => uniform(DomainSpec::StrictOnly),
        "weak_only" => uniform(DomainSpec::WeakOnly),
        "explicit:queueing" | "explicit:prop4" => {
            let q = params.queueing()?;
            vec![
                DomainSpec::Explicit(vec![build_queueing_pref_1(&q, env)?]),
                DomainSpec::Explicit(vec![build_queueing_pref_2(&q, env)?]),
            ]
        }
        "explicit:example1" => {
            let ord = example1_ordering();
            if env.agent_count() < 1
                || env.pair_count(0) != ord.action_count() * ord.outcome_count()
                || env.action_count(0) != ord.action_count()
            {
                return Err(Failure::usage(
                    "explicit:example1 needs a two-action, two-outcome agent 0",
                ));
            }
            let mut domains = uniform(DomainSpec::Unrestricted);
            domains[0] = DomainSpec::Explicit(vec![ord]);
            domains
        }
        "explicit:classical" => (0..n)
            .map(|i| {
                classical_orderings(i, env.action_count(i), env.outcome_count(), caps.weak)
                    .map(DomainSpec::Explicit)
            })
            .collect::<crate::Result<Vec<_>>>()?,
        other => {
            if let Some(path) = other.strip_prefix("file:") {
                let text = read(std::path::Path::new(path))?;
                let docs: Vec<DomainDoc> = serde_json::from_str(&text)
                    .map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
                parse_domain_list(env, &docs)?
            } else {
                return Err(Failure::usage(format!("unknown domain spec {other:?}")));
            }
        }
    })
}

fn cmd_analyze(args: &AnalyzeArgs) -> Result<String, Failure> {
    if args.jobs == 0 {
        return Err(Failure::usage("--jobs must be at least 1"));
    }
    let (name, subject) = match (&args.mech, args.builder) {
        (Some(path), None) => {
            let subject = match parse_document(&read(path)?)? {
                Document::Deterministic(f) => Subject::Deterministic(f),
                Document::Probabilistic(f) => Subject::Probabilistic(f),
                Document::Environment(_) => {
                    return Err(Failure::usage(
                        "--mech needs a mechanism, not an environment",
                    ))
                }
            };
            (path.display().to_string(), subject)
        }
        (None, Some(b)) => args.params.build(b)?,
        _ => return Err(Failure::usage("give exactly one of --mech or --builder")),
    };
    let is_prob = matches!(subject, Subject::Probabilistic(_));
    if is_prob != args.prob {
        return Err(Failure::usage(if is_prob {
            "probabilistic mechanism: pass --prob"
        } else {
            "--prob given for a deterministic mechanism"
        }));
    }
    let caps = args.cap.map(Caps::uniform).unwrap_or_default();
    let domains = parse_domains(&args.domains, &subject, &args.params, caps)?;
    let opts = SearchOptions {
        caps,
        strict_iii: args.strict_iii,
        jobs: args.jobs,
    };
    let report = analyze(&subject, &name, &domains, &opts)?;
    Ok(match args.report {
        ReportFormat::Json => {
            serde_json::to_string_pretty(&report.to_json(args.timing)).expect("values serialise")
        }
        ReportFormat::Text => report.to_text().trim_end().to_string(),
    })
}

fn cmd_verify_paper(seed: u64) -> Result<(String, bool), Failure> {
    let claims = verify_all(seed)?;
    let passed = claims.iter().filter(|c| c.passed).count();
    let mut lines: Vec<String> = claims.iter().map(|c| c.line()).collect();
    lines.push(format!("{passed}/{} claims pass", claims.len()));
    Ok((lines.join("\n"), passed == claims.len()))
}

/// Parses `args`, runs the command and returns its exit code.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match &cli.command {
        Command::Validate { path } => cmd_validate(path).map(|s| (s, true)),
        Command::Build { name, params } => cmd_build(*name, params).map(|s| (s, true)),
        Command::Analyze(args) => cmd_analyze(args).map(|s| (s, true)),
        Command::VerifyPaper { seed } => cmd_verify_paper(*seed),
    };
    match outcome {
        Ok((out, ok)) => {
            // A closed pipe (e.g. `| head`) is not an error worth a panic.
            let _ = writeln!(std::io::stdout().lock(), "{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

pub fn main() -> ExitCode {
    run(std::env::args_os())
}
