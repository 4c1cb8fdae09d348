//! `advstd` command-line front end.
//!
//! Exit codes: 0 success or every axiom holds, 1 an axiom or verification
//! fails, 2 parse or validation error, 3 infeasible space bounds, 4 unknown
//! figure id.

mod commands;
mod figures;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use advstd::ccr::{Measure, RankedPairsPolicy, RuleKind};
use advstd::Error;

#[derive(Parser)]
#[command(name = "advstd", version, about = "Advantage-standard model of collective choice")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a rule on a profile file, or on a margin graph with --graph.
    Tally(TallyArgs),
    /// Check axioms exhaustively over a profile space.
    Axioms(AxiomsArgs),
    /// Construct, export or verify an advantage-standard rationalization.
    Rationalize(RationalizeArgs),
    /// Look for a counterexample to one axiom, exhaustively or by sampling.
    Search(SearchArgs),
    /// Reproduce a reference figure or example.
    Figures(FiguresArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args)]
pub struct RuleArgs {
    /// Rule name, e.g. majority, gillies, ranked-pairs, split-cycle, dodgson.
    #[arg(long)]
    pub ccr: String,
    /// margin or ratio, for ranked-pairs and split-cycle.
    #[arg(long, default_value = "margin")]
    pub measure: String,
    /// pareto-indifference or complete-closure, for ranked-pairs.
    #[arg(long, default_value = "pareto-indifference")]
    pub policy: String,
    /// Voter index of the dictator, for dictatorship.
    #[arg(long, default_value_t = 0)]
    pub dictator: usize,
    /// Drop the cardinality minimums of baigent-witness.
    #[arg(long)]
    pub relaxed: bool,
}

impl RuleArgs {
    pub fn rule(&self) -> Result<RuleKind, Failure> {
        let measure = Measure::parse(&self.measure)?;
        let policy = RankedPairsPolicy::parse(&self.policy)?;
        Ok(match RuleKind::parse(&self.ccr, measure, policy, self.dictator)? {
            RuleKind::BaigentWitness { .. } => RuleKind::BaigentWitness { relaxed: self.relaxed },
            rule => rule,
        })
    }
}

#[derive(Args)]
pub struct SpaceArgs {
    /// Number of candidates.
    #[arg(long = "X", visible_alias = "candidates")]
    pub candidates: usize,
    /// Number of voters.
    #[arg(long = "V", visible_alias = "voters")]
    pub voters: usize,
    /// Restrict to linear ballots (implied for rules that need them).
    #[arg(long)]
    pub linear: bool,
    /// Proceed when the space exceeds ten million profiles.
    #[arg(long)]
    pub yes: bool,
}

#[derive(Args)]
pub struct TallyArgs {
    /// Profile JSON file, or margin graph JSON with --graph.
    pub input: PathBuf,
    #[command(flatten)]
    pub rule: RuleArgs,
    /// Read a margin graph instead of a profile.
    #[arg(long)]
    pub graph: bool,
    /// Also print the margin graph in DOT.
    #[arg(long)]
    pub dot: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args)]
pub struct AxiomsArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Axiom to check; repeatable. Defaults to every axiom.
    #[arg(long = "axiom")]
    pub axioms: Vec<String>,
    /// Check every axiom.
    #[arg(long)]
    pub all: bool,
    /// Also list power holders and weakly decisive coalitions.
    #[arg(long)]
    pub powers: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args)]
pub struct RationalizeArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[command(flatten)]
    pub space: SpaceArgs,
    /// Tabulate the rule's closed-form rationalization instead of
    /// constructing one.
    #[arg(long, conflicts_with = "verify")]
    pub closed_form: bool,
    /// Write the rationalization as JSON.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Verify a rationalization read from a JSON file.
    #[arg(long)]
    pub verify: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub rule: RuleArgs,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[arg(long)]
    pub axiom: String,
    /// Check this many uniformly sampled profiles instead of the full space.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Args)]
pub struct FiguresArgs {
    /// One of fig1, fig3, fig4, fig5, fig6, fig7, ex3.8, ex3.9.
    pub id: String,
}

/// A non-success outcome with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TooManyCandidates { .. }
            | Error::EmptyCandidates
            | Error::SpaceTooLarge { .. }
            | Error::Cardinality { .. } => 3,
            Error::Coverage(_) | Error::NotRationalizable(_) => 1,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Tally(args) => commands::tally(&args),
        Command::Axioms(args) => commands::axioms(&args),
        Command::Rationalize(args) => commands::rationalize(&args),
        Command::Search(args) => commands::search(&args),
        Command::Figures(args) => commands::figures(&args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
