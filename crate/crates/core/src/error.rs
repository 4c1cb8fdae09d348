use thiserror::Error;

use crate::axioms::AxiomReport;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("candidate set must be nonempty")]
    EmptyCandidates,
    #[error("at most {max} candidates are supported, got {got}")]
    TooManyCandidates { max: usize, got: usize },
    #[error("duplicate candidate `{0}`")]
    DuplicateCandidate(String),
    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),
    #[error("candidate index {index} out of range for {n} candidates")]
    CandidateOutOfRange { index: usize, n: usize },
    #[error("pair operations need two distinct candidates")]
    DiagonalPair,
    #[error("a profile needs at least one voter")]
    NoVoters,
    #[error("voter index {index} out of range for {voters} voters")]
    VoterOutOfRange { index: usize, voters: usize },
    #[error("invalid ballot: {0}")]
    InvalidBallot(String),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("relation is not a weak order")]
    NotAWeakOrder,
    #[error("candidate sets differ")]
    CandidateMismatch,
    #[error("{rule} requires linear ballots")]
    NonLinearBallot { rule: String },
    #[error("{rule} requires {requirement}")]
    Cardinality { rule: String, requirement: String },
    #[error("invalid margin graph: {0}")]
    InvalidGraph(String),
    #[error("profile space of {size} profiles exceeds the limit of {limit}")]
    SpaceTooLarge { size: u128, limit: u128 },
    #[error("rationalization table has no entry for {0}")]
    Coverage(String),
    /// Carries the failed weak IIA or orderability report.
    #[error("not rationalizable: {} fails", .0.axiom)]
    NotRationalizable(Box<AxiomReport>),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
