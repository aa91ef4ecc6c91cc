use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Exit status for a successful command.
pub const EXIT_OK: i32 = 0;
/// Exit status when a witness fails to replay through the tally.
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID_INPUT: i32 = 2;
pub const EXIT_RESOURCE_LIMIT: i32 = 3;
pub const EXIT_UNSUPPORTED: i32 = 4;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid election: {0}")]
    InvalidElection(String),

    #[error("invalid manipulation: {}", join_violations(.0))]
    InvalidManipulation(Vec<Violation>),

    #[error("invalid recount: {0}")]
    InvalidRecount(String),

    #[error("unknown candidate `{0}`")]
    UnknownCandidate(String),

    #[error("{0}")]
    Parse(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidElection(_)
            | Error::InvalidManipulation(_)
            | Error::InvalidRecount(_)
            | Error::UnknownCandidate(_)
            | Error::Parse(_) => EXIT_INVALID_INPUT,
            Error::ResourceLimit(_) => EXIT_RESOURCE_LIMIT,
            Error::Unsupported(_) | Error::Precondition(_) => EXIT_UNSUPPORTED,
            Error::Internal(_) => EXIT_INTERNAL,
        }
    }
}

/// A single broken manipulation constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// District the violation refers to, `None` for whole-manipulation constraints.
    pub district: Option<usize>,
    pub kind: ViolationKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// More districts manipulated than the attacker's budget allows.
    Budget { manipulated: usize, budget: usize },
    UnknownDistrict,
    Length { expected: usize, found: usize },
    NegativeVotes { candidate: usize },
    Size { expected: i64, found: i64 },
    Gamma { added: i64, gamma: i64 },
    /// PV: `candidate` (not the preferred one) gained votes.
    IrregularGain { candidate: usize },
    /// PD: the preferred candidate does not carry the district.
    IrregularWinner { winner: usize },
    MissingPreferred,
}

impl ViolationKind {
    /// Short constraint name, stable across releases.
    pub fn name(&self) -> &'static str {
        match self {
            ViolationKind::Budget { .. } => "attacker-budget",
            ViolationKind::UnknownDistrict => "unknown-district",
            ViolationKind::Length { .. } => "vector-length",
            ViolationKind::NegativeVotes { .. } => "non-negative",
            ViolationKind::Size { .. } => "district-size",
            ViolationKind::Gamma { .. } => "gamma",
            ViolationKind::IrregularGain { .. } => "regular-pv",
            ViolationKind::IrregularWinner { .. } => "regular-pd",
            ViolationKind::MissingPreferred => "preferred-candidate",
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.district {
            write!(f, "district {d}: ")?;
        }
        write!(f, "{}", self.kind.name())?;
        match &self.kind {
            ViolationKind::Budget { manipulated, budget } => {
                write!(f, " ({manipulated} districts, budget {budget})")
            }
            ViolationKind::Length { expected, found } => {
                write!(f, " (expected {expected} entries, found {found})")
            }
            ViolationKind::NegativeVotes { candidate } => write!(f, " (candidate #{candidate})"),
            ViolationKind::Size { expected, found } => {
                write!(f, " (votes sum to {found}, district has {expected} voters)")
            }
            ViolationKind::Gamma { added, gamma } => {
                write!(f, " ({added} votes added, cap {gamma})")
            }
            ViolationKind::IrregularGain { candidate } => {
                write!(f, " (candidate #{candidate} gains votes)")
            }
            ViolationKind::IrregularWinner { winner } => {
                write!(f, " (district won by candidate #{winner})")
            }
            ViolationKind::UnknownDistrict | ViolationKind::MissingPreferred => Ok(()),
        }
    }
}

fn join_violations(v: &[Violation]) -> String {
    v.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}
