use std::fmt;

use thiserror::Error;

/// Why a minimal-open-neighbourhood map fails to describe a topology.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// `y` is listed in `minopen[x]` but is not a point of the space.
    OutOfRange,
    /// `x` is missing from its own neighbourhood (`y == x`).
    NotReflexive,
    /// `y ∈ minopen[x]` but `minopen[y] ⊄ minopen[x]`.
    NotCoherent,
}

/// First offending pair found while validating a finite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub x: usize,
    pub y: usize,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            ViolationKind::OutOfRange => {
                write!(
                    f,
                    "minopen[{}] lists point {} outside the space",
                    self.x, self.y
                )
            }
            ViolationKind::NotReflexive => {
                write!(f, "point {} is not in minopen[{}]", self.x, self.x)
            }
            ViolationKind::NotCoherent => write!(
                f,
                "minopen[{y}] is not contained in minopen[{x}] although {y} is in minopen[{x}]",
                x = self.x,
                y = self.y
            ),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: unexpected `{token}`: {message}")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },

    #[error("invalid space: {0} (violating pair x={x}, y={y})", x = .0.x, y = .0.y)]
    InvalidSpace(Violation),

    #[error("point {point} is out of range for a space with {n} points")]
    PointOutOfRange { point: usize, n: usize },

    #[error("the given set is not open")]
    NotOpen,

    #[error("the set is not monitorable, no regular-open/nowhere-dense decomposition exists")]
    NotMonitorable,

    #[error("the space is not hyperconnected")]
    NotHyperconnected,

    #[error("the hyperconnected decider needs a non-empty space")]
    EmptySpace,

    #[error("no state is free of the required and forbidden triples")]
    NoFreshState,

    #[error("triple ({0}, {1}, {2}) is both required and forbidden")]
    ConflictingConstraints(usize, String, usize),

    #[error("refusing to enumerate subsets of a space with {n} points (limit {limit})")]
    SizeGuard { n: usize, limit: usize },

    #[error("unknown built-in space `{0}`")]
    UnknownBuiltin(String),

    #[error("unknown decider `{0}`")]
    UnknownDecider(String),

    #[error("malformed tree: {0}")]
    MalformedTree(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, token: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            token: token.into(),
            message: message.into(),
        }
    }

    /// Malformed input (exit status 2) as opposed to a domain failure (exit status 1).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::InvalidSpace(_)
                | Error::PointOutOfRange { .. }
                | Error::MalformedTree(_)
                | Error::UnknownBuiltin(_)
                | Error::UnknownDecider(_)
                | Error::InvalidArgument(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
