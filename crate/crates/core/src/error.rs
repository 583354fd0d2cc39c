use thiserror::Error;

use crate::conjugacy::ValidationReport;
use crate::rational::Coweight;

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown root system label `{0}`")]
    UnknownLabel(String),

    #[error("invalid isogeny lattice: {0}")]
    Isogeny(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("Weyl group of order {order} exceeds the size guard {cap}")]
    SizeGuard { order: u64, cap: u64 },

    #[error("rank mismatch: expected {expected}, got {got}")]
    Rank { expected: usize, got: usize },

    #[error("not dominant: {0}")]
    NotDominant(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid class datum: {0}")]
    InvalidClass(ValidationReport),

    #[error("the Kottwitz-Viehmann variety is empty")]
    EmptyVariety,

    #[error("non-integral value: {0}")]
    NonIntegral(String),

    #[error("no candidate: {0}")]
    NoCandidate(String),

    #[error("minimum is not unique for {what}: candidates {}", fmt_list(.candidates))]
    NonUnique {
        what: String,
        candidates: Vec<Coweight>,
    },

    #[error("invariant failure: {0}")]
    Inconsistent(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

fn fmt_list(v: &[Coweight]) -> String {
    v.iter()
        .map(|c| format!("({c})"))
        .collect::<Vec<_>>()
        .join(" ")
}

impl Error {
    /// True for failures that falsify a claimed identity or signal an
    /// internally inconsistent datum, as opposed to bad user input.
    pub fn is_invariant_failure(&self) -> bool {
        matches!(
            self,
            Error::NonIntegral(_)
                | Error::NoCandidate(_)
                | Error::NonUnique { .. }
                | Error::Inconsistent(_)
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
