use thiserror::Error;

use crate::subset::{Label, Subset};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("ground set size {0} is outside the supported range")]
    GroundSetSize(usize),

    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("sign pattern must be positive on the empty set")]
    NegativeEmptySet,

    #[error("sign pattern is not admissible")]
    NotAdmissible,

    #[error("not a permutation of the ground set")]
    NotAPermutation,

    #[error("principal minor at {} vanishes", Label(*.0))]
    NotPrincipallyRegular(Subset),

    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("improper coloring: {0}")]
    ImproperColoring(String),

    #[error("inconsistent value at {}", Label(*.0))]
    Inconsistent(Subset),

    #[error("refusing n = {n}: {reason}")]
    TooLarge { n: usize, reason: &'static str },

    #[error("set is not closed under the group action")]
    NotClosed,

    #[error("ground sets overlap")]
    Overlap,

    #[error("sign pattern is not completely reducible")]
    NotCompletelyReducible,

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("missing data: {0}")]
    Missing(String),
}
