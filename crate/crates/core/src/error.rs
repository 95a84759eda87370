use thiserror::Error;

/// Everything that can go wrong while building or querying a Coxeter system.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown Coxeter type `{0}`")]
    UnknownType(String),
    #[error("rank out of range for `{0}`")]
    RankOutOfRange(String),
    #[error("invalid Coxeter matrix: {0}")]
    InvalidMatrix(String),
    #[error("cannot read matrix file `{path}`: {reason}")]
    Io { path: String, reason: String },

    #[error("group is not finite: root closure exceeded {cap} roots")]
    NotFinite { cap: usize },
    #[error("numerical instability during root closure: {0}")]
    NumericalInstability(String),
    #[error("root permutation audit failed: {0}")]
    AuditFailed(String),
    #[error("group order exceeds the guard of {guard} elements")]
    OrderGuardExceeded { guard: usize },
    #[error("letter {letter} is not a generator index in 1..={rank}")]
    BadLetter { letter: usize, rank: usize },

    #[error("graph has {vertices} vertices, more than the limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },
    #[error("vertex set is not independent: {0} and {1} are adjacent")]
    NotIndependent(usize, usize),

    #[error("the identity has no ancestor")]
    IdentityHasNoAncestor,
    #[error("empty word has no ancestor decomposition")]
    EmptyWord,
    #[error("word of {len} letters exceeds the limit of {limit}")]
    WordTooLong { len: usize, limit: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
