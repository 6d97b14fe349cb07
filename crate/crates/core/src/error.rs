use thiserror::Error;

/// Everything that can go wrong while building, reading or checking families.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed family document: {0}")]
    Malformed(String),

    #[error("pair {pair}: element {element} out of range 1..{n}")]
    ElementOutOfRange { pair: usize, element: usize, n: usize },

    #[error("pair {pair} violates A∩B=∅ (shared elements {elements:?})")]
    NotDisjoint { pair: usize, elements: Vec<usize> },

    #[error("inconsistent partition: {0}")]
    Partition(String),

    #[error("set pair does not belong to a ground set of size {n}")]
    GroundMismatch { n: usize },

    #[error("theorem {theorem} does not apply to this ground set: {reason}")]
    TheoremGround { theorem: String, reason: String },

    #[error("uniformity violated at pair {pair}: {reason}")]
    Uniformity { pair: usize, reason: String },

    #[error("duplicate pair at positions {first} and {second}")]
    DuplicatePair { first: usize, second: usize },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{what} = {value} exceeds cap {cap} (use --force to override)")]
    CapExceeded { what: String, value: u128, cap: u128 },

    #[error("unknown theorem id {0:?}")]
    UnknownTheorem(String),
}

pub type Result<T> = std::result::Result<T, Error>;
