use thiserror::Error;

/// Errors raised by the exact engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("operation undefined on the zero character")]
    ZeroCharacter,

    #[error("invalid lattice: {0}")]
    InvalidLattice(String),

    #[error("invalid Cartan label {label}{rank}")]
    InvalidCartan { label: char, rank: usize },

    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),

    #[error("value is not an integer: {0}")]
    NotIntegral(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("inconsistent restriction map: {0}")]
    InconsistentRestriction(String),

    #[error("group enumeration exceeded cap of {0} elements")]
    CapExceeded(usize),

    #[error("generator is not invertible over the integers (det = {0})")]
    NotUnimodular(i64),

    #[error("element set is not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("no prime found for character table computation: {0}")]
    PrimeSearch(String),

    #[error("character table failure: {0}")]
    CharacterTable(String),

    #[error("conductor {needed} exceeds configured cap {cap}")]
    ConductorOverflow { needed: u64, cap: u64 },

    #[error("quadrature grid too coarse: need {required} points per axis, got {given}")]
    GridTooCoarse { required: usize, given: usize },

    #[error("automorphism is not pinned: {0}")]
    NotPinned(String),

    #[error("division left a nonzero remainder: {0}")]
    DivisionRemainder(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
