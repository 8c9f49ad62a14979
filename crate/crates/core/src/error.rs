use thiserror::Error;

/// Errors raised by the algebraic routines of this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for rank {rank}")]
    InvalidGenerator { index: usize, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid Coxeter system: {0}")]
    InvalidSystem(String),

    #[error("roots do not generate a crystallographic rank-2 subsystem (normalized form value {0})")]
    NotCrystallographicPair(String),

    #[error("no facets: the target element is not below the Demazure product of the word")]
    NoFacets,

    #[error("face is not a facet: {0}")]
    NotAFacet(String),

    #[error("position set {0:?} is not a flat")]
    NotAFlat(Vec<usize>),

    #[error("flat {0:?} is not irreducible")]
    NotIrreducible(Vec<usize>),

    #[error("morphisms are not composable")]
    NotComposable,

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("object is not root independent")]
    NotInD,

    #[error("not flippable: {0}")]
    NotFlippable(String),

    #[error("underlying graph of the quiver is not a forest")]
    NotATree,

    #[error("position {0} has no partner traversing position")]
    NoPartner(usize),

    #[error("vertex {0} is not special")]
    NotSpecial(usize),

    #[error("enumeration budget of {0} exceeded")]
    BudgetExceeded(usize),

    #[error("sequence does not decompose summand-wise: {0}")]
    NotDecomposable(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
