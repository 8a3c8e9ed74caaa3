use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible conductor: {from} does not divide {to}")]
    IncompatibleConductor { from: u32, to: u32 },
    #[error("conductor insufficient: {0}")]
    ConductorInsufficient(String),
    #[error("inexact division")]
    InexactDivision,
    #[error("division by zero")]
    DivisionByZero,
    #[error("infinite group: {0:?} violates 1/p+1/q+1/r > 1")]
    InfiniteGroup([u32; 3]),
    #[error("unsupported group type: {0}")]
    UnsupportedType(String),
    #[error("closure overflow: more than {0} elements")]
    ClosureOverflow(usize),
    #[error("closure produced {found} elements, expected {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("generator search failed")]
    GeneratorSearchFailed,
    #[error("reflection search failed")]
    ReflectionSearchFailed,
    #[error("degree equations inconsistent: |K'| = {order}, {reflections} reflections")]
    DegreesInconsistent { order: usize, reflections: usize },
    #[error("character oracle failed: {0}")]
    CharacterOracleFailed(String),
    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),
    #[error("McKay matching failed")]
    MatchingFailed,
    #[error("node/class mismatch: {0}")]
    NodeClassMismatch(String),
    #[error("degree/system inconsistency: {0}")]
    SystemInconsistency(String),
    #[error("ambiguous split: nonzero coefficient at the center exponent {0}")]
    AmbiguousSplit(String),
    #[error("no generic line found")]
    GenericLineSearchFailed,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
