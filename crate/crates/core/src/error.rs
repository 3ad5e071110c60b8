use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("letters do not compose as a path: {0}")]
    NonComposable(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("unknown relator symbol `{0}`")]
    UnknownRelator(String),
    #[error("group did not close within bound {bound} (reached {reached} elements)")]
    NotFiniteWithinBound { bound: usize, reached: usize },
    #[error("operation requires a finite oracle")]
    NotFinite,
    #[error("rewriting was inconclusive for this presentation: {0}")]
    RewritingInconclusive(String),
    #[error("oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("basepoint mismatch: expected {expected}, found {found}")]
    BasepointMismatch { expected: String, found: String },
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("relator `{0}` is not a loop")]
    NonLoopRelator(String),
    #[error("dimension {0} out of range for this operation")]
    DimensionOutOfRange(u32),
    #[error("dimension overflow: requested {0}")]
    DimensionOverflow(u32),
    #[error("no image supplied for generator `{0}`")]
    MissingImage(String),
    #[error("a boundary of a dimension-3 generator is not an identity among relations: {0}")]
    NonIdentityBoundary(String),
    #[error("lift is not a verified morphism: {0}")]
    UnverifiedLift(String),
    #[error("no lift found in dimension {dim}: {msg}")]
    LiftNotFound { dim: u32, msg: String },
    #[error("lift is ambiguous without hints in dimension {0}")]
    AmbiguousWithoutHints(u32),
    #[error("complex is not a two-object complex joined by a single connector")]
    NotTwoObject,
    #[error("chain complex construction needs a coefficient oracle")]
    MissingOracle,
    #[error("complex is not reduced (more than one object)")]
    NotReduced,
    #[error("group too large for brute-force automorphisms: {0}")]
    TooLarge(usize),
    #[error("cocycle data failed verification: {0}")]
    UnverifiedCocycle(String),
}

pub type Result<T> = std::result::Result<T, Error>;
