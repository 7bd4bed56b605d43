use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Why a raw windowed table is not the shadow of a valid element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Violation {
    /// Some entry `(i,k) -> (j,m)` has `i != j`; impossible for cofinite maps.
    CoordinateMixing,
    Monotonicity,
    Injectivity,
    TailInconsistency,
    /// Entry or tail refers to a level outside `1..=n` or a point outside the window.
    Malformed,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Violation::CoordinateMixing => "coordinate-mixing",
            Violation::Monotonicity => "monotonicity",
            Violation::Injectivity => "injectivity",
            Violation::TailInconsistency => "tail inconsistency",
            Violation::Malformed => "malformed table",
        };
        f.write_str(s)
    }
}

/// Domain errors: precondition violations of the algebraic operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer overflow in shift arithmetic")]
    Overflow,
    #[error("chain length must be at least 1")]
    EmptyChain,
    #[error("chain length mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("coordinate {index} out of range 1..={n}")]
    CoordinateOutOfRange { index: usize, n: usize },
    #[error("exclusion set is not strictly ascending")]
    UnsortedSet,
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("element is not a unit")]
    NotUnit,
    #[error("element does not have full domain")]
    NotTotal,
    #[error("elements are not related by the requested congruence")]
    NotRelated,
    #[error("invalid permutation of 1..={n}")]
    InvalidPermutation { n: usize },
    #[error("window radius {got} too small, need at least {needed}")]
    WindowTooSmall { needed: String, got: String },
    #[error("incompatible windows")]
    IncompatibleWindows,
    #[error("raw table rejected: {0}")]
    Rejected(Violation),
}
