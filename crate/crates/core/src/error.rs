use thiserror::Error;

/// Errors raised by the library.
///
/// Variants are grouped loosely by cause: malformed input (`Parse`,
/// `Dimension`, `IndexOutOfRange`), violated mathematical preconditions
/// (`Precondition`, `NotGeneric`, `NonIsolated`, `UnsupportedDegree`) and
/// failures that would falsify a proved statement on a concrete instance
/// (`Falsified`).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("zero ideal: all generators vanish")]
    ZeroIdeal,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arrangement is not generic: hyperplanes {subset:?} (1-based) are linearly dependent")]
    NotGeneric { subset: Vec<usize> },

    #[error("Jacobian ideal is not Artinian below degree {cap}; the singularity is not isolated (use the generic formula instead)")]
    NonIsolated { cap: u32 },

    #[error("degree {degree} unsupported: k = {k} divides r - k + n = {shift}")]
    UnsupportedDegree { degree: u32, k: u32, shift: i64 },

    #[error("no root of the form -(i+n)/k with i >= 0")]
    NoMatchingRoot,

    #[error("construction failed on this instance: {0}")]
    Falsified(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
