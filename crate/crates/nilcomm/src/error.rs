//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by partition combinatorics, exact linear algebra, and the
/// sampling estimators.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partition parts must be positive")]
    ZeroPart,
    #[error("partitions have different totals ({0} vs {1})")]
    TotalMismatch(usize, usize),
    #[error("operation requires strictly decreasing parts")]
    RepeatedParts,
    #[error("not a valid Hilbert function: {0}")]
    InvalidHilbert(String),
    #[error("n = {0} exceeds the enumeration bound {1}")]
    EnumerationBound(usize, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimMismatch(usize, usize, usize, usize),
    #[error("field moduli differ ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrices do not commute")]
    NotCommuting,
    #[error("not a string decomposition of the given partition")]
    InvalidDecomposition,
    #[error("matrix is not in the span of the algebra basis")]
    NotInSpan,
    #[error("matrix is not in the nilpotent commutator")]
    NotInCommutant,
    #[error("inconclusive sampling: {0}")]
    Inconclusive(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
