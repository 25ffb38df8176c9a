//! Shared error type for the whole crate.

use thiserror::Error;

/// Everything that can go wrong across the tree, name, lattice and algebra
/// layers. CLI maps any of these to exit code 1.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid name: {0}")]
    InvalidName(String),

    #[error("grafting requires at least two parts")]
    GraftArity,

    #[error("leaf index {index} out of range 1..={leaves}")]
    LeafIndex { index: usize, leaves: usize },

    #[error("cannot place a non-leaf tree on a leaf host")]
    LeafHost,

    #[error("degree {degree} exceeds the enumeration cap {cap}")]
    EnumerationCap { degree: usize, cap: usize },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),

    #[error("the product of two unit operands (0) is undefined")]
    UndefinedUnitPair,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no left-modular maximal chain found at degree {0}")]
    ChainSearch(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
