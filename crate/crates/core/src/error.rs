use thiserror::Error;

use crate::index::{IndexSet, Window};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("index 0 is not a valid signed index")]
    ZeroIndex,
    #[error("index {index} lies outside window {window}")]
    IndexOutOfWindow { index: i32, window: Window },
    #[error("window mismatch: {left} vs {right}")]
    WindowMismatch { left: Window, right: Window },
    #[error("window {inner} is not contained in window {outer}")]
    WindowNotContained { inner: Window, outer: Window },
    #[error("grade mismatch: expected {expected}, found {found}")]
    GradeMismatch { expected: usize, found: usize },
    #[error("index sequence is not strictly ascending: {0:?}")]
    NotAscending(Vec<i32>),
    #[error("blocks overlap at index {0}")]
    OverlappingBlocks(i32),
    #[error("set of size {size} cannot be split into blocks of size {block}")]
    NotDivisible { size: usize, block: usize },
    #[error("invalid form: {0}")]
    InvalidForm(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed co-finite set: {0}")]
    MalformedCofinite(String),
    #[error("coordinate {0} is not known")]
    MissingCoordinate(IndexSet),
    #[error("denominator vanishes for target {target} on carrier {carrier}")]
    ZeroDenominator { target: IndexSet, carrier: IndexSet },
    #[error("target {target} is not an initial subinterval of carrier {carrier}")]
    NotInitial { target: IndexSet, carrier: IndexSet },
    #[error("nonzero scalar is not nilpotent")]
    NotNilpotent,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, WedgeError>;
