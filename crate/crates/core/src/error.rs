use thiserror::Error;

use crate::combinatorics::Node;

/// Errors raised by the library.
///
/// The CLI maps [`Error::Parse`] to exit code 1 and every other variant to
/// exit code 2 (precondition failure).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not a prime")]
    NotPrime(u32),

    #[error("label {label} is not a nonzero element of F_{q}")]
    BadLabel { label: u32, q: u32 },

    #[error("arc {left}-{right} must satisfy 0 < left < right")]
    BadArc { left: Node, right: Node },

    #[error("node {0} is not in the ambient node set")]
    NodeOutsideSupport(Node),

    #[error("node set {sub} is not contained in {sup}")]
    NotSubset { sub: String, sup: String },

    #[error("multiset {0} is not a q-set partition")]
    NotSetPartition(String),

    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("enumeration guard exceeded: {0}")]
    GuardExceeded(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),

    #[error("straightening is defined only for left/right/both conflicts")]
    NodeConflict,

    #[error("coefficient overflow")]
    Overflow,

    #[error("depth bound {0} exhausted before the search closed")]
    DepthExhausted(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
