use thiserror::Error;

use crate::revtree::NodeId;
use crate::variant::Variant;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("mock modulus {0} is not prime")]
    NotPrime(u64),
    #[error("mock modulus {0} is out of range (need 2 <= q < 2^31)")]
    ModulusOutOfRange(u64),
    #[error("unsupported group profile `{0}`")]
    UnsupportedProfile(String),
    #[error("unknown scheme `{0}` (expected sxdh or dlin)")]
    UnknownScheme(String),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector dimension must be at least 1")]
    EmptyVector,
    #[error("could not sample an invertible basis after {0} attempts")]
    SingularBasis(usize),

    #[error("tree capacity must be at least 1")]
    InvalidCapacity,
    #[error("tree capacity {0} is too large")]
    CapacityTooLarge(u64),
    #[error("all {0} leaves are assigned")]
    TreeFull(u64),
    #[error("node {0} is not a leaf of this tree")]
    NotALeaf(NodeId),
    #[error("node {0} is not in this tree")]
    NodeOutOfRange(NodeId),
    #[error("node {node} holds {found} shares, {requested} requested")]
    ShareVariantMismatch {
        node: NodeId,
        found: Variant,
        requested: Variant,
    },

    #[error("time {time} precedes the last queried time {last}")]
    TimeRegression { time: u64, last: u64 },
    #[error(
        "a key update was already published for time {0}; revocations at that time are closed"
    )]
    RevokeAfterPublish(u64),

    #[error("scheme mismatch: expected {expected}, found {found}")]
    VariantMismatch { expected: Variant, found: Variant },
    #[error("master key does not carry its dual bases")]
    MissingBases,

    #[error("bad magic bytes")]
    BadMagic,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u16),
    #[error("engine mismatch: artifact uses {found}, expected {expected}")]
    EngineMismatch { expected: String, found: String },
    #[error("unexpected artifact kind {0:#04x}")]
    UnexpectedKind(u8),
    #[error("malformed encoding: {0}")]
    Malformed(String),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }
}
