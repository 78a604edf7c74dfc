use thiserror::Error;

/// Errors raised by the poset, coloring, trace and definability layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("relation is cyclic: {0} and {1} would be mutually below each other")]
    Cycle(usize, usize),
    #[error("element {element} out of range for a poset of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("set is not an antichain: {0} and {1} are comparable")]
    NotAntichain(usize, usize),
    #[error("set is not a chain: {0} and {1} are incomparable")]
    NotChain(usize, usize),
    #[error("set is not a maximal antichain")]
    NotMaximalAntichain,
    #[error("no maximal antichain extends the given antichain inside the region")]
    ExtensionFailed,
    #[error("interval endpoints are not ordered")]
    OrderViolation,
    #[error("antichain of size {size} is too small for a majority at N = {n}")]
    TooSmall { size: usize, n: usize },
    #[error("antichain has no unique majority color")]
    NotUnique,
    #[error("coloring is not {n}-indiscernible: {reason}")]
    InvalidColoring { n: usize, reason: String },
    #[error("internal bound violated: {0}")]
    InternalBoundViolation(String),
    #[error("set is not contained in color class {0}")]
    NotMonochromatic(u8),
    #[error("minority color exceeds the bound N = {0}")]
    BadMajority(usize),
    #[error("tuple repeats index {0}")]
    RepeatedIndex(usize),
    #[error("the supplied order is not a total order on the set")]
    NotTotal,
    #[error("instance is in the other case of the chain-homogeneity split")]
    CaseMismatch,
    #[error("no order-sensitive formula exists for the chains of this sequence")]
    NoOrderSensitiveDelta,
    #[error("sequence is not indiscernible enough: {0}")]
    IndiscernibilityBroken(String),
    #[error("instance exceeds the configured cap: {what} = {value} > {cap}")]
    CapExceeded { what: &'static str, value: usize, cap: usize },
    #[error("input schema error: {0}")]
    Schema(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cannot access {path}: {reason}")]
    Io { path: String, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
