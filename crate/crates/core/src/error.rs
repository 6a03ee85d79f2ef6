use alloc::string::String;

/// Errors raised by the counting pipeline.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("cannot pad a set of {len} elements to {k}")]
    PadTooShort { len: usize, k: usize },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("{0} does not divide {1}")]
    NotADivisor(usize, usize),
    #[error("margins are unbalanced: rows sum to {rows}, columns sum to {cols}")]
    UnbalancedMargins { rows: u64, cols: u64 },
    #[error("{what}: {count} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        count: u128,
        cap: u128,
    },
    #[error("{s} and {t} are not coprime")]
    NotCoprime { s: usize, t: usize },
    #[error("k = {k} is below the anchor {anchor}")]
    BelowAnchor { k: usize, anchor: usize },
    #[error("{0} is not a core of the required kind")]
    NotACore(String),
    #[error("the gcd-cores of sigma and tau differ, so every fibre is empty")]
    CoreMismatch,
    #[error("constraint matrix is not totally unimodular")]
    NotTotallyUnimodular,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("point does not lift to a nonnegative matrix")]
    NegativeEntry,
    #[error("could not certify a threshold up to k = {cap}: {detail}")]
    ThresholdNotCertified { cap: usize, detail: String },
}

pub type Result<T> = core::result::Result<T, Error>;
