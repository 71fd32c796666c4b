use num_bigint::BigUint;
use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Arguments outside the domain of a formula or constructor.
    #[error("domain error: {0}")]
    Domain(String),

    /// The predicted number of objects exceeds the configured cap.
    #[error("predicted count {count} exceeds the enumeration cap {cap}")]
    CapExceeded { count: BigUint, cap: u64 },

    /// A subset code of the wrong size or with out-of-range labels.
    #[error("invalid subset code: {0}")]
    InvalidCode(String),

    /// Peeling found no up-step followed by enough down-steps.
    #[error("subset {members:?} is not peelable on a cycle of {nk} labels")]
    NotPeelable { nk: u32, members: Vec<u32> },

    /// A property that holds for every valid input failed; this is a bug.
    #[error("internal invariant broken: {0}")]
    InternalInvariantBroken(String),

    /// No integer n satisfies sides = n(k-1)+2.
    #[error("a {sides}-gon cannot be dissected into {}-gons", .k + 1)]
    IncompatibleGeometry { sides: u32, k: u32 },

    /// A dissection whose faces do not glue along diagonals in pairs.
    #[error("malformed dissection: {0}")]
    MalformedDissection(String),

    /// Malformed input text.
    #[error("parse error: {0}")]
    Parse(String),

    /// Well-formed input describing an invalid object.
    #[error("validation error: {}", .0.join("; "))]
    Validation(Vec<String>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
