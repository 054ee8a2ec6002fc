use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("size {size} exceeds the configured cap {cap}")]
    SizeCap { size: usize, cap: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("cannot parse {kind} from {input:?}: {reason}")]
    Parse {
        kind: &'static str,
        input: String,
        reason: String,
    },

    #[error("unknown orbit {0:?}")]
    UnknownOrbit(String),

    /// A root of type II (or a real root failing the parity condition) turned
    /// up. The engine only handles blocks where every orbit carries the
    /// trivial local system alone.
    #[error("unsupported root type {root_type} for s={s} at orbit {orbit}: only trivial local systems are handled")]
    UnsupportedRootType {
        s: usize,
        orbit: String,
        root_type: String,
    },

    #[error("orbit {orbit} has positive length {d} but no raising pair")]
    Unreachable { orbit: String, d: usize },

    #[error("closure of {orbit} depends on the raising pair: {detail}")]
    InconsistentClosure { orbit: String, detail: String },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
