use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("zero input is not allowed: {0}")]
    ZeroInput(&'static str),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("prime {p} divides the discriminant {disc}")]
    PrimeDividesDiscriminant { p: u64, disc: i128 },

    #[error("unsupported degree {0}; only 3 and 4 are handled")]
    UnsupportedDegree(u32),

    #[error("table for height {height} needs {required} bytes, over the cap of {cap} bytes")]
    MemoryCap {
        height: u32,
        required: u64,
        cap: u64,
    },

    #[error("degenerate invariants: 4I^3 = J^2 for I = {i}, J = {j}")]
    DegenerateInvariants { i: i128, j: i128 },

    #[error("mixed degrees in fit input: {0} and {1}")]
    MixedDegrees(u32, u32),

    #[error("journal does not match request: {0}")]
    JournalMismatch(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
