use thiserror::Error;

/// Errors raised while building or analysing a complex.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("modulus {n1} is not coprime to 2 and the primes {primes:?}")]
    InvalidModulus { n1: u64, primes: Vec<u64> },

    #[error("prime {p}: found {found} normalized generators, expected {expected}")]
    GeneratorCount { p: u64, found: usize, expected: usize },

    #[error("rewrite found no match for {0}")]
    RewriteNoMatch(String),

    #[error("rewrite found more than one match for {0}")]
    RewriteNotUnique(String),

    #[error("N1 = {n1} too small or action not free: {axiom} fails")]
    NotFree { n1: u64, axiom: String },

    #[error("no valid N1 below {0}")]
    NoValidModulus(u64),

    #[error("central condition fails: k = {k} is odd and -1 lies in the subgroup generated by the primes mod {modulus}")]
    CentralCondition { k: u32, modulus: u64 },

    #[error("parities are required for {0}")]
    MissingParities(&'static str),

    #[error("direction {j} is not admissible for I = {i:#b}")]
    BadDirection { j: usize, i: usize },

    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),

    #[error("dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code: 2 for configuration errors, 3 for construction
    /// failures, 5 for internal errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) | Error::Json(_) | Error::NotOddPrime(_) | Error::InvalidModulus { .. } => 2,
            Error::GeneratorCount { .. }
            | Error::RewriteNoMatch(_)
            | Error::RewriteNotUnique(_)
            | Error::NotFree { .. }
            | Error::NoValidModulus(_)
            | Error::CentralCondition { .. }
            | Error::MissingParities(_) => 3,
            Error::BadDirection { .. } | Error::NotHermitian(_) | Error::DimensionCap { .. } | Error::Io(_) => 5,
        }
    }
}
