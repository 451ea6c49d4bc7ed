use thiserror::Error;

/// Errors raised by the library.
///
/// Verdict-style answers (a set does not tile, a candidate is not a
/// spectrum) are returned as values, never as errors. Errors are reserved
/// for malformed input, violated preconditions, and results that would
/// contradict a known theorem.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("operation undefined on the empty set")]
    EmptySet,

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },

    #[error("modulus must be positive")]
    ZeroModulus,

    #[error("residue {value} is out of range for modulus {modulus}")]
    ResidueOutOfRange { value: u64, modulus: u64 },

    #[error("elements collide modulo {modulus} (residue {residue})")]
    Collision { residue: u64, modulus: u64 },

    #[error("moduli {0:?} are not pairwise coprime")]
    NotCoprime(Vec<u64>),

    #[error("tuple has {got} components but {expected} moduli")]
    ArityMismatch { expected: usize, got: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{0} is not a prime power greater than one")]
    NotPrimePower(u64),

    #[error("cardinality {0} is not a power of a prime")]
    NotPrimePowerCardinality(usize),

    #[error("set contains powers of {0} distinct primes, at most two are supported")]
    TooManyPrimes(usize),

    #[error("lcm {lcm} exceeds the configured bound {bound}")]
    BoundExceeded { lcm: u64, bound: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed digit tree: {0}")]
    MalformedTree(String),

    #[error("invalid construction parameters: {0}")]
    Params(String),

    #[error("set does not have the Coven-Meyerowitz property: {0}")]
    NotCm(String),

    /// A computed object contradicts a theorem the library relies on. This
    /// is either a library bug or a counterexample and must never be
    /// silenced.
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse { position, message: message.into() }
    }
}
