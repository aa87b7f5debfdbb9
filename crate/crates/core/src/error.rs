use thiserror::Error;

/// Errors raised by field arithmetic, code construction and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NonPrime(u32),
    #[error("field order {p}^{k} is outside the supported range 2..=16")]
    UnsupportedOrder { p: u32, k: u32 },
    #[error("no built-in modulus for GF({p}^{k}); supply one explicitly")]
    NoDefaultModulus { p: u32, k: u32 },
    #[error("modulus must be monic of degree {k} with coefficients below {p}")]
    MalformedModulus { p: u32, k: u32 },
    #[error("modulus is reducible over GF({p})")]
    ReducibleModulus { p: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("symbol {symbol} is not an element of a field of order {q}")]
    SymbolOutOfRange { symbol: u32, q: u32 },
    #[error("permutation table is not a bijection on the field")]
    NotABijection,
    #[error("expected length {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coordinate {coordinate} outside 1..={n}")]
    InvalidCoordinate { coordinate: usize, n: usize },
    #[error("point index {index} outside 1..={points}")]
    InvalidPoint { index: usize, points: usize },
    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(&'static str),
    #[error("the zero vector has no projective point")]
    ZeroVector,
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("code is not 1-perfect: {0}")]
    NotPerfect(String),
    #[error("{what} needs {requested}, above the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        cap: u128,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("switching blocks {0} and {1} overlap")]
    OverlappingBlocks(usize, usize),
    #[error("block {0} is not a component of the code at its coordinate")]
    NotAComponent(usize),
    #[error("components {r} and {s} of the family intersect")]
    NotAdmissible { r: usize, s: usize },
    #[error("permutation for coordinate {0} fixes the element 1")]
    SigmaFixesOne(usize),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("sampling budget of {0} draws exhausted")]
    BudgetExhausted(u64),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for refusals caused by a size cap rather than by bad input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}
