use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),
    #[error("unrecognised field `{0}` (expected Q or F<p>)")]
    BadField(String),
    #[error("malformed scalar `{0}`")]
    BadScalar(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: unknown vertex `{name}`")]
    UnknownVertex { line: usize, name: String },
    #[error("line {line}: unknown arrow `{name}`")]
    UnknownArrow { line: usize, name: String },
    #[error("line {line}: duplicate label `{name}`")]
    DuplicateLabel { line: usize, name: String },
    #[error("line {line}: path `{path}` is not composable")]
    NotComposable { line: usize, path: String },
    #[error("line {line}: relation is not length-homogeneous ({msg})")]
    NonHomogeneous { line: usize, msg: String },
    #[error("line {line}: relation terms are not parallel ({msg})")]
    NonParallel { line: usize, msg: String },
    #[error("quotient algebra still has nonzero paths of length {bound}; infinite-dimensional or bound too small")]
    InfiniteDimensional { bound: usize },

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("index {index} does not name a primitive idempotent (there are {count})")]
    BadIdempotent { index: usize, count: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("presentation is not monomial")]
    NonMonomial,
    #[error("malformed algebra: {0}")]
    MalformedAlgebra(String),

    #[error("invalid periodicity certificate: {0}")]
    InvalidCertificate(String),
    #[error("algebra is not Gorenstein within injective-dimension bound {bound}")]
    NotGorenstein { bound: usize },
    #[error("no periodicity certificate with n <= {n_max}, p <= {p_max}")]
    NoCertificate { n_max: usize, p_max: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("bad algebra dump: {0}")]
    BadDump(String),
}
