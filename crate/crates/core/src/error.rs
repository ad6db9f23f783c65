use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("hypercomplex sign mismatch: {0} vs {1}")]
    SignMismatch(i8, i8),
    #[error("zero divisor: {0} has vanishing modulus")]
    ZeroDivisor(String),
    /// The requested value exists only outside the rationals.
    #[error("{0} is not representable in exact mode; retry with --float")]
    NotRational(String),
    #[error("group element must have positive determinant, got {0}")]
    NonPositiveDeterminant(String),
    #[error("cycle is not reducible to a K-orbit: {0}")]
    NotAKOrbit(String),
    #[error("matrix does not have FSCc shape: {0}")]
    Shape(String),
    #[error("a line (k = 0) has no radius")]
    LineHasNoRadius,
    #[error("focus undefined: {0}")]
    FocusUndefined(String),
    #[error("cycle does not meet the real axis")]
    NoRealAxisIntersection,
    #[error("quadruple has no equation (every point satisfies it)")]
    EverywhereZero,
    #[error("degenerate: {0}")]
    Degenerate(String),
    #[error("constraint system is under-determined")]
    UnderDetermined,
    #[error("constraint system is inconsistent: {0}")]
    Inconsistent(String),
    #[error("unsupported constraint system: {0}")]
    Unsupported(String),
    #[error("degenerate reflection: {0}")]
    DegenerateReflection(String),
    #[error("focal point on the real axis: every focal cycle has zero radius")]
    DegenerateFocalPoint,
    #[error("length branch disappears near epsilon = 0")]
    BranchInstability,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o: {0}")]
    Io(String),
}

impl Error {
    /// Errors originating in the geometry rather than in the caller's input format.
    pub fn is_domain(&self) -> bool {
        !matches!(self, Error::Usage(_) | Error::Parse(_) | Error::SignMismatch(..) | Error::Io(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
