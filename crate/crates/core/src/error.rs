use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("scalar or polynomial belongs to a different field")]
    FieldMismatch,
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("factorization over Q is capped at degree {cap}, got degree {degree}")]
    UnsupportedFactorization { degree: usize, cap: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("no radical method applies: {0}")]
    UnsupportedCharacteristic(String),
    #[error("invalid group table at {location}: {reason}")]
    InvalidGroupTable { location: String, reason: String },
    #[error("2-cocycle identity fails at (g,h,k) = {triple:?} ({location})")]
    InvalidCocycle {
        triple: (usize, usize, usize),
        location: String,
    },
    #[error("element has no finite multiplicative order within the search bound {bound}")]
    NotTorsion { bound: u64 },
    #[error("g - alpha is not a unit for the requested shift")]
    ShiftNotUnit,
    #[error("field exhausted: requested {requested} valid shifts, only {found} exist")]
    ExhaustedField { requested: usize, found: usize },
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("elements do not commute")]
    NotCommuting,
    #[error("operation requires a finite base field")]
    RequiresFiniteField,
    #[error("operation requires an infinite base field")]
    RequiresInfiniteField,
    #[error("enumeration needs {required} elements, above the cap {cap}")]
    EnumerationTooLarge { required: u128, cap: u128 },
    #[error("the Lie commutator is zero")]
    ZeroCommutator,
    #[error("the pair commutes, no conjugate witnesses exist")]
    CommutingPair,
    #[error("sandwich bounds differ, the FC-subalgebra is not determined")]
    InconclusiveSandwich,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("unknown element '{0}'")]
    UnknownElement(String),
    #[error("storage error: {0}")]
    Storage(String),
}

impl Error {
    /// Errors caused by malformed input rather than a mathematical negative.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidField(_)
                | Error::InvalidAlgebra(_)
                | Error::InvalidGroupTable { .. }
                | Error::InvalidCocycle { .. }
                | Error::Parse(_)
                | Error::Schema { .. }
                | Error::UnknownElement(_)
                | Error::Storage(_)
        )
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidField(_) => "InvalidField",
            Error::FieldMismatch => "FieldMismatch",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::InvalidPolynomial(_) => "InvalidPolynomial",
            Error::UnsupportedFactorization { .. } => "UnsupportedFactorization",
            Error::InvalidAlgebra(_) => "InvalidAlgebra",
            Error::NotAUnit => "NotAUnit",
            Error::NotAnIdeal(_) => "NotAnIdeal",
            Error::UnsupportedCharacteristic(_) => "UnsupportedCharacteristic",
            Error::InvalidGroupTable { .. } => "InvalidGroupTable",
            Error::InvalidCocycle { .. } => "InvalidCocycle",
            Error::NotTorsion { .. } => "NotTorsion",
            Error::ShiftNotUnit => "ShiftNotUnit",
            Error::ExhaustedField { .. } => "ExhaustedField",
            Error::NotNilpotent => "NotNilpotent",
            Error::NotCommuting => "NotCommuting",
            Error::RequiresFiniteField => "RequiresFiniteField",
            Error::RequiresInfiniteField => "RequiresInfiniteField",
            Error::EnumerationTooLarge { .. } => "EnumerationTooLarge",
            Error::ZeroCommutator => "ZeroCommutator",
            Error::CommutingPair => "CommutingPair",
            Error::InconclusiveSandwich => "InconclusiveSandwich",
            Error::Parse(_) => "ParseError",
            Error::Schema { .. } => "SchemaError",
            Error::UnknownElement(_) => "UnknownElement",
            Error::Storage(_) => "StorageError",
        }
    }
}
