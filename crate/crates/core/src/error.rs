use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is empty ({rows} rows, {cols} columns)")]
    EmptyMatrix { rows: usize, cols: usize },

    #[error("row {row} has {len} entries, expected {expected}")]
    RaggedRows {
        row: usize,
        len: usize,
        expected: usize,
    },

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { got: usize, expected: usize },

    #[error("index {index} out of range for {len} columns")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("columns {columns:?} do not form a basis set (need {rank} independent columns)")]
    NotABasis { columns: Vec<usize>, rank: usize },

    #[error("columns {columns:?} do not form a circuit set")]
    NotACircuit { columns: Vec<usize> },

    #[error("target column {0} is one of the basis columns")]
    TargetInBasis(usize),

    #[error("vector is not in the kernel of the dimensional matrix")]
    NotInKernel,

    #[error("exponent vector is not primitive (gcd of entries must be 1)")]
    NotPrimitive,

    #[error("dimension system must name at least one dimension")]
    NoDimensions,

    #[error("duplicate dimension name `{0}`")]
    DuplicateDimension(String),

    #[error("duplicate quantity name `{0}`")]
    DuplicateQuantity(String),

    #[error("invalid {kind} name `{name}`")]
    InvalidName { kind: &'static str, name: String },

    #[error("quantity `{name}` has {got} dimension exponents, expected {expected}")]
    DimsMismatch {
        name: String,
        got: usize,
        expected: usize,
    },

    #[error("at least one quantity is required")]
    NoQuantities,

    #[error("value for quantity {index} must be strictly positive and finite, got {value}")]
    NonPositiveValue { index: usize, value: f64 },

    #[error("dependent quantity {0} is also listed as excluded")]
    DependentExcluded(usize),

    #[error("basis set contains quantity {0}, which is barred from it")]
    BarredFromBasis(usize),

    #[error("brute-force bound must be at least 1")]
    InvalidBound,

    #[error("matrix entry does not fit in a 64-bit integer")]
    Overflow,

    #[error("{n} quantities exceed the configured limit of {max}")]
    SizeCap { n: usize, max: usize },

    #[error("{}", fmt_parse(*.line, .field, .message))]
    Parse {
        line: Option<usize>,
        field: String,
        message: String,
    },
}

fn fmt_parse(line: Option<usize>, field: &str, message: &str) -> String {
    match (line, field.is_empty()) {
        (Some(l), false) => format!("line {l}, `{field}`: {message}"),
        (Some(l), true) => format!("line {l}: {message}"),
        (None, false) => format!("`{field}`: {message}"),
        (None, true) => message.to_string(),
    }
}
