use thiserror::Error;

/// Which line of a Cayley table broke the Latin property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Line {
    Row(usize),
    Col(usize),
}

impl std::fmt::Display for Line {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Line::Row(i) => write!(f, "row {i}"),
            Line::Col(i) => write!(f, "column {i}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LoopError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("element {value} out of range for order {order}")]
    OutOfRange { value: usize, order: usize },
    #[error("not a Latin square: {line} repeats element {duplicate}")]
    NotLatin { line: Line, duplicate: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("claimed identity {claimed} is wrong (actual: {actual:?})")]
    WrongIdentity {
        claimed: usize,
        actual: Option<usize>,
    },
    #[error("map is not a bijection: {value} is hit twice")]
    NotBijection { value: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown symbol {symbol:?} at position {position}")]
    UnknownSymbol { position: usize, symbol: char },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::UnknownSymbol { position, .. } => {
                *position
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("unbound variable {0:?}")]
    UnboundVariable(String),
    #[error("identity has {0} variables; at most 8 are supported")]
    TooManyVariables(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropertyError {
    #[error("unknown property {0:?}")]
    UnknownProperty(String),
    #[error("map does not fix the identity element (e -> {image})")]
    NotUnital { image: usize },
    #[error("universality methods disagree on {property}: identity={identity}, bruteforce={bruteforce}")]
    MethodDisagreement {
        property: String,
        identity: bool,
        bruteforce: bool,
    },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("order {order} is outside the supported range 1..={max} for this mode")]
    OrderTooLarge { order: usize, max: usize },
    #[error("property {0:?} is both required and forbidden")]
    Conflict(String),
    #[error(transparent)]
    Property(#[from] PropertyError),
}

#[derive(Debug, Error)]
pub enum LoopFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("loop {name:?} (line {line}): {source}")]
    Invalid {
        name: String,
        line: usize,
        #[source]
        source: LoopError,
    },
    #[error("line {line}: duplicate loop name {name:?}")]
    Duplicate { name: String, line: usize },
}
