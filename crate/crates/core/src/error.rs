use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: malformed header: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("line {line}: clause data before the `p cnf` header")]
    MissingHeader { line: usize },
    #[error("line {line}: invalid token `{token}`")]
    InvalidToken { line: usize, token: String },
    #[error("line {line}: clause of width {width}; only 1- and 2-clauses are supported")]
    ClauseTooWide { line: usize, width: usize },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
    #[error("line {line}: clause contains a literal and its negation")]
    TautologicalClause { line: usize },
    #[error("literal {literal} out of range for {num_vars} variables")]
    LiteralOutOfRange { literal: i64, num_vars: usize },
    #[error("assignment covers {got} variables, formula has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("variable {variable} is constrained both true and false")]
    OverlappingConstraints { variable: usize },
    #[error("unknown poset element {0}")]
    UnknownElement(usize),
    #[error("element {0} is not a don't-care position of the row")]
    NotATwo(usize),
    #[error("variable {variable} shares a strong component with its negation")]
    Unsatisfiable { variable: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{num_vars} variables exceed the brute-force limit of {max}")]
    TooManyVariables { num_vars: usize, max: usize },
}

impl Error {
    /// Whether the error stems from reading malformed input text.
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedHeader { .. }
                | Error::MissingHeader { .. }
                | Error::InvalidToken { .. }
                | Error::ClauseTooWide { .. }
                | Error::EmptyClause { .. }
                | Error::TautologicalClause { .. }
                | Error::LiteralOutOfRange { .. }
        )
    }
}
