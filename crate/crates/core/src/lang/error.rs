use thiserror::Error;

use crate::sexp::SexpError;

/// Sort-discipline violations. Each variant names the offending subterm.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SortError {
    #[error("unknown symbol `{symbol}` in {subterm}")]
    UnknownSymbol { symbol: String, subterm: String },
    #[error("unknown sort `{sort}`")]
    UnknownSort { sort: String },
    #[error("symbol `{symbol}` is declared twice with different ranks")]
    DuplicateSymbol { symbol: String },
    #[error("`{symbol}` expects {expected} arguments, got {found} in {subterm}")]
    ArityMismatch { symbol: String, expected: usize, found: usize, subterm: String },
    #[error("sort mismatch in {subterm}: expected {expected}, found {found}")]
    SortMismatch { subterm: String, expected: String, found: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Sexp(#[from] SexpError),
    #[error(transparent)]
    Sort(#[from] SortError),
    #[error("malformed {what}: {found}")]
    Malformed { what: &'static str, found: String },
    #[error("cannot infer sort indices of `{symbol}` in {subterm}")]
    IndicesNotInferable { symbol: String, subterm: String },
}

impl ParseError {
    pub fn malformed(what: &'static str, found: impl ToString) -> Self {
        ParseError::Malformed { what, found: found.to_string() }
    }
}
