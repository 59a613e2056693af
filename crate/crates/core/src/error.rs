use thiserror::Error;

use crate::term::Mode;

/// Errors produced anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unknown character {ch:?} at byte {offset}")]
    UnknownChar { offset: usize, ch: char },

    #[error("mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("regex is outside the parallel fragment: {0}")]
    Fragment(String),

    #[error("grammar is not parallel-linear: {0}")]
    NotParallelLinear(String),

    #[error("undeclared symbol {symbol:?} on line {line}")]
    UndeclaredSymbol { symbol: String, line: usize },

    #[error("invalid grammar: {0}")]
    Grammar(String),

    #[error("invalid automaton: {0}")]
    Automaton(String),

    #[error("enumeration exceeded the cardinality cap of {cap}")]
    CapExceeded { cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn syntax(offset: usize, message: impl Into<String>) -> Self {
        Error::Syntax {
            offset,
            message: message.into(),
        }
    }

    /// Automaton error; `line` 0 means the automaton as a whole.
    pub(crate) fn automaton(line: usize, message: impl Into<String>) -> Self {
        let message = message.into();
        if line == 0 {
            Error::Automaton(message)
        } else {
            Error::Automaton(format!("line {line}: {message}"))
        }
    }
}
