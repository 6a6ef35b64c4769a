use thiserror::Error;

/// Errors raised by the automata, formula and abstraction layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: String, right: String },
    #[error("symbol `{0}` is not in the alphabet")]
    UnknownSymbol(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("malformed automaton: {0}")]
    Malformed(String),
    #[error("language is not prefix-closed")]
    NotPrefixClosed,
    #[error("formula is not in the required normal form: {0}")]
    NotNormalForm(String),
    #[error("lasso cycle must be non-empty")]
    EmptyCycle,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("property automata are not complementary on lasso {0}")]
    NotComplementary(String),
    #[error("{line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
