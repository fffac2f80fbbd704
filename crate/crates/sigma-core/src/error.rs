use thiserror::Error;

/// Errors raised by the library. Every message starts with the module that raised it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("words: syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },

    #[error("words: unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("words: empty generator list")]
    EmptyGenerators,

    #[error("{module}: dimension mismatch (expected {expected}, got {got})")]
    Dimension {
        module: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("characters: pullback is the zero character, so it defines no point of the sphere")]
    ZeroPullback,

    #[error("{module}: invalid input: {message}")]
    Input {
        module: &'static str,
        message: String,
    },

    #[error("{module}: precondition violated: {message}")]
    Precondition {
        module: &'static str,
        message: String,
    },

    #[error("regions: unsupported combination: {0}")]
    Unsupported(String),

    #[error("{module}: integer overflow while {context}")]
    Overflow {
        module: &'static str,
        context: String,
    },
}

impl Error {
    pub fn input(module: &'static str, message: impl Into<String>) -> Self {
        Error::Input {
            module,
            message: message.into(),
        }
    }

    pub fn precondition(module: &'static str, message: impl Into<String>) -> Self {
        Error::Precondition {
            module,
            message: message.into(),
        }
    }

    pub fn overflow(module: &'static str, context: impl Into<String>) -> Self {
        Error::Overflow {
            module,
            context: context.into(),
        }
    }

    /// True for malformed input (as opposed to well-formed input violating a
    /// mathematical precondition).
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownGenerator(_)
                | Error::EmptyGenerators
                | Error::Dimension { .. }
                | Error::Input { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
