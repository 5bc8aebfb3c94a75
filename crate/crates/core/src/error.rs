use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol {symbol} at index {index} is outside the alphabet of size {alphabet}")]
    SymbolOutOfRange {
        symbol: u8,
        index: usize,
        alphabet: u8,
    },

    #[error("alphabet size {0} is not supported (expected 1..=255, or 1..=10 for digit text)")]
    BadAlphabet(usize),

    #[error("alphabet mismatch: expected size {expected}, found {found}")]
    AlphabetMismatch { expected: u8, found: u8 },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("morphism is not uniform")]
    NonUniform,

    #[error("morphism is not injective on letters: images of {0} and {1} coincide")]
    NonInjective(u8, u8),

    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(u8),

    #[error("image language has {count} words, above the enumeration cap of {cap}")]
    EnumerationCap { count: String, cap: u64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("unknown registry entry `{0}`")]
    UnknownEntry(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
