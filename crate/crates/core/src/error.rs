use thiserror::Error;

/// Errors raised by word, morphism and search operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet size {0} is not supported (expected 1..={max})", max = crate::word::MAX_ALPHABET)]
    AlphabetSize(usize),
    #[error("symbol {symbol} is outside the alphabet of size {alphabet}")]
    SymbolOutOfRange { symbol: u8, alphabet: u8 },
    #[error("alphabet mismatch: expected size {expected}, found {found}")]
    AlphabetMismatch { expected: u8, found: u8 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
