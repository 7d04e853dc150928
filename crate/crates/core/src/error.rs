use thiserror::Error;

use crate::word::Word;

/// Errors raised by the symbolic and numeric layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("word `{0}` is not in H^1 (it must be empty or start with y)")]
    NotInH1(Word),
    #[error("word `{0}` does not end with x")]
    NotEndingInX(Word),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series caps mismatch: {left} vs {right}")]
    CapsMismatch { left: String, right: String },
    #[error("coefficient u^{m} v^{n} lies outside caps (max_u = {max_u}, max_v = {max_v})")]
    BeyondCaps { m: usize, n: usize, max_u: usize, max_v: usize },
    #[error("geometric series needs a zero constant term")]
    NonzeroConstantTerm,
    #[error("{a} is not invertible modulo {p}^{depth}")]
    NotInvertible { a: String, p: u64, depth: u32 },
    #[error("configuration error: {0}")]
    Config(String),
    #[error("cache I/O error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
