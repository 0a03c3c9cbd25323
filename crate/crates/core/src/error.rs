use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("no modulus configured for q = {0}; supply one explicitly")]
    MissingModulus(u32),
    #[error("invalid modulus for q = {q}: {reason}")]
    BadModulus { q: u32, reason: String },
    #[error("field order {0} is outside the supported range 2..=256")]
    OrderOutOfRange(u32),
    #[error("label {label} out of range for GF({q})")]
    LabelOutOfRange { label: i64, q: u32 },
    #[error("all-zero coordinate tuple does not represent a line")]
    ZeroTuple,
    #[error("tuple {0} violates the Klein quadric relation")]
    QuadricViolation(String),
    #[error("line index {index} out of range (table has {len} lines)")]
    IndexOutOfRange { index: u64, len: u64 },
    #[error("seed lines {a} and {b} meet")]
    SeedLinesMeet { a: String, b: String },
    #[error("start line {0} meets a seed line")]
    StartMeetsSeed(u64),
    #[error("candidate set is empty")]
    EmptyCandidates,
    #[error("record has {size} lines; a spread of PG(3,{q}) needs {expected}")]
    SizeMismatch {
        size: usize,
        q: u32,
        expected: usize,
    },
    #[error("brute-force oracle supports q in {{2, 3}}, got {0}")]
    OracleUnsupported(u32),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
