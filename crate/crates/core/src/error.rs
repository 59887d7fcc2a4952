use thiserror::Error;

use crate::graded::TailSide;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index ({p}, {q}) out of range for a table of dimension {n}")]
    IndexOutOfRange { p: i64, q: i64, n: usize },

    #[error("cell ({p}, {q}) has no declared {side} tail, needed at m = {m}")]
    UndeclaredTail {
        p: usize,
        q: usize,
        side: TailSide,
        m: i64,
    },

    #[error("tail polynomial of cell ({p}, {q}) evaluates to {value} at m = {m}")]
    CorruptTail {
        p: usize,
        q: usize,
        m: i64,
        value: String,
    },

    #[error("Lefschetz block ({p}, {q}) has shape {rows}x{cols}, expected {exp_rows}x{exp_cols}")]
    ShapeMismatch {
        p: usize,
        q: usize,
        rows: usize,
        cols: usize,
        exp_rows: usize,
        exp_cols: usize,
    },

    #[error("Lefschetz block ({p}, {q}) between nonzero spaces is missing; criterion is indeterminate")]
    IndeterminateLefschetz { p: usize, q: usize },

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("invalid catalog spec: {0}")]
    InvalidSpec(String),

    #[error("{path}: {message}")]
    Schema { path: String, message: String },

    #[error("malformed JSON: {0}")]
    Json(String),

    #[error("oracle budget exceeded: {0}")]
    Budget(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("classical cone requested but {0}")]
    Classical(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}
