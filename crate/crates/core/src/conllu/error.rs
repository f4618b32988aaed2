use std::fmt;

use thiserror::Error;

/// Error codes reported by the CoNLL-U reader.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParseCode {
    Columns,
    Id,
    DuplicateId,
    Head,
    HeadRange,
    Feats,
    Mseg,
    Io,
}

impl ParseCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ParseCode::Columns => "E_COLUMNS",
            ParseCode::Id => "E_ID",
            ParseCode::DuplicateId => "E_DUP_ID",
            ParseCode::Head => "E_HEAD",
            ParseCode::HeadRange => "E_HEAD_RANGE",
            ParseCode::Feats => "E_FEATS",
            ParseCode::Mseg => "E_MSEG",
            ParseCode::Io => "E_IO",
        }
    }
}

impl fmt::Display for ParseCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A reader error. `line` is 1-based; 0 means the error was raised outside of
/// a file context (e.g. by [`parse_feats`](super::parse_feats) on a bare string).
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}: {code}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub code: ParseCode,
    pub message: String,
}

impl ParseError {
    pub fn new(code: ParseCode, message: impl Into<String>) -> Self {
        ParseError {
            line: 0,
            code,
            message: message.into(),
        }
    }

    pub fn at(mut self, line: usize) -> Self {
        self.line = line;
        self
    }
}

/// Structural problems found while building a dependency tree.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TreeError {
    #[error("E_ROOT_COUNT: expected exactly one root, found {0}")]
    RootCount(usize),
    #[error("E_CYCLE: tokens {0:?} form a cycle")]
    Cycle(Vec<usize>),
    #[error("E_HEAD_RANGE: token {id} has head {head} outside 0..={len}")]
    HeadOutOfRange { id: usize, head: usize, len: usize },
}

impl TreeError {
    pub fn code(&self) -> &'static str {
        match self {
            TreeError::RootCount(_) => "E_ROOT_COUNT",
            TreeError::Cycle(_) => "E_CYCLE",
            TreeError::HeadOutOfRange { .. } => "E_HEAD_RANGE",
        }
    }
}
