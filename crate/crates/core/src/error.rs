use std::io;

use crate::corpus::SentimentLabel;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),

    #[error("corpus contains no valid tweets")]
    EmptyCorpus,

    #[error("configuration error: {0}")]
    Config(String),

    /// Text handed to the tokenizer was not case-folded.
    #[error("tokenizer precondition violated: unexpected character {ch:?} at byte {offset}")]
    Contract { ch: char, offset: usize },

    #[error("invalid token {0:?}: tokens must be non-empty lowercase ASCII letters")]
    InvalidToken(String),

    #[error("training error: {0}")]
    Training(String),

    #[error("degenerate training set: need at least two labels with documents, found {0}")]
    DegenerateTraining(usize),

    #[error("label {0} is not part of the model")]
    UnknownLabel(SentimentLabel),

    #[error("malformed model file: {0}")]
    Model(String),

    #[error("split error: {0}")]
    Split(String),

    #[error("fold error: {0}")]
    Fold(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
