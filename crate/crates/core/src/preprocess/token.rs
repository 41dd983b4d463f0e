use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::corpus::SentimentLabel;
use crate::error::{Error, Result};

/// A unigram feature: a non-empty run of lowercase ASCII letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Token(String);

impl Token {
    pub fn new(surface: impl Into<String>) -> Result<Self> {
        let surface = surface.into();
        if Self::is_valid(&surface) {
            Ok(Self(surface))
        } else {
            Err(Error::InvalidToken(surface))
        }
    }

    pub fn is_valid(surface: &str) -> bool {
        !surface.is_empty() && surface.bytes().all(|b| b.is_ascii_lowercase())
    }

    /// Caller guarantees validity.
    pub(crate) fn new_unchecked(surface: String) -> Self {
        debug_assert!(Self::is_valid(&surface), "{surface:?}");
        Self(surface)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for Token {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl From<Token> for String {
    fn from(t: Token) -> Self {
        t.0
    }
}

impl AsRef<str> for Token {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A preprocessed tweet: ordered tokens plus an optional label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub source_id: String,
    pub tokens: Vec<Token>,
    pub label: Option<SentimentLabel>,
}

impl Document {
    pub fn new(source_id: impl Into<String>, tokens: Vec<Token>, label: Option<SentimentLabel>) -> Self {
        Self {
            source_id: source_id.into(),
            tokens,
            label,
        }
    }

    /// Builds a document from raw words, validating each one.
    pub fn from_words<I, S>(source_id: impl Into<String>, words: I, label: Option<SentimentLabel>) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let tokens = words.into_iter().map(Token::new).collect::<Result<_>>()?;
        Ok(Self::new(source_id, tokens, label))
    }

    /// Empty documents are excluded from training.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

pub fn remove_stopwords(tokens: Vec<Token>, stopwords: &BTreeSet<Token>) -> Vec<Token> {
    tokens.into_iter().filter(|t| !stopwords.contains(t)).collect()
}
