use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::preprocess::Token;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PosTag {
    Noun,
    Verb,
    Adj,
    Adv,
    /// Closed-class function word.
    Func,
    Other,
}

impl PosTag {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Noun => "NOUN",
            Self::Verb => "VERB",
            Self::Adj => "ADJ",
            Self::Adv => "ADV",
            Self::Func => "FUNC",
            Self::Other => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "NOUN" => Ok(Self::Noun),
            "VERB" => Ok(Self::Verb),
            "ADJ" => Ok(Self::Adj),
            "ADV" => Ok(Self::Adv),
            "FUNC" => Ok(Self::Func),
            "OTHER" => Ok(Self::Other),
            other => Err(format!("unknown POS tag {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PosTaggedToken {
    pub token: Token,
    pub tag: PosTag,
}

/// Exact lexicon lookup; unknown words are `OTHER`.
pub fn pos_tag(tokens: Vec<Token>, lexicon: &BTreeMap<Token, PosTag>) -> Vec<PosTaggedToken> {
    tokens
        .into_iter()
        .map(|token| {
            let tag = lexicon.get(&token).copied().unwrap_or(PosTag::Other);
            PosTaggedToken { token, tag }
        })
        .collect()
}
