//! Line-oriented resource files: one entry per line, `#` starts a comment
//! line, surrounding whitespace is trimmed and blank lines are skipped.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::preprocess::{PosTag, Token};

/// Yields `(line_number, entry)` for every non-comment, non-blank line.
pub fn entries(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i + 1, line.trim()))
        .filter(|(_, line)| !line.is_empty() && !line.starts_with('#'))
}

pub fn parse_word_set(text: &str) -> BTreeSet<String> {
    entries(text).map(|(_, e)| e.to_lowercase()).collect()
}

/// Parses a word list whose entries must all be valid tokens.
pub fn parse_token_set(text: &str) -> Result<BTreeSet<Token>> {
    entries(text)
        .map(|(line, e)| {
            Token::new(e.to_lowercase()).map_err(|err| Error::Parse {
                line,
                message: err.to_string(),
            })
        })
        .collect()
}

/// Parses `word<TAB>TAG` lines.
pub fn parse_pos_lexicon(text: &str) -> Result<BTreeMap<Token, PosTag>> {
    let mut lexicon = BTreeMap::new();
    for (line, entry) in entries(text) {
        let mut parts = entry.split('\t');
        let (Some(word), Some(tag), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse {
                line,
                message: format!("expected word<TAB>TAG, got {entry:?}"),
            });
        };
        let token = Token::new(word.trim().to_lowercase()).map_err(|err| Error::Parse {
            line,
            message: err.to_string(),
        })?;
        let tag = tag.trim().parse::<PosTag>().map_err(|message| Error::Parse { line, message })?;
        lexicon.insert(token, tag);
    }
    Ok(lexicon)
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| {
        Error::Io(std::io::Error::new(
            e.kind(),
            format!("{}: {e}", path.display()),
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let text = "# header\n\nyang  \n  dan\n#tail\n";
        let words: Vec<_> = entries(text).collect();
        assert_eq!(words, vec![(3, "yang"), (4, "dan")]);
    }

    #[test]
    fn pos_lexicon_rejects_unknown_tag() {
        let err = parse_pos_lexicon("bagus\tADJ\nbaik\tPRON\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
    }

    #[test]
    fn token_set_rejects_non_letters() {
        assert!(parse_token_set("yang\nd4n\n").is_err());
        assert_eq!(parse_token_set("Yang\n").unwrap().len(), 1);
    }
}
