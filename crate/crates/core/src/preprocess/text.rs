use crate::corpus::{NEGATIVE_EMOTICON, POSITIVE_EMOTICON};
use crate::error::{Error, Result};
use crate::preprocess::Token;

/// Strips noise from raw tweet text.
///
/// Rules, in order: URLs (`http://`, `https://` or `www.` up to the next
/// whitespace), `@` mentions (up to the next whitespace), leading `RT`
/// tokens, `#` characters (the tag word stays), the emoticons `:)` and
/// `:(`; then whitespace runs collapse to one space and the result is
/// trimmed. The rule pass repeats until the text stops changing, so the
/// function is idempotent.
pub fn cleanse(text: &str) -> String {
    let mut current = cleanse_pass(text);
    loop {
        let next = cleanse_pass(&current);
        if next == current {
            return current;
        }
        current = next;
    }
}

fn cleanse_pass(text: &str) -> String {
    let is_url = |w: &str| w.starts_with("http://") || w.starts_with("https://") || w.starts_with("www.");
    let no_links = drop_words(text, |w| is_url(w) || w.starts_with('@'));

    let mut words = no_links.split_whitespace().peekable();
    while words.next_if_eq(&"RT").is_some() {}
    let no_rt = words.collect::<Vec<_>>().join(" ");

    let mut s = no_rt.replace('#', "");
    while s.contains(POSITIVE_EMOTICON) || s.contains(NEGATIVE_EMOTICON) {
        s = s.replace(POSITIVE_EMOTICON, " ").replace(NEGATIVE_EMOTICON, " ");
    }
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Removes whitespace-delimited words matching `pred`, keeping all other
/// text (including its whitespace) untouched.
fn drop_words(text: &str, pred: impl Fn(&str) -> bool) -> String {
    let mut out = String::with_capacity(text.len());
    let mut rest = text;
    while !rest.is_empty() {
        let ws_end = rest.find(|c: char| !c.is_whitespace()).unwrap_or(rest.len());
        out.push_str(&rest[..ws_end]);
        rest = &rest[ws_end..];
        let word_end = rest.find(char::is_whitespace).unwrap_or(rest.len());
        let word = &rest[..word_end];
        if !pred(word) {
            out.push_str(word);
        }
        rest = &rest[word_end..];
    }
    out
}

/// Lowercases ASCII letters and turns every other non-space character into
/// a delimiter. Only `a`..`z` survive; non-ASCII letters are delimiters too.
pub fn case_fold(text: &str) -> String {
    let mapped: String = text
        .chars()
        .map(|c| if c.is_ascii_alphabetic() { c.to_ascii_lowercase() } else { ' ' })
        .collect();
    mapped.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Splits case-folded text on spaces.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    if let Some((offset, ch)) = text
        .char_indices()
        .find(|&(_, c)| !(c.is_ascii_lowercase() || c == ' '))
    {
        return Err(Error::Contract { ch, offset });
    }
    Ok(text
        .split(' ')
        .filter(|w| !w.is_empty())
        .map(|w| Token::new_unchecked(w.to_owned()))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cleanse_examples() {
        assert_eq!(
            cleanse("RT @user: Ridwan Kamil mantap http://t.co/x :)"),
            "Ridwan Kamil mantap"
        );
        assert_eq!(cleanse("#pilgubjabar seru"), "pilgubjabar seru");
        assert_eq!(cleanse(""), "");
    }

    #[test]
    fn cleanse_edge_cases() {
        assert_eq!(cleanse("RT RT ok"), "ok");
        assert_eq!(cleanse("ok RT"), "ok RT");
        assert_eq!(cleanse("a ::)) b"), "a : ) b");
        assert_eq!(cleanse("bagus:)keren"), "bagus keren");
        assert_eq!(cleanse("lihat www.contoh.com\tdan https://x.y/z"), "lihat dan");
        assert_eq!(cleanse("R:)T x"), "R T x");
    }

    #[test]
    fn case_fold_examples() {
        assert_eq!(case_fold("JABAR"), "jabar");
        assert_eq!(case_fold("Jabar2018, siap!"), "jabar siap");
        assert_eq!(case_fold("sudah kecil"), "sudah kecil");
        assert_eq!(case_fold("café\tbaru"), "caf baru");
    }

    #[test]
    fn tokenize_examples() {
        let words = |v: Vec<Token>| v.into_iter().map(String::from).collect::<Vec<_>>();
        assert_eq!(words(tokenize("calon gubernur").unwrap()), vec!["calon", "gubernur"]);
        assert!(tokenize("").unwrap().is_empty());
        assert_eq!(words(tokenize("a  b").unwrap()), vec!["a", "b"]);
    }

    #[test]
    fn tokenize_rejects_unfolded_text() {
        let err = tokenize("ok Bad").unwrap_err();
        assert!(matches!(err, Error::Contract { ch: 'B', offset: 3 }), "{err}");
    }
}
