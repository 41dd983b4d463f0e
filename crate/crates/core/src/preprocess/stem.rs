//! Dictionary-checked confix stripping for Indonesian.
//!
//! Order of attempts for a word `w` not already in the root dictionary:
//!
//! 1. inflectional particle (`-lah`, `-kah`, `-tah`, `-pun`), then possessive
//!    pronoun (`-ku`, `-mu`, `-nya`), checking the dictionary after each;
//! 2. derivational suffix (`-kan` then `-an`, or `-i`), checking the
//!    dictionary for each variant;
//! 3. derivational prefixes, up to three deep, tried on the most stripped
//!    base first and then on each less stripped base (backtracking). Nasal
//!    prefixes recode the root-initial consonant (`meny+s`, `men+t`,
//!    `mem+p`, `meng+k`, same for `pe-`). Disallowed prefix/suffix pairs
//!    (`be-i`, `di-an`, `ke-i`, `ke-kan`, `me-an`, `se-i`, `se-kan`,
//!    `te-an`) are skipped.
//!
//! The first candidate found in the dictionary is the stem; with no hit the
//! word is returned unchanged.

use std::collections::HashSet;

use crate::preprocess::Token;

const PARTICLES: [&str; 4] = ["lah", "kah", "tah", "pun"];
const POSSESSIVES: [&str; 3] = ["nya", "ku", "mu"];
const MAX_PREFIXES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Suffix {
    None,
    Kan,
    An,
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Prefix {
    Di,
    Ke,
    Se,
    Be,
    Te,
    Me,
    Pe,
}

fn disallowed(prefix: Prefix, suffix: Suffix) -> bool {
    matches!(
        (prefix, suffix),
        (Prefix::Be, Suffix::I)
            | (Prefix::Di, Suffix::An)
            | (Prefix::Ke, Suffix::I)
            | (Prefix::Ke, Suffix::Kan)
            | (Prefix::Me, Suffix::An)
            | (Prefix::Se, Suffix::I)
            | (Prefix::Se, Suffix::Kan)
            | (Prefix::Te, Suffix::An)
    )
}

fn is_vowel(b: u8) -> bool {
    matches!(b, b'a' | b'e' | b'i' | b'o' | b'u')
}

/// Root-word dictionary plus the stripping rules.
#[derive(Debug, Clone)]
pub struct Stemmer {
    roots: HashSet<String>,
}

impl Stemmer {
    pub fn new<I, S>(roots: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            roots: roots.into_iter().map(Into::into).collect(),
        }
    }

    pub fn is_root(&self, word: &str) -> bool {
        self.roots.contains(word)
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn stem(&self, token: &Token) -> Token {
        match self.stem_str(token.as_str()) {
            Some(root) => Token::new_unchecked(root),
            None => token.clone(),
        }
    }

    fn stem_str(&self, word: &str) -> Option<String> {
        if self.is_root(word) {
            return Some(word.to_owned());
        }

        // Suffix-stripped bases, least stripped first.
        let mut bases: Vec<(String, Suffix)> = vec![(word.to_owned(), Suffix::None)];
        let mut current = word.to_owned();
        for group in [&PARTICLES[..], &POSSESSIVES[..]] {
            if let Some(stripped) = strip_any_suffix(&current, group) {
                if self.is_root(&stripped) {
                    return Some(stripped);
                }
                bases.push((stripped.clone(), Suffix::None));
                current = stripped;
            }
        }
        for (stripped, kind) in derivational_variants(&current) {
            if self.is_root(&stripped) {
                return Some(stripped);
            }
            bases.push((stripped, kind));
        }

        bases
            .iter()
            .rev()
            .find_map(|(base, suffix)| self.strip_prefixes(base, *suffix, 0, None))
    }

    fn strip_prefixes(&self, word: &str, suffix: Suffix, depth: usize, previous: Option<Prefix>) -> Option<String> {
        if depth == MAX_PREFIXES {
            return None;
        }
        let candidates: Vec<(Prefix, String)> = prefix_candidates(word)
            .into_iter()
            .filter(|(p, c)| Some(*p) != previous && !disallowed(*p, suffix) && !c.is_empty())
            .collect();
        if let Some((_, hit)) = candidates.iter().find(|(_, c)| self.is_root(c)) {
            return Some(hit.clone());
        }
        candidates
            .iter()
            .find_map(|(p, c)| self.strip_prefixes(c, suffix, depth + 1, Some(*p)))
    }
}

fn strip_any_suffix(word: &str, suffixes: &[&str]) -> Option<String> {
    suffixes.iter().find_map(|s| {
        word.strip_suffix(s)
            .filter(|rest| !rest.is_empty())
            .map(str::to_owned)
    })
}

fn derivational_variants(word: &str) -> Vec<(String, Suffix)> {
    let mut out = Vec::new();
    if let Some(rest) = word.strip_suffix("kan").filter(|r| !r.is_empty()) {
        out.push((rest.to_owned(), Suffix::Kan));
    }
    if let Some(rest) = word.strip_suffix("an").filter(|r| !r.is_empty()) {
        out.push((rest.to_owned(), Suffix::An));
    } else if let Some(rest) = word.strip_suffix('i').filter(|r| !r.is_empty()) {
        out.push((rest.to_owned(), Suffix::I));
    }
    out
}

/// Nasal prefix (`me`/`pe` + `ng`/`ny`/`m`/`n`) removal with recoding.
fn nasal_candidates(word: &str, head: &str) -> Vec<String> {
    let b = word.as_bytes();
    let after = |n: usize| b.get(n).copied();
    let mut out = Vec::new();
    if let Some(rest) = word.strip_prefix(&format!("{head}ng")) {
        match after(head.len() + 2) {
            Some(c) if is_vowel(c) => {
                out.push(rest.to_owned());
                out.push(format!("k{rest}"));
            }
            Some(b'g' | b'h' | b'k' | b'q') => out.push(rest.to_owned()),
            _ => {}
        }
    } else if let Some(rest) = word.strip_prefix(&format!("{head}ny")) {
        if after(head.len() + 2).is_some_and(is_vowel) {
            out.push(format!("s{rest}"));
            out.push(format!("ny{rest}"));
        }
    } else if let Some(rest) = word.strip_prefix(&format!("{head}m")) {
        match after(head.len() + 1) {
            Some(b'b' | b'f' | b'v' | b'p') => out.push(rest.to_owned()),
            Some(c) if is_vowel(c) => {
                out.push(format!("m{rest}"));
                out.push(format!("p{rest}"));
            }
            _ => {}
        }
    } else if let Some(rest) = word.strip_prefix(&format!("{head}n")) {
        match after(head.len() + 1) {
            Some(b'c' | b'd' | b'j' | b's' | b'z') => out.push(rest.to_owned()),
            Some(c) if is_vowel(c) => {
                out.push(format!("n{rest}"));
                out.push(format!("t{rest}"));
            }
            _ => {}
        }
    } else if let Some(rest) = word.strip_prefix(head) {
        if matches!(after(head.len()), Some(b'l' | b'r' | b'w' | b'y')) {
            out.push(rest.to_owned());
        }
    }
    out
}

/// `ber`/`ter` (and `per`) removal: before a vowel the `r` may belong to
/// the root.
fn r_prefix_candidates(word: &str, head: &str) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(rest) = word.strip_prefix(&format!("{head}r")) {
        out.push(rest.to_owned());
        if rest.bytes().next().is_some_and(is_vowel) {
            out.push(format!("r{rest}"));
        }
    } else if let Some(rest) = word.strip_prefix(head) {
        out.push(rest.to_owned());
    }
    out
}

fn prefix_candidates(word: &str) -> Vec<(Prefix, String)> {
    let tag = |p: Prefix, v: Vec<String>| v.into_iter().map(move |c| (p, c));
    let two = |w: &str| w[2..].to_owned();
    if word.len() <= 2 {
        return Vec::new();
    }
    match &word[..2] {
        "di" => vec![(Prefix::Di, two(word))],
        "ke" => vec![(Prefix::Ke, two(word))],
        "se" => vec![(Prefix::Se, two(word))],
        "be" => {
            if word == "belajar" {
                vec![(Prefix::Be, "ajar".to_owned())]
            } else {
                tag(Prefix::Be, r_prefix_candidates(word, "be")).collect()
            }
        }
        "te" => tag(Prefix::Te, r_prefix_candidates(word, "te")).collect(),
        "me" => {
            let mut out: Vec<_> = tag(Prefix::Me, nasal_candidates(word, "me")).collect();
            if out.is_empty() && word.len() > 3 {
                out.push((Prefix::Me, two(word)));
            }
            out
        }
        "pe" => {
            let mut out: Vec<_> = tag(Prefix::Pe, nasal_candidates(word, "pe")).collect();
            if word.starts_with("per") {
                out.extend(tag(Prefix::Pe, r_prefix_candidates(word, "pe")));
            } else if out.is_empty() {
                out.push((Prefix::Pe, two(word)));
            }
            out
        }
        _ => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stemmer() -> Stemmer {
        crate::resources::stemmer()
    }

    fn stem(s: &Stemmer, w: &str) -> String {
        s.stem(&Token::new(w).unwrap()).as_str().to_owned()
    }

    #[test]
    fn required_examples() {
        let s = stemmer();
        assert_eq!(stem(&s, "pemilihan"), "pilih");
        assert_eq!(stem(&s, "memilih"), "pilih");
        assert_eq!(stem(&s, "gubernur"), "gubernur");
    }

    #[test]
    fn affix_table() {
        let s = stemmer();
        let cases = [
            ("dipilih", "pilih"),
            ("terpilih", "pilih"),
            ("pilihannya", "pilih"),
            ("menyapu", "sapu"),
            ("menulis", "tulis"),
            ("penulis", "tulis"),
            ("mengambil", "ambil"),
            ("pengambilan", "ambil"),
            ("mengirim", "kirim"),
            ("memukul", "pukul"),
            ("mendukung", "dukung"),
            ("pendukung", "dukung"),
            ("bekerja", "kerja"),
            ("belajar", "ajar"),
            ("bermain", "main"),
            ("kebersihan", "bersih"),
            ("perbaikan", "baik"),
            ("pembangunan", "bangun"),
            ("kepemimpinan", "pimpin"),
            ("mempermainkan", "main"),
            ("dimakan", "makan"),
            ("makanlah", "makan"),
            ("menyanyi", "nyanyi"),
            ("kemenangan", "menang"),
            ("zzqq", "zzqq"),
        ];
        for (word, expected) in cases {
            assert_eq!(stem(&s, word), expected, "stem({word})");
        }
    }

    #[test]
    fn disallowed_pair_is_skipped() {
        // "di-...-an" must not strip the suffix; the prefix alone finds the root.
        let s = Stemmer::new(["makan", "mak"]);
        assert_eq!(stem(&s, "dimakan"), "makan");
    }

    #[test]
    fn no_dictionary_no_change() {
        let s = Stemmer::new(Vec::<String>::new());
        assert_eq!(stem(&s, "pemilihan"), "pemilihan");
    }
}
