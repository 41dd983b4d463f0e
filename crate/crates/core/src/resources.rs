//! Bundled Indonesian data files, compiled into the library so the whole
//! pipeline runs offline.

use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{HashtagSet, Wordlist};
use crate::lexicon;
use crate::preprocess::{PosTag, Stemmer, Token};

pub const STOPWORDS: &str = include_str!("../data/stopwords_id.txt");
pub const ROOTS: &str = include_str!("../data/roots_id.txt");
pub const POS_LEXICON: &str = include_str!("../data/pos_lexicon_id.txt");
pub const WORDLIST: &str = include_str!("../data/wordlist_id.txt");
pub const HASHTAGS: &str = include_str!("../data/hashtags.txt");
/// Six tweets exercising every collection outcome.
pub const DEMO_CORPUS: &str = include_str!("../data/demo_corpus.jsonl");

pub fn stopwords() -> BTreeSet<Token> {
    lexicon::parse_token_set(STOPWORDS).expect("bundled stopwords are valid")
}

pub fn stemmer() -> Stemmer {
    Stemmer::new(lexicon::parse_word_set(ROOTS))
}

pub fn pos_lexicon() -> BTreeMap<Token, PosTag> {
    lexicon::parse_pos_lexicon(POS_LEXICON).expect("bundled POS lexicon is valid")
}

pub fn wordlist() -> Wordlist {
    Wordlist::parse(WORDLIST).expect("bundled wordlist is non-empty")
}

pub fn hashtags() -> HashtagSet {
    HashtagSet::parse(HASHTAGS).expect("bundled hashtag list is non-empty")
}
