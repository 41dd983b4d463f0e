use std::collections::{BTreeMap, BTreeSet};

use crate::corpus::{LabeledTweet, SentimentLabel, Tweet};
use crate::error::Result;
use crate::preprocess::{case_fold, cleanse, pos_tag, remove_stopwords, tokenize, Document, PosTag, Stemmer, Token};

/// Stage toggles and the read-only resources the stages use.
#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub stopwords: BTreeSet<Token>,
    pub enable_stopwords: bool,
    pub enable_pos: bool,
    /// Ignored unless `enable_pos` is set.
    pub pos_keep_tags: BTreeSet<PosTag>,
    pub enable_stemming: bool,
    pub pos_lexicon: BTreeMap<Token, PosTag>,
    pub stemmer: Stemmer,
}

impl PipelineConfig {
    pub fn default_keep_tags() -> BTreeSet<PosTag> {
        [PosTag::Adj, PosTag::Verb, PosTag::Noun, PosTag::Other].into()
    }

    /// Only cleanse, case folding and tokenization.
    pub fn minimal() -> Self {
        Self {
            stopwords: BTreeSet::new(),
            enable_stopwords: false,
            enable_pos: false,
            pos_keep_tags: Self::default_keep_tags(),
            enable_stemming: false,
            pos_lexicon: BTreeMap::new(),
            stemmer: Stemmer::new(Vec::<String>::new()),
        }
    }

    pub fn process(&self, tweet: &Tweet) -> Result<Document> {
        run_pipeline(tweet, None, self)
    }

    pub fn process_labeled(&self, tweet: &LabeledTweet) -> Result<Document> {
        run_pipeline(tweet.tweet(), Some(tweet.label()), self)
    }

    /// Runs every stage on `text`, keeping intermediate results.
    pub fn trace(&self, text: &str) -> Result<PipelineTrace> {
        let cleansed = cleanse(text);
        let folded = case_fold(&cleansed);
        let tokens = tokenize(&folded)?;

        let after_stopwords = if self.enable_stopwords {
            remove_stopwords(tokens.clone(), &self.stopwords)
        } else {
            tokens.clone()
        };
        let after_pos = if self.enable_pos {
            pos_tag(after_stopwords.clone(), &self.pos_lexicon)
                .into_iter()
                .filter(|t| self.pos_keep_tags.contains(&t.tag))
                .map(|t| t.token)
                .collect()
        } else {
            after_stopwords.clone()
        };
        let after_stemming = if self.enable_stemming {
            after_pos.iter().map(|t| self.stemmer.stem(t)).collect()
        } else {
            after_pos.clone()
        };

        Ok(PipelineTrace {
            cleansed,
            folded,
            tokens,
            after_stopwords,
            after_pos,
            after_stemming,
        })
    }
}

impl Default for PipelineConfig {
    /// Bundled Indonesian resources; stopwords and stemming on, POS filter off.
    fn default() -> Self {
        Self {
            stopwords: crate::resources::stopwords(),
            enable_stopwords: true,
            enable_pos: false,
            pos_keep_tags: Self::default_keep_tags(),
            enable_stemming: true,
            pos_lexicon: crate::resources::pos_lexicon(),
            stemmer: crate::resources::stemmer(),
        }
    }
}

/// Intermediate output of each stage, for inspection and diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineTrace {
    pub cleansed: String,
    pub folded: String,
    pub tokens: Vec<Token>,
    pub after_stopwords: Vec<Token>,
    pub after_pos: Vec<Token>,
    pub after_stemming: Vec<Token>,
}

/// cleanse -> case_fold -> tokenize -> stopwords -> POS filter -> stem.
pub fn run_pipeline(tweet: &Tweet, label: Option<SentimentLabel>, config: &PipelineConfig) -> Result<Document> {
    let trace = config.trace(&tweet.text)?;
    Ok(Document::new(tweet.id.clone(), trace.after_stemming, label))
}

/// Token occurrence counts of a document.
pub fn extract_unigrams(doc: &Document) -> BTreeMap<Token, usize> {
    let mut counts = BTreeMap::new();
    for t in &doc.tokens {
        *counts.entry(t.clone()).or_insert(0) += 1;
    }
    counts
}
