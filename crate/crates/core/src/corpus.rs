//! Tweet ingestion and emoticon-based distant labeling.
//!
//! The collection chain is `ingest -> filter_hashtags -> filter_language ->
//! distant_label`. Every stage is a pure function over its input; the
//! [`CorpusStats`] returned by each stage can be summed with
//! [`CorpusStats::merge`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::io::{BufRead, BufReader, Read};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Emoticon marking a positive expression.
pub const POSITIVE_EMOTICON: &str = ":)";
/// Emoticon marking a negative expression.
pub const NEGATIVE_EMOTICON: &str = ":(";

/// Tweets longer than this are accepted but counted in [`CorpusStats::over_length`].
pub const MAX_TWEET_CHARS: usize = 140;

pub const DEFAULT_LANG_THRESHOLD: f64 = 0.5;

pub const DEFAULT_HASHTAGS: [&str; 5] = [
    "pilgubjabar",
    "ridwankamil",
    "deddymizwar",
    "dedimulyadi",
    "pilkadajabar",
];

/// Sentiment category.
///
/// The declaration order is the category index order j1, j2, j3:
/// `Negative` = j1, `Positive` = j2, `Neutral` = j3. `Ord` follows it, and
/// so does every ordered label list in a trained model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentLabel {
    Negative,
    Positive,
    Neutral,
}

impl SentimentLabel {
    pub const ALL: [SentimentLabel; 3] = [Self::Negative, Self::Positive, Self::Neutral];

    /// One-based category index (j1, j2, j3).
    pub fn category_index(self) -> usize {
        match self {
            Self::Negative => 1,
            Self::Positive => 2,
            Self::Neutral => 3,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Negative => "negative",
            Self::Positive => "positive",
            Self::Neutral => "neutral",
        }
    }
}

impl fmt::Display for SentimentLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SentimentLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "negative" | "neg" => Ok(Self::Negative),
            "positive" | "pos" => Ok(Self::Positive),
            "neutral" | "neu" => Ok(Self::Neutral),
            other => Err(format!("unknown sentiment label {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tweet {
    pub id: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub created_at: Option<String>,
    #[serde(default, rename = "lang", skip_serializing_if = "Option::is_none")]
    pub declared_lang: Option<String>,
}

impl Tweet {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            text: text.into(),
            created_at: None,
            declared_lang: None,
        }
    }

    pub fn is_over_length(&self) -> bool {
        self.text.chars().count() > MAX_TWEET_CHARS
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelSource {
    Distant,
    Manual,
}

/// A tweet with a sentiment label. Distant labels are never `Neutral`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledTweet {
    tweet: Tweet,
    label: SentimentLabel,
    source: LabelSource,
}

impl LabeledTweet {
    pub fn new(tweet: Tweet, label: SentimentLabel, source: LabelSource) -> Result<Self> {
        if source == LabelSource::Distant && label == SentimentLabel::Neutral {
            return Err(Error::Config(format!(
                "tweet {}: emoticon supervision cannot produce a neutral label",
                tweet.id
            )));
        }
        Ok(Self { tweet, label, source })
    }

    pub fn tweet(&self) -> &Tweet {
        &self.tweet
    }

    pub fn label(&self) -> SentimentLabel {
        self.label
    }

    pub fn source(&self) -> LabelSource {
        self.source
    }

    pub fn into_parts(self) -> (Tweet, SentimentLabel, LabelSource) {
        (self.tweet, self.label, self.source)
    }
}

/// On-disk form of a labeled tweet: the tweet fields plus `label` and
/// `label_source`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LabeledRecord {
    #[serde(flatten)]
    pub tweet: Tweet,
    pub label: SentimentLabel,
    pub label_source: LabelSource,
}

impl From<&LabeledTweet> for LabeledRecord {
    fn from(t: &LabeledTweet) -> Self {
        Self {
            tweet: t.tweet.clone(),
            label: t.label,
            label_source: t.source,
        }
    }
}

impl TryFrom<LabeledRecord> for LabeledTweet {
    type Error = Error;

    fn try_from(r: LabeledRecord) -> Result<Self> {
        LabeledTweet::new(r.tweet, r.label, r.label_source)
    }
}

/// Per-stage accounting. Once the full collection chain has run,
/// `total_ingested` equals the sum of every rejection and outcome count
/// (see [`CorpusStats::is_partition`]). `over_length` is informational and
/// not part of that sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub total_ingested: usize,
    pub rejected_malformed: usize,
    pub rejected_hashtag: usize,
    pub rejected_language: usize,
    pub rejected_ambiguous_emoticon: usize,
    pub labeled_positive: usize,
    pub labeled_negative: usize,
    pub unlabeled: usize,
    pub over_length: usize,
}

impl CorpusStats {
    pub fn merge(&mut self, other: &CorpusStats) {
        self.total_ingested += other.total_ingested;
        self.rejected_malformed += other.rejected_malformed;
        self.rejected_hashtag += other.rejected_hashtag;
        self.rejected_language += other.rejected_language;
        self.rejected_ambiguous_emoticon += other.rejected_ambiguous_emoticon;
        self.labeled_positive += other.labeled_positive;
        self.labeled_negative += other.labeled_negative;
        self.unlabeled += other.unlabeled;
        self.over_length += other.over_length;
    }

    pub fn accounted(&self) -> usize {
        self.rejected_malformed
            + self.rejected_hashtag
            + self.rejected_language
            + self.rejected_ambiguous_emoticon
            + self.labeled_positive
            + self.labeled_negative
            + self.unlabeled
    }

    pub fn is_partition(&self) -> bool {
        self.total_ingested == self.accounted()
    }
}

/// A producer of tweet batches. Returns `Ok(None)` once exhausted.
pub trait TweetSource {
    fn next_batch(&mut self) -> Result<Option<Vec<Tweet>>>;
}

#[derive(Deserialize)]
struct RawTweet {
    id: String,
    text: String,
    #[serde(default)]
    created_at: Option<String>,
    #[serde(default)]
    lang: Option<String>,
}

/// Reads JSON Lines tweet exports. Malformed lines and duplicate ids are
/// counted in [`CorpusStats::rejected_malformed`], never fatal.
pub struct JsonlSource<R> {
    reader: R,
    batch_size: usize,
    line_no: usize,
    seen: HashSet<String>,
    stats: CorpusStats,
    buf: Vec<u8>,
}

impl<R: BufRead> JsonlSource<R> {
    pub fn new(reader: R) -> Self {
        Self::with_batch_size(reader, 1024)
    }

    pub fn with_batch_size(reader: R, batch_size: usize) -> Self {
        Self {
            reader,
            batch_size: batch_size.max(1),
            line_no: 0,
            seen: HashSet::new(),
            stats: CorpusStats::default(),
            buf: Vec::new(),
        }
    }

    pub fn stats(&self) -> &CorpusStats {
        &self.stats
    }

    fn parse_line(&mut self, line: &[u8]) -> Option<Tweet> {
        let malformed = |line_no: usize, why: &str| {
            log::warn!("line {line_no}: skipping malformed record: {why}");
        };
        let Ok(text) = std::str::from_utf8(line) else {
            malformed(self.line_no, "invalid UTF-8");
            return None;
        };
        let raw: RawTweet = match serde_json::from_str(text) {
            Ok(raw) => raw,
            Err(e) => {
                malformed(self.line_no, &e.to_string());
                return None;
            }
        };
        if raw.id.is_empty() || raw.text.trim().is_empty() {
            malformed(self.line_no, "empty id or text");
            return None;
        }
        if !self.seen.insert(raw.id.clone()) {
            malformed(self.line_no, &format!("duplicate id {:?}", raw.id));
            return None;
        }
        Some(Tweet {
            id: raw.id,
            text: raw.text,
            created_at: raw.created_at,
            declared_lang: raw.lang,
        })
    }
}

impl<R: BufRead> TweetSource for JsonlSource<R> {
    fn next_batch(&mut self) -> Result<Option<Vec<Tweet>>> {
        let mut batch = Vec::new();
        let mut exhausted = false;
        while batch.len() < self.batch_size {
            self.buf.clear();
            if self.reader.read_until(b'\n', &mut self.buf)? == 0 {
                exhausted = true;
                break;
            }
            self.line_no += 1;
            let line = std::mem::take(&mut self.buf);
            let trimmed = line.trim_ascii();
            if trimmed.is_empty() {
                self.buf = line;
                continue;
            }
            self.stats.total_ingested += 1;
            match self.parse_line(trimmed) {
                Some(tweet) => {
                    if tweet.is_over_length() {
                        self.stats.over_length += 1;
                    }
                    batch.push(tweet);
                }
                None => self.stats.rejected_malformed += 1,
            }
            self.buf = line;
        }
        if batch.is_empty() && exhausted {
            Ok(None)
        } else {
            Ok(Some(batch))
        }
    }
}

/// Drains a JSON Lines stream into tweets.
pub fn ingest_jsonl<R: Read>(source: R) -> Result<(Vec<Tweet>, CorpusStats)> {
    let mut src = JsonlSource::new(BufReader::new(source));
    let mut tweets = Vec::new();
    while let Some(batch) = src.next_batch()? {
        tweets.extend(batch);
    }
    if tweets.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok((tweets, src.stats))
}

/// Lowercased hashtag words without the `#` prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HashtagSet(BTreeSet<String>);

impl HashtagSet {
    /// Entries are lowercased and a leading `#` is tolerated.
    pub fn new<I, S>(tags: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BTreeSet::new();
        for tag in tags {
            let tag = tag.as_ref().trim();
            let tag = tag.strip_prefix('#').unwrap_or(tag).to_lowercase();
            if tag.is_empty() {
                return Err(Error::Config("empty hashtag entry".into()));
            }
            set.insert(tag);
        }
        if set.is_empty() {
            return Err(Error::Config("hashtag set is empty".into()));
        }
        Ok(Self(set))
    }

    pub fn tracked_default() -> Self {
        Self::new(DEFAULT_HASHTAGS).expect("default hashtag set is non-empty")
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(crate::lexicon::entries(text).map(|(_, e)| e))
    }

    pub fn contains(&self, tag: &str) -> bool {
        self.0.contains(tag)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    /// Whether `text` carries at least one tracked hashtag.
    pub fn matches(&self, text: &str) -> bool {
        hashtags_in(text).any(|t| self.contains(&t))
    }
}

/// Lowercased hashtag words found in `text`: a `#` followed by a run of
/// alphanumerics or underscores.
pub fn hashtags_in(text: &str) -> impl Iterator<Item = String> + '_ {
    text.split('#').skip(1).filter_map(|rest| {
        let end = rest
            .char_indices()
            .find(|&(_, c)| !(c.is_alphanumeric() || c == '_'))
            .map_or(rest.len(), |(i, _)| i);
        (end > 0).then(|| rest[..end].to_lowercase())
    })
}

pub fn filter_hashtags(tweets: Vec<Tweet>, tags: &HashtagSet) -> Vec<Tweet> {
    tweets.into_iter().filter(|t| tags.matches(&t.text)).collect()
}

/// Indonesian vocabulary for the language filter.
#[derive(Debug, Clone)]
pub struct Wordlist(HashSet<String>);

impl Wordlist {
    pub fn new<I, S>(words: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let set: HashSet<String> = words
            .into_iter()
            .map(|w| w.as_ref().trim().to_lowercase())
            .filter(|w| !w.is_empty())
            .collect();
        if set.is_empty() {
            return Err(Error::Config("language wordlist is empty".into()));
        }
        Ok(Self(set))
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(crate::lexicon::entries(text).map(|(_, e)| e))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Fraction of the text's letter-only words found in the list, or `None`
    /// when the text has no such words.
    ///
    /// Words are whitespace-separated pieces with non-letter characters
    /// trimmed from both ends, lowercased; pieces that still contain a
    /// non-letter (URLs, numbers, mentions with digits) are ignored.
    pub fn ratio(&self, text: &str) -> Option<f64> {
        let (mut hits, mut total) = (0usize, 0usize);
        for piece in text.split_whitespace() {
            let word = piece.trim_matches(|c: char| !c.is_ascii_alphabetic());
            if word.is_empty() || !word.chars().all(|c| c.is_ascii_alphabetic()) {
                continue;
            }
            total += 1;
            if self.contains(&word.to_ascii_lowercase()) {
                hits += 1;
            }
        }
        (total > 0).then(|| hits as f64 / total as f64)
    }
}

/// Keeps tweets whose dictionary ratio is at least `threshold`. Tweets
/// without any word are dropped; all drops count as `rejected_language`.
pub fn filter_language(
    tweets: Vec<Tweet>,
    wordlist: &Wordlist,
    threshold: f64,
) -> Result<(Vec<Tweet>, CorpusStats)> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::Config(format!(
            "language threshold {threshold} outside [0, 1]"
        )));
    }
    let mut stats = CorpusStats::default();
    let kept = tweets
        .into_iter()
        .filter(|t| {
            let keep = wordlist.ratio(&t.text).is_some_and(|r| r >= threshold);
            if !keep {
                stats.rejected_language += 1;
            }
            keep
        })
        .collect();
    Ok((kept, stats))
}

/// Emoticon verdict for a single text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmoticonVerdict {
    Positive,
    Negative,
    Ambiguous,
    None,
}

pub fn emoticon_verdict(text: &str) -> EmoticonVerdict {
    match (text.contains(POSITIVE_EMOTICON), text.contains(NEGATIVE_EMOTICON)) {
        (true, false) => EmoticonVerdict::Positive,
        (false, true) => EmoticonVerdict::Negative,
        (true, true) => EmoticonVerdict::Ambiguous,
        (false, false) => EmoticonVerdict::None,
    }
}

/// Splits tweets into distant-labeled, unlabeled and (counted) ambiguous.
pub fn distant_label(tweets: Vec<Tweet>) -> (Vec<LabeledTweet>, Vec<Tweet>, CorpusStats) {
    let mut stats = CorpusStats::default();
    let mut labeled = Vec::new();
    let mut unlabeled = Vec::new();
    for tweet in tweets {
        let label = match emoticon_verdict(&tweet.text) {
            EmoticonVerdict::Positive => {
                stats.labeled_positive += 1;
                SentimentLabel::Positive
            }
            EmoticonVerdict::Negative => {
                stats.labeled_negative += 1;
                SentimentLabel::Negative
            }
            EmoticonVerdict::Ambiguous => {
                stats.rejected_ambiguous_emoticon += 1;
                continue;
            }
            EmoticonVerdict::None => {
                stats.unlabeled += 1;
                unlabeled.push(tweet);
                continue;
            }
        };
        labeled.push(LabeledTweet {
            tweet,
            label,
            source: LabelSource::Distant,
        });
    }
    (labeled, unlabeled, stats)
}

/// What happened to one ingested tweet during collection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    HashtagRejected,
    LanguageRejected,
    AmbiguousRejected,
    Positive,
    Negative,
    Unlabeled,
}

#[derive(Debug, Clone)]
pub struct CollectConfig {
    pub hashtags: HashtagSet,
    pub wordlist: Wordlist,
    pub lang_threshold: f64,
}

#[derive(Debug, Clone)]
pub struct Collected {
    pub labeled: Vec<LabeledTweet>,
    pub unlabeled: Vec<Tweet>,
    pub stats: CorpusStats,
    /// Outcome per well-formed tweet, in input order.
    pub outcomes: Vec<(String, Outcome)>,
}

/// Runs `filter_hashtags -> filter_language -> distant_label` over ingested
/// tweets, folding `ingest_stats` into the result.
pub fn collect(tweets: Vec<Tweet>, ingest_stats: CorpusStats, config: &CollectConfig) -> Result<Collected> {
    let ids: Vec<String> = tweets.iter().map(|t| t.id.clone()).collect();
    let mut stats = ingest_stats;

    let before = tweets.len();
    let tweets = filter_hashtags(tweets, &config.hashtags);
    stats.rejected_hashtag += before - tweets.len();
    let after_hashtag: HashSet<String> = tweets.iter().map(|t| t.id.clone()).collect();

    let (tweets, lang_stats) = filter_language(tweets, &config.wordlist, config.lang_threshold)?;
    stats.merge(&lang_stats);
    let after_language: HashSet<String> = tweets.iter().map(|t| t.id.clone()).collect();

    let (labeled, unlabeled, label_stats) = distant_label(tweets);
    stats.merge(&label_stats);

    let positive: HashSet<&str> = labeled
        .iter()
        .filter(|t| t.label == SentimentLabel::Positive)
        .map(|t| t.tweet.id.as_str())
        .collect();
    let negative: HashSet<&str> = labeled
        .iter()
        .filter(|t| t.label == SentimentLabel::Negative)
        .map(|t| t.tweet.id.as_str())
        .collect();
    let unlabeled_ids: HashSet<&str> = unlabeled.iter().map(|t| t.id.as_str()).collect();

    let outcomes = ids
        .into_iter()
        .map(|id| {
            let outcome = if !after_hashtag.contains(&id) {
                Outcome::HashtagRejected
            } else if !after_language.contains(&id) {
                Outcome::LanguageRejected
            } else if positive.contains(id.as_str()) {
                Outcome::Positive
            } else if negative.contains(id.as_str()) {
                Outcome::Negative
            } else if unlabeled_ids.contains(id.as_str()) {
                Outcome::Unlabeled
            } else {
                Outcome::AmbiguousRejected
            };
            (id, outcome)
        })
        .collect();

    Ok(Collected {
        labeled,
        unlabeled,
        stats,
        outcomes,
    })
}

/// Reads a labeled corpus written by [`write_labeled_jsonl`]. Unlike raw
/// ingestion, any malformed line is an error.
pub fn read_labeled_jsonl<R: Read>(source: R) -> Result<Vec<LabeledTweet>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let record: LabeledRecord = serde_json::from_str(&line).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?;
        out.push(LabeledTweet::try_from(record).map_err(|e| Error::Parse {
            line: i + 1,
            message: e.to_string(),
        })?);
    }
    Ok(out)
}

pub fn write_labeled_jsonl<W: std::io::Write>(mut sink: W, tweets: &[LabeledTweet]) -> Result<()> {
    for t in tweets {
        serde_json::to_writer(&mut sink, &LabeledRecord::from(t)).map_err(std::io::Error::from)?;
        sink.write_all(b"\n")?;
    }
    Ok(())
}

pub fn write_tweets_jsonl<W: std::io::Write>(mut sink: W, tweets: &[Tweet]) -> Result<()> {
    for t in tweets {
        serde_json::to_writer(&mut sink, t).map_err(std::io::Error::from)?;
        sink.write_all(b"\n")?;
    }
    Ok(())
}
