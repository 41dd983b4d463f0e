//! Multinomial Naive Bayes with add-one smoothing.
//!
//! Training counts, per class `j`:
//!
//! * `docs_per_class[j]` documents, out of `total_docs`;
//! * `token_counts[j][x]` occurrences of token `x`, summing to
//!   `tokens_per_class[j]`;
//! * one vocabulary shared by every class.
//!
//! ```text
//! prior(j)         = docs_per_class[j] / total_docs
//! likelihood(x, j) = (token_counts[j][x] + 1) / (tokens_per_class[j] + |vocabulary|)
//! label            = argmax_j prior(j) * prod_i likelihood(x_i, j)
//! ```
//!
//! Scores are accumulated in log space; the argmax is unchanged. Exact ties
//! go to the label that comes first in [`NbModel::labels`].

use std::collections::{BTreeMap, BTreeSet};
use std::io::{Read, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::SentimentLabel;
use crate::error::{Error, Result};
use crate::preprocess::{Document, Token};

pub const SCHEMA_VERSION: u32 = 1;
/// Additive smoothing constant. Not tunable.
pub const ALPHA: u64 = 1;

/// How tokens outside the training vocabulary are scored.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OovPolicy {
    /// Score with a zero count: `1 / (tokens_per_class[j] + |vocabulary|)`.
    #[default]
    Smooth,
    /// Leave them out of the product.
    Skip,
}

impl FromStr for OovPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "smooth" => Ok(Self::Smooth),
            "skip" => Ok(Self::Skip),
            other => Err(format!("unknown OOV policy {other:?} (expected smooth or skip)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbModel {
    labels: Vec<SentimentLabel>,
    docs_per_class: BTreeMap<SentimentLabel, u64>,
    total_docs: u64,
    token_counts: BTreeMap<SentimentLabel, BTreeMap<Token, u64>>,
    tokens_per_class: BTreeMap<SentimentLabel, u64>,
    vocabulary: BTreeSet<Token>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: SentimentLabel,
    pub posteriors: BTreeMap<SentimentLabel, f64>,
    pub oov_tokens: usize,
}

/// Counts documents per label and tokens per label.
pub fn train(docs: &[Document], labels: &BTreeSet<SentimentLabel>) -> Result<NbModel> {
    if docs.is_empty() {
        return Err(Error::Training("no training documents".into()));
    }
    let mut docs_per_class: BTreeMap<SentimentLabel, u64> = BTreeMap::new();
    let mut token_counts: BTreeMap<SentimentLabel, BTreeMap<Token, u64>> = BTreeMap::new();
    for doc in docs {
        let label = doc
            .label
            .ok_or_else(|| Error::Training(format!("document {} has no label", doc.source_id)))?;
        if !labels.contains(&label) {
            return Err(Error::Training(format!(
                "document {} has label {label} outside the label set",
                doc.source_id
            )));
        }
        if doc.is_empty() {
            return Err(Error::Training(format!("document {} has no tokens", doc.source_id)));
        }
        *docs_per_class.entry(label).or_default() += 1;
        let counts = token_counts.entry(label).or_default();
        for token in &doc.tokens {
            *counts.entry(token.clone()).or_default() += 1;
        }
    }
    for label in labels {
        if !docs_per_class.contains_key(label) {
            log::warn!("label {label} has no training documents and is dropped");
        }
    }
    NbModel::from_counts(docs_per_class, token_counts)
}

impl NbModel {
    /// Builds a model from raw counts, deriving totals and the vocabulary.
    ///
    /// Labels are the keys of `docs_per_class`; every count must be positive.
    pub fn from_counts(
        docs_per_class: BTreeMap<SentimentLabel, u64>,
        mut token_counts: BTreeMap<SentimentLabel, BTreeMap<Token, u64>>,
    ) -> Result<Self> {
        if let Some((label, _)) = docs_per_class.iter().find(|(_, &n)| n == 0) {
            return Err(Error::Model(format!("label {label} has a zero document count")));
        }
        if docs_per_class.len() < 2 {
            return Err(Error::DegenerateTraining(docs_per_class.len()));
        }
        if let Some(label) = token_counts.keys().find(|l| !docs_per_class.contains_key(l)) {
            return Err(Error::Model(format!("token counts for label {label} without documents")));
        }
        let labels: Vec<_> = docs_per_class.keys().copied().collect();
        let mut tokens_per_class = BTreeMap::new();
        let mut vocabulary = BTreeSet::new();
        for &label in &labels {
            let counts = token_counts.entry(label).or_default();
            if let Some((token, _)) = counts.iter().find(|(_, &c)| c == 0) {
                return Err(Error::Model(format!("zero count for token {token} in {label}")));
            }
            tokens_per_class.insert(label, counts.values().sum());
            vocabulary.extend(counts.keys().cloned());
        }
        Ok(Self {
            total_docs: docs_per_class.values().sum(),
            labels,
            docs_per_class,
            token_counts,
            tokens_per_class,
            vocabulary,
        })
    }

    /// Labels in category order (negative, positive, neutral).
    pub fn labels(&self) -> &[SentimentLabel] {
        &self.labels
    }

    pub fn has_label(&self, label: SentimentLabel) -> bool {
        self.docs_per_class.contains_key(&label)
    }

    pub fn total_docs(&self) -> u64 {
        self.total_docs
    }

    pub fn docs_in_class(&self, label: SentimentLabel) -> Result<u64> {
        self.docs_per_class.get(&label).copied().ok_or(Error::UnknownLabel(label))
    }

    pub fn tokens_in_class(&self, label: SentimentLabel) -> Result<u64> {
        self.tokens_per_class.get(&label).copied().ok_or(Error::UnknownLabel(label))
    }

    pub fn token_count(&self, token: &Token, label: SentimentLabel) -> Result<u64> {
        let counts = self.token_counts.get(&label).ok_or(Error::UnknownLabel(label))?;
        Ok(counts.get(token).copied().unwrap_or(0))
    }

    pub fn token_counts(&self) -> &BTreeMap<SentimentLabel, BTreeMap<Token, u64>> {
        &self.token_counts
    }

    pub fn vocabulary(&self) -> &BTreeSet<Token> {
        &self.vocabulary
    }

    pub fn class_prior(&self, label: SentimentLabel) -> Result<f64> {
        Ok(self.docs_in_class(label)? as f64 / self.total_docs as f64)
    }

    /// Smoothed `P(token | label)`; tokens never seen get a zero count.
    pub fn token_likelihood(&self, token: &Token, label: SentimentLabel) -> Result<f64> {
        let count = self.token_count(token, label)?;
        let denominator = self.tokens_in_class(label)? + self.vocabulary.len() as u64;
        Ok((count + ALPHA) as f64 / denominator as f64)
    }

    pub fn log_score(&self, doc: &Document, label: SentimentLabel) -> Result<f64> {
        self.log_score_with(doc, label, OovPolicy::Smooth)
    }

    pub fn log_score_with(&self, doc: &Document, label: SentimentLabel, oov: OovPolicy) -> Result<f64> {
        let mut score = self.class_prior(label)?.ln();
        for token in &doc.tokens {
            if oov == OovPolicy::Skip && !self.vocabulary.contains(token) {
                continue;
            }
            score += self.token_likelihood(token, label)?.ln();
        }
        Ok(score)
    }

    pub fn classify(&self, doc: &Document) -> Prediction {
        self.classify_with(doc, OovPolicy::Smooth)
    }

    pub fn classify_with(&self, doc: &Document, oov: OovPolicy) -> Prediction {
        let scores: Vec<(SentimentLabel, f64)> = self
            .labels
            .iter()
            .map(|&l| (l, self.log_score_with(doc, l, oov).expect("model label")))
            .collect();

        let (mut label, mut best) = scores[0];
        for &(l, s) in &scores[1..] {
            if s > best {
                label = l;
                best = s;
            }
        }
        let weights: Vec<f64> = scores.iter().map(|&(_, s)| (s - best).exp()).collect();
        let total: f64 = weights.iter().sum();
        let posteriors = scores
            .iter()
            .zip(&weights)
            .map(|(&(l, _), w)| (l, w / total))
            .collect();

        Prediction {
            label,
            posteriors,
            oov_tokens: doc.tokens.iter().filter(|t| !self.vocabulary.contains(*t)).count(),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    schema_version: u32,
    labels: Vec<SentimentLabel>,
    docs_per_class: BTreeMap<SentimentLabel, u64>,
    tokens_per_class: BTreeMap<SentimentLabel, u64>,
    token_counts: BTreeMap<SentimentLabel, BTreeMap<Token, u64>>,
    alpha: u64,
}

/// Writes the model as pretty-printed JSON. Only integer counts are stored.
pub fn save_model<W: Write>(model: &NbModel, mut sink: W) -> Result<()> {
    let file = ModelFile {
        schema_version: SCHEMA_VERSION,
        labels: model.labels.clone(),
        docs_per_class: model.docs_per_class.clone(),
        tokens_per_class: model.tokens_per_class.clone(),
        token_counts: model.token_counts.clone(),
        alpha: ALPHA,
    };
    serde_json::to_writer_pretty(&mut sink, &file).map_err(std::io::Error::from)?;
    sink.write_all(b"\n")?;
    Ok(())
}

pub fn load_model<R: Read>(source: R) -> Result<NbModel> {
    let file: ModelFile = serde_json::from_reader(source).map_err(|e| Error::Model(e.to_string()))?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::Model(format!(
            "schema_version {} is not supported (expected {SCHEMA_VERSION})",
            file.schema_version
        )));
    }
    if file.alpha != ALPHA {
        return Err(Error::Model(format!("alpha {} is not supported (expected {ALPHA})", file.alpha)));
    }
    let model = NbModel::from_counts(file.docs_per_class, file.token_counts)?;
    if model.labels != file.labels {
        return Err(Error::Model("labels do not match docs_per_class".into()));
    }
    if model.tokens_per_class != file.tokens_per_class {
        return Err(Error::Model("tokens_per_class does not match token_counts".into()));
    }
    Ok(model)
}
