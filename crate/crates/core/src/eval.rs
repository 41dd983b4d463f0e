//! Train/validation splitting, confusion-matrix metrics against gold labels
//! and per-hashtag sentiment percentages.
//!
//! Splits are reproducible across platforms: documents are first sorted by
//! `(source_id, tokens, label)`, then shuffled with a ChaCha8 generator
//! seeded from the caller's `u64` seed (Fisher-Yates via `rand`).

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::io::Read;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::{hashtags_in, HashtagSet, SentimentLabel, Tweet};
use crate::error::{Error, Result};
use crate::model::{self, NbModel, OovPolicy, Prediction};
use crate::preprocess::Document;

pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_TRAIN_FRACTION: f64 = 0.8;
pub const DEFAULT_K: usize = 10;
/// Group key that every prediction belongs to.
pub const ALL_GROUP: &str = "all";

fn canonical_cmp(a: &Document, b: &Document) -> Ordering {
    a.source_id
        .cmp(&b.source_id)
        .then_with(|| a.tokens.cmp(&b.tokens))
        .then_with(|| a.label.cmp(&b.label))
}

fn canonical_shuffle(mut docs: Vec<Document>, seed: u64) -> Vec<Document> {
    docs.sort_by(canonical_cmp);
    docs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    docs
}

/// Shuffles and cuts into `round(n * train_fraction)` training documents and
/// the rest for validation.
pub fn split(docs: Vec<Document>, train_fraction: f64, seed: u64) -> Result<(Vec<Document>, Vec<Document>)> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(Error::Split(format!("train fraction {train_fraction} outside (0, 1)")));
    }
    let n = docs.len();
    if n < 2 {
        return Err(Error::Split(format!("need at least 2 documents, got {n}")));
    }
    let n_train = (n as f64 * train_fraction).round() as usize;
    if n_train == 0 || n_train == n {
        return Err(Error::Split(format!(
            "fraction {train_fraction} of {n} documents leaves one side empty"
        )));
    }
    let mut train = canonical_shuffle(docs, seed);
    let test = train.split_off(n_train);
    Ok((train, test))
}

/// `k` (train, test) pairs; each document is in exactly one test fold and
/// fold sizes differ by at most one.
pub fn k_fold(docs: Vec<Document>, k: usize, seed: u64) -> Result<Vec<(Vec<Document>, Vec<Document>)>> {
    if k < 2 {
        return Err(Error::Fold(format!("k must be at least 2, got {k}")));
    }
    if k > docs.len() {
        return Err(Error::Fold(format!("k = {k} exceeds {} documents", docs.len())));
    }
    let docs = canonical_shuffle(docs, seed);
    let (base, extra) = (docs.len() / k, docs.len() % k);
    let mut bounds = Vec::with_capacity(k + 1);
    bounds.push(0);
    for i in 0..k {
        bounds.push(bounds[i] + base + usize::from(i < extra));
    }
    Ok((0..k)
        .map(|i| {
            let (lo, hi) = (bounds[i], bounds[i + 1]);
            let test = docs[lo..hi].to_vec();
            let train = docs[..lo].iter().chain(&docs[hi..]).cloned().collect();
            (train, test)
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Gold documents of this class.
    pub support: u64,
}

/// Gold-versus-predicted comparison. Precision, recall and F1 are 0 when
/// their denominator is 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalMetrics {
    pub labels: Vec<SentimentLabel>,
    /// `confusion[gold][predicted]`, every cell present.
    pub confusion: BTreeMap<SentimentLabel, BTreeMap<SentimentLabel, u64>>,
    pub accuracy: f64,
    pub per_class: BTreeMap<SentimentLabel, ClassMetrics>,
    pub n_test: u64,
}

fn ratio(num: u64, den: u64) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl EvalMetrics {
    pub fn from_pairs<I>(labels: &[SentimentLabel], pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SentimentLabel, SentimentLabel)>,
    {
        let mut confusion: BTreeMap<_, BTreeMap<_, u64>> = labels
            .iter()
            .map(|&g| (g, labels.iter().map(|&p| (p, 0)).collect()))
            .collect();
        let mut n_test = 0;
        for (gold, predicted) in pairs {
            let row = confusion.get_mut(&gold).ok_or(Error::UnknownLabel(gold))?;
            *row.get_mut(&predicted).ok_or(Error::UnknownLabel(predicted))? += 1;
            n_test += 1;
        }
        if n_test == 0 {
            return Err(Error::Evaluation("no gold documents to evaluate".into()));
        }

        let correct: u64 = labels.iter().map(|l| confusion[l][l]).sum();
        let per_class = labels
            .iter()
            .map(|&l| {
                let tp = confusion[&l][&l];
                let gold_total: u64 = confusion[&l].values().sum();
                let predicted_total: u64 = labels.iter().map(|g| confusion[g][&l]).sum();
                let precision = ratio(tp, predicted_total);
                let recall = ratio(tp, gold_total);
                let f1 = if precision + recall == 0.0 {
                    0.0
                } else {
                    2.0 * precision * recall / (precision + recall)
                };
                (l, ClassMetrics { precision, recall, f1, support: gold_total })
            })
            .collect();

        Ok(Self {
            labels: labels.to_vec(),
            confusion,
            accuracy: ratio(correct, n_test),
            per_class,
            n_test,
        })
    }

    pub fn cell(&self, gold: SentimentLabel, predicted: SentimentLabel) -> u64 {
        self.confusion
            .get(&gold)
            .and_then(|row| row.get(&predicted))
            .copied()
            .unwrap_or(0)
    }

    /// Aligned plain-text rendering.
    pub fn to_table(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{:<10}", "gold\\pred"));
        for l in &self.labels {
            out.push_str(&format!("{:>10}", l.as_str()));
        }
        out.push('\n');
        for g in &self.labels {
            out.push_str(&format!("{:<10}", g.as_str()));
            for p in &self.labels {
                out.push_str(&format!("{:>10}", self.cell(*g, *p)));
            }
            out.push('\n');
        }
        out.push('\n');
        out.push_str(&format!(
            "{:<10}{:>10}{:>10}{:>10}{:>10}\n",
            "class", "precision", "recall", "f1", "support"
        ));
        for (l, m) in &self.per_class {
            out.push_str(&format!(
                "{:<10}{:>10.4}{:>10.4}{:>10.4}{:>10}\n",
                l.as_str(),
                m.precision,
                m.recall,
                m.f1,
                m.support
            ));
        }
        out.push_str(&format!("\naccuracy  {:.4}  (n = {})\n", self.accuracy, self.n_test));
        out
    }
}

/// Classifies every gold document and compares with its label.
pub fn evaluate(model: &NbModel, gold: &[Document]) -> Result<EvalMetrics> {
    evaluate_with(model, gold, OovPolicy::Smooth)
}

pub fn evaluate_with(model: &NbModel, gold: &[Document], oov: OovPolicy) -> Result<EvalMetrics> {
    if gold.is_empty() {
        return Err(Error::Evaluation("gold set is empty".into()));
    }
    let pairs = gold
        .iter()
        .map(|doc| {
            let label = doc
                .label
                .ok_or_else(|| Error::Evaluation(format!("gold document {} has no label", doc.source_id)))?;
            if !model.has_label(label) {
                return Err(Error::UnknownLabel(label));
            }
            Ok((label, model.classify_with(doc, oov).label))
        })
        .collect::<Result<Vec<_>>>()?;
    EvalMetrics::from_pairs(model.labels(), pairs)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossValidation {
    pub k: usize,
    pub seed: u64,
    pub fold_accuracies: Vec<f64>,
    pub mean_accuracy: f64,
    pub min_accuracy: f64,
    pub max_accuracy: f64,
}

/// Retrains on each of `k` folds and evaluates on the held-out part.
pub fn cross_validate(
    docs: Vec<Document>,
    labels: &BTreeSet<SentimentLabel>,
    k: usize,
    seed: u64,
    oov: OovPolicy,
) -> Result<CrossValidation> {
    let mut fold_accuracies = Vec::with_capacity(k);
    for (train, test) in k_fold(docs, k, seed)? {
        let model = model::train(&train, labels)?;
        let test: Vec<_> = test.into_iter().filter(|d| d.label.is_some_and(|l| model.has_label(l))).collect();
        fold_accuracies.push(evaluate_with(&model, &test, oov)?.accuracy);
    }
    let mean_accuracy = fold_accuracies.iter().sum::<f64>() / k as f64;
    let min_accuracy = fold_accuracies.iter().copied().fold(f64::INFINITY, f64::min);
    let max_accuracy = fold_accuracies.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    Ok(CrossValidation {
        k,
        seed,
        fold_accuracies,
        mean_accuracy,
        min_accuracy,
        max_accuracy,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SentimentReport {
    pub group_key: String,
    pub total: u64,
    pub counts: BTreeMap<SentimentLabel, u64>,
    /// Empty when the group is empty.
    pub percentages: BTreeMap<SentimentLabel, f64>,
}

impl SentimentReport {
    fn new(group_key: &str) -> Self {
        Self {
            group_key: group_key.to_owned(),
            total: 0,
            counts: BTreeMap::new(),
            percentages: BTreeMap::new(),
        }
    }

    fn add(&mut self, label: SentimentLabel) {
        self.total += 1;
        *self.counts.entry(label).or_default() += 1;
    }

    fn finish(&mut self) {
        self.percentages = self
            .counts
            .iter()
            .map(|(&l, &c)| (l, c as f64 / self.total as f64))
            .collect();
    }
}

/// One report for `all`, then one per tracked hashtag that occurs, in
/// hashtag order. A tweet counts once in every group whose tag it carries.
pub fn sentiment_report(predictions: &[(Tweet, Prediction)], group_by: &HashtagSet) -> Vec<SentimentReport> {
    let labeled: Vec<(&Tweet, SentimentLabel)> = predictions.iter().map(|(t, p)| (t, p.label)).collect();
    sentiment_report_labels(&labeled, group_by)
}

pub fn sentiment_report_labels(items: &[(&Tweet, SentimentLabel)], group_by: &HashtagSet) -> Vec<SentimentReport> {
    let mut all = SentimentReport::new(ALL_GROUP);
    let mut groups: BTreeMap<&str, SentimentReport> = BTreeMap::new();
    for &(tweet, label) in items {
        all.add(label);
        let tags: HashSet<String> = hashtags_in(&tweet.text).collect();
        for tag in group_by.iter().filter(|t| tags.contains(*t)) {
            groups.entry(tag).or_insert_with(|| SentimentReport::new(tag)).add(label);
        }
    }
    std::iter::once(all)
        .chain(groups.into_values())
        .map(|mut r| {
            r.finish();
            r
        })
        .collect()
}

/// `group,total,negative,positive,neutral` rows of percentages.
pub fn reports_to_csv(reports: &[SentimentReport]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    let mut header = vec!["group".to_owned(), "total".to_owned()];
    header.extend(SentimentLabel::ALL.iter().map(|l| l.as_str().to_owned()));
    w.write_record(&header).map_err(csv_err)?;
    for r in reports {
        let mut row = vec![r.group_key.clone(), r.total.to_string()];
        row.extend(
            SentimentLabel::ALL
                .iter()
                .map(|l| r.percentages.get(l).copied().unwrap_or(0.0).to_string()),
        );
        w.write_record(&row).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Debug, Deserialize)]
struct GoldRow {
    id: String,
    label: String,
}

/// Reads a gold-label CSV with header `id,label`.
pub fn read_gold_csv<R: Read>(source: R) -> Result<Vec<(String, SentimentLabel)>> {
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(source);
    let headers = reader
        .headers()
        .map_err(|e| Error::Parse { line: 1, message: e.to_string() })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["id", "label"] {
        return Err(Error::Parse {
            line: 1,
            message: format!("expected header id,label, got {}", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (i, row) in reader.deserialize::<GoldRow>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Parse { line, message: e.to_string() })?;
        let label = row.label.parse().map_err(|message| Error::Parse { line, message })?;
        if !seen.insert(row.id.clone()) {
            return Err(Error::Parse { line, message: format!("duplicate id {:?}", row.id) });
        }
        out.push((row.id, label));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use SentimentLabel::{Negative, Neutral, Positive};

    fn docs(n: usize) -> Vec<Document> {
        (0..n)
            .map(|i| {
                let label = if i % 2 == 0 { Positive } else { Negative };
                Document::from_words(format!("{i:02}"), ["kata"], Some(label)).unwrap()
            })
            .collect()
    }

    fn ids(docs: &[Document]) -> BTreeSet<String> {
        docs.iter().map(|d| d.source_id.clone()).collect()
    }

    #[test]
    fn split_eighty_twenty() {
        let (train, test) = split(docs(10), 0.8, 42).unwrap();
        assert_eq!((train.len(), test.len()), (8, 2));
        assert!(ids(&train).is_disjoint(&ids(&test)));
        let union: BTreeSet<_> = ids(&train).union(&ids(&test)).cloned().collect();
        assert_eq!(union, ids(&docs(10)));
        assert_eq!(split(docs(10), 0.8, 42).unwrap(), (train, test));
    }

    #[test]
    fn split_errors() {
        assert!(matches!(split(docs(1), 0.8, 42), Err(Error::Split(_))));
        assert!(split(docs(10), 1.0, 42).is_err());
        assert!(split(docs(2), 0.9, 42).is_err());
    }

    #[test]
    fn split_ignores_input_order() {
        let mut reversed = docs(10);
        reversed.reverse();
        assert_eq!(split(reversed, 0.7, 3).unwrap(), split(docs(10), 0.7, 3).unwrap());
    }

    #[test]
    fn k_fold_coverage() {
        let folds = k_fold(docs(10), 5, 1).unwrap();
        assert_eq!(folds.len(), 5);
        let mut seen = Vec::new();
        for (train, test) in &folds {
            assert_eq!(test.len(), 2);
            assert_eq!(train.len(), 8);
            assert!(ids(train).is_disjoint(&ids(test)));
            seen.extend(test.iter().map(|d| d.source_id.clone()));
        }
        seen.sort();
        assert_eq!(seen, ids(&docs(10)).into_iter().collect::<Vec<_>>());
    }

    #[test]
    fn k_fold_uneven_and_boundaries() {
        let sizes: Vec<_> = k_fold(docs(11), 3, 0).unwrap().iter().map(|(_, t)| t.len()).collect();
        assert_eq!(sizes, vec![4, 4, 3]);
        let loo = k_fold(docs(4), 4, 0).unwrap();
        assert!(loo.iter().all(|(_, t)| t.len() == 1));
        assert!(matches!(k_fold(docs(4), 1, 0), Err(Error::Fold(_))));
        assert!(matches!(k_fold(docs(4), 5, 0), Err(Error::Fold(_))));
    }

    #[test]
    fn metrics_from_pairs() {
        // 10 items, 7 on the diagonal.
        let pairs = [
            (Positive, Positive),
            (Positive, Positive),
            (Positive, Positive),
            (Positive, Positive),
            (Positive, Negative),
            (Negative, Negative),
            (Negative, Negative),
            (Negative, Negative),
            (Negative, Positive),
            (Negative, Positive),
        ];
        let m = EvalMetrics::from_pairs(&[Negative, Positive], pairs).unwrap();
        assert_eq!(m.n_test, 10);
        assert_eq!(m.accuracy, 0.7);
        assert_eq!(m.cell(Positive, Negative), 1);
        assert_eq!(m.cell(Negative, Positive), 2);
        assert_eq!(m.per_class[&Positive].precision, 4.0 / 6.0);
        assert_eq!(m.per_class[&Positive].recall, 4.0 / 5.0);
        assert_eq!(m.per_class[&Negative].precision, 3.0 / 4.0);
        assert_eq!(m.per_class[&Negative].recall, 3.0 / 5.0);
        assert!(m.to_table().contains("accuracy  0.7000"));
    }

    #[test]
    fn metrics_zero_denominators() {
        let m = EvalMetrics::from_pairs(&[Negative, Positive, Neutral], [(Neutral, Positive), (Positive, Positive)]).unwrap();
        let neutral = m.per_class[&Neutral];
        assert_eq!((neutral.precision, neutral.recall, neutral.f1), (0.0, 0.0, 0.0));
        let negative = m.per_class[&Negative];
        assert_eq!((negative.precision, negative.recall), (0.0, 0.0));
    }

    #[test]
    fn metrics_errors() {
        assert!(matches!(EvalMetrics::from_pairs(&[Negative, Positive], []), Err(Error::Evaluation(_))));
        assert!(matches!(
            EvalMetrics::from_pairs(&[Negative, Positive], [(Neutral, Positive)]),
            Err(Error::UnknownLabel(Neutral))
        ));
    }

    fn fixture_model() -> NbModel {
        let d = |w: &[&str], l| Document::from_words("t", w.iter().copied(), Some(l)).unwrap();
        model::train(
            &[d(&["calon", "bagus"], Positive), d(&["bagus", "mantap"], Positive), d(&["calon", "buruk"], Negative)],
            &[Negative, Positive].into(),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_single_correct_doc() {
        let m = fixture_model();
        let gold = [Document::from_words("g", ["calon", "bagus"], Some(Positive)).unwrap()];
        assert_eq!(evaluate(&m, &gold).unwrap().accuracy, 1.0);
    }

    #[test]
    fn evaluate_errors() {
        let m = fixture_model();
        assert!(matches!(evaluate(&m, &[]), Err(Error::Evaluation(_))));
        let gold = [Document::from_words("g", ["biasa"], Some(Neutral)).unwrap()];
        assert!(matches!(evaluate(&m, &gold), Err(Error::UnknownLabel(Neutral))));
    }

    #[test]
    fn cross_validation_is_deterministic() {
        let mut all = Vec::new();
        for i in 0..20 {
            let (w, l) = if i % 2 == 0 { ("bagus", Positive) } else { ("buruk", Negative) };
            all.push(Document::from_words(format!("{i:02}"), [w, "calon"], Some(l)).unwrap());
        }
        let labels = [Negative, Positive].into();
        let a = cross_validate(all.clone(), &labels, 5, 7, OovPolicy::Smooth).unwrap();
        let b = cross_validate(all, &labels, 5, 7, OovPolicy::Smooth).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.fold_accuracies.len(), 5);
        assert_eq!(a.mean_accuracy, 1.0);
    }

    fn prediction(label: SentimentLabel) -> Prediction {
        Prediction {
            label,
            posteriors: BTreeMap::from([(label, 1.0)]),
            oov_tokens: 0,
        }
    }

    #[test]
    fn report_percentages() {
        let tags = HashtagSet::tracked_default();
        let preds: Vec<_> = [Positive, Positive, Positive, Negative]
            .into_iter()
            .enumerate()
            .map(|(i, l)| (Tweet::new(i.to_string(), "mantap #RidwanKamil"), prediction(l)))
            .collect();
        let reports = sentiment_report(&preds, &tags);
        assert_eq!(reports.len(), 2);
        assert_eq!(reports[0].group_key, ALL_GROUP);
        let rk = &reports[1];
        assert_eq!(rk.group_key, "ridwankamil");
        assert_eq!(rk.percentages[&Positive], 0.75);
        assert_eq!(rk.percentages[&Negative], 0.25);
    }

    #[test]
    fn report_empty_and_multi_group() {
        let tags = HashtagSet::tracked_default();
        let reports = sentiment_report(&[], &tags);
        assert_eq!(reports.len(), 1);
        assert_eq!(reports[0].total, 0);
        assert!(reports[0].percentages.is_empty());

        let preds = vec![(Tweet::new("1", "#pilgubjabar #ridwankamil keren"), prediction(Positive))];
        let keys: Vec<_> = sentiment_report(&preds, &tags).into_iter().map(|r| r.group_key).collect();
        assert_eq!(keys, vec!["all", "pilgubjabar", "ridwankamil"]);
    }

    #[test]
    fn report_csv_rows() {
        let tags = HashtagSet::tracked_default();
        let preds: Vec<_> = [Positive, Negative]
            .into_iter()
            .enumerate()
            .map(|(i, l)| (Tweet::new(i.to_string(), "#pilgubjabar"), prediction(l)))
            .collect();
        let csv = reports_to_csv(&sentiment_report(&preds, &tags)).unwrap();
        assert_eq!(
            csv,
            "group,total,negative,positive,neutral\nall,2,0.5,0.5,0\npilgubjabar,2,0.5,0.5,0\n"
        );
    }

    #[test]
    fn gold_csv() {
        let rows = read_gold_csv("id,label\n1,positive\n2, Negative\n".as_bytes()).unwrap();
        assert_eq!(rows, vec![("1".to_owned(), Positive), ("2".to_owned(), Negative)]);
        assert!(read_gold_csv("ident,label\n1,positive\n".as_bytes()).is_err());
        assert!(matches!(
            read_gold_csv("id,label\n1,happy\n".as_bytes()),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(read_gold_csv("id,label\n1,positive\n1,negative\n".as_bytes()).is_err());
    }
}
