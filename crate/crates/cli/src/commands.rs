use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use tweetnb_core::corpus::{self, CollectConfig};
use tweetnb_core::eval::{self, CrossValidation};
use tweetnb_core::model::{self, NbModel};
use tweetnb_core::{CorpusStats, Document, Error, EvalMetrics, PipelineConfig, Prediction, SentimentLabel, SentimentReport, Tweet};

use crate::config::{required, EvalMode, Format, RunConfig};

/// One line of a predictions file.
#[derive(Debug, Serialize, Deserialize)]
struct PredictionRecord {
    id: String,
    #[serde(flatten)]
    prediction: Prediction,
}

fn open(path: &Path) -> Result<File> {
    File::open(path).with_context(|| format!("opening {}", path.display()))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

/// Data goes to `--output` when given, stdout otherwise.
fn emit(config: &RunConfig, text: &str) -> Result<()> {
    match &config.output {
        Some(path) => write_file(path, text.as_bytes()),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn no_csv(config: &RunConfig, command: &str) -> Result<()> {
    if config.format == Format::Csv {
        bail!("--format csv is only supported by `report`, not `{command}`");
    }
    Ok(())
}

fn all_labels() -> BTreeSet<SentimentLabel> {
    SentimentLabel::ALL.into_iter().collect()
}

/// Reads tweets leniently. An input with no valid tweets yields an empty list.
fn read_tweets(path: &Path) -> Result<Vec<Tweet>> {
    match corpus::ingest_jsonl(open(path)?) {
        Ok((tweets, _)) => Ok(tweets),
        Err(Error::EmptyCorpus) => Ok(Vec::new()),
        Err(e) => Err(e).with_context(|| format!("reading {}", path.display())),
    }
}

fn labeled_documents(path: &Path, pipeline: &PipelineConfig) -> Result<Vec<Document>> {
    let tweets = corpus::read_labeled_jsonl(open(path)?).with_context(|| format!("reading {}", path.display()))?;
    let mut docs = Vec::with_capacity(tweets.len());
    let mut empty = 0;
    for t in &tweets {
        let doc = pipeline
            .process_labeled(t)
            .with_context(|| format!("{}: tweet {}", path.display(), t.tweet().id))?;
        if doc.is_empty() {
            empty += 1;
        } else {
            docs.push(doc);
        }
    }
    if empty > 0 {
        log::warn!("{empty} of {} labeled tweets have no tokens after preprocessing and were dropped", tweets.len());
    }
    Ok(docs)
}

fn load_model(path: &Path) -> Result<NbModel> {
    model::load_model(BufReader::new(open(path)?)).with_context(|| format!("loading model {}", path.display()))
}

pub fn collect(config: &RunConfig) -> Result<()> {
    config.require(
        &[("input", &config.input), ("labeled", &config.labeled), ("unlabeled", &config.unlabeled)],
        &[&config.input, &config.wordlist_path, &config.hashtags_path],
    )?;
    no_csv(config, "collect")?;
    let collect_config = CollectConfig {
        hashtags: config.hashtag_set()?,
        wordlist: config.wordlist()?,
        lang_threshold: config.lang_threshold,
    };
    let input = required(&config.input, "input")?;
    let (tweets, ingest_stats) =
        corpus::ingest_jsonl(open(input)?).with_context(|| format!("reading {}", input.display()))?;
    let collected = corpus::collect(tweets, ingest_stats, &collect_config)?;

    let mut labeled = Vec::new();
    corpus::write_labeled_jsonl(&mut labeled, &collected.labeled)?;
    let mut unlabeled = Vec::new();
    corpus::write_tweets_jsonl(&mut unlabeled, &collected.unlabeled)?;
    write_file(required(&config.labeled, "labeled")?, &labeled)?;
    write_file(required(&config.unlabeled, "unlabeled")?, &unlabeled)?;

    let text = match config.format {
        Format::Json => to_json(&collected.stats)?,
        _ => stats_table(&collected.stats),
    };
    emit(config, &text)
}

fn stats_table(s: &CorpusStats) -> String {
    let rows = [
        ("total_ingested", s.total_ingested),
        ("rejected_malformed", s.rejected_malformed),
        ("rejected_hashtag", s.rejected_hashtag),
        ("rejected_language", s.rejected_language),
        ("rejected_ambiguous_emoticon", s.rejected_ambiguous_emoticon),
        ("labeled_positive", s.labeled_positive),
        ("labeled_negative", s.labeled_negative),
        ("unlabeled", s.unlabeled),
        ("over_length", s.over_length),
    ];
    rows.iter().fold(String::new(), |mut out, (k, v)| {
        let _ = writeln!(out, "{k:<28}{v:>8}");
        out
    })
}

#[derive(Serialize)]
struct TrainSummary {
    documents: u64,
    vocabulary: usize,
    labels: Vec<SentimentLabel>,
    docs_per_class: Vec<(SentimentLabel, u64)>,
}

pub fn train(config: &RunConfig) -> Result<()> {
    config.require(&[("input", &config.input), ("model", &config.model)], &[&config.input])?;
    no_csv(config, "train")?;
    let pipeline = config.pipeline.load()?;
    let docs = labeled_documents(required(&config.input, "input")?, &pipeline)?;
    let trained = model::train(&docs, &all_labels()).context("training failed")?;

    let mut bytes = Vec::new();
    model::save_model(&trained, &mut bytes)?;
    write_file(required(&config.model, "model")?, &bytes)?;

    let summary = TrainSummary {
        documents: trained.total_docs(),
        vocabulary: trained.vocabulary().len(),
        labels: trained.labels().to_vec(),
        docs_per_class: trained
            .labels()
            .iter()
            .map(|&l| Ok((l, trained.docs_in_class(l)?)))
            .collect::<Result<_, Error>>()?,
    };
    let text = match config.format {
        Format::Json => to_json(&summary)?,
        _ => {
            let mut out = format!("documents   {}\nvocabulary  {}\n", summary.documents, summary.vocabulary);
            for (l, n) in &summary.docs_per_class {
                let _ = writeln!(out, "{:<12}{n}", l.as_str());
            }
            out
        }
    };
    emit(config, &text)
}

pub fn classify(config: &RunConfig) -> Result<()> {
    config.require(&[("input", &config.input), ("model", &config.model)], &[&config.input, &config.model])?;
    let pipeline = config.pipeline.load()?;
    let nb = load_model(required(&config.model, "model")?)?;
    let tweets = read_tweets(required(&config.input, "input")?)?;

    let mut out = String::new();
    for tweet in &tweets {
        let doc = pipeline.process(tweet).with_context(|| format!("tweet {}", tweet.id))?;
        let record = PredictionRecord {
            id: tweet.id.clone(),
            prediction: nb.classify_with(&doc, config.oov),
        };
        out.push_str(&serde_json::to_string(&record)?);
        out.push('\n');
    }
    emit(config, &out)
}

pub fn eval(config: &RunConfig) -> Result<()> {
    match config.mode {
        EvalMode::Gold => {
            config.require(
                &[("input", &config.input), ("model", &config.model), ("gold", &config.gold)],
                &[&config.input, &config.model, &config.gold],
            )?;
        }
        EvalMode::Holdout | EvalMode::Kfold => {
            config.require(&[("input", &config.input)], &[&config.input])?;
        }
    }
    no_csv(config, "eval")?;
    let pipeline = config.pipeline.load()?;
    let input = required(&config.input, "input")?;

    let metrics = match config.mode {
        EvalMode::Gold => gold_metrics(config, &pipeline, input)?,
        EvalMode::Holdout => {
            let docs = labeled_documents(input, &pipeline)?;
            let (train, test) = eval::split(docs, config.train_fraction, config.seed)?;
            let nb = model::train(&train, &all_labels()).context("training failed")?;
            let test = known_labels(&nb, test);
            eval::evaluate_with(&nb, &test, config.oov)?
        }
        EvalMode::Kfold => {
            let docs = labeled_documents(input, &pipeline)?;
            let cv = eval::cross_validate(docs, &all_labels(), config.k, config.seed, config.oov)?;
            let text = match config.format {
                Format::Json => to_json(&cv)?,
                _ => cv_table(&cv),
            };
            return emit(config, &text);
        }
    };
    let text = match config.format {
        Format::Json => to_json(&metrics)?,
        _ => metrics.to_table(),
    };
    emit(config, &text)
}

/// Test documents whose label the model never saw cannot be scored.
fn known_labels(nb: &NbModel, docs: Vec<Document>) -> Vec<Document> {
    let before = docs.len();
    let docs: Vec<_> = docs.into_iter().filter(|d| d.label.is_some_and(|l| nb.has_label(l))).collect();
    if docs.len() < before {
        log::warn!("{} test documents carry a label absent from training and were excluded", before - docs.len());
    }
    docs
}

fn gold_metrics(config: &RunConfig, pipeline: &PipelineConfig, input: &Path) -> Result<EvalMetrics> {
    let gold_path = required(&config.gold, "gold")?;
    let gold = eval::read_gold_csv(open(gold_path)?).with_context(|| format!("reading {}", gold_path.display()))?;
    let nb = load_model(required(&config.model, "model")?)?;
    let tweets: HashMap<String, Tweet> = read_tweets(input)?.into_iter().map(|t| (t.id.clone(), t)).collect();

    let missing: Vec<&str> = gold.iter().filter(|(id, _)| !tweets.contains_key(id)).map(|(id, _)| id.as_str()).collect();
    if !missing.is_empty() {
        log::warn!("{} gold ids not found in {} and excluded: {}", missing.len(), input.display(), missing.join(", "));
    }
    let mut pairs = Vec::new();
    for (id, label) in &gold {
        let Some(tweet) = tweets.get(id) else { continue };
        let doc = pipeline.process(tweet).with_context(|| format!("tweet {id}"))?;
        pairs.push((*label, nb.classify_with(&doc, config.oov).label));
    }
    if pairs.is_empty() {
        bail!("none of the {} gold ids occur in {}", gold.len(), input.display());
    }
    // Gold may use labels the model lacks (typically neutral); they stay in
    // the matrix as rows the model can never hit.
    let labels: Vec<SentimentLabel> = SentimentLabel::ALL
        .into_iter()
        .filter(|l| nb.has_label(*l) || gold.iter().any(|(_, g)| g == l))
        .collect();
    Ok(EvalMetrics::from_pairs(&labels, pairs)?)
}

fn cv_table(cv: &CrossValidation) -> String {
    let mut out = String::from("fold  accuracy\n");
    for (i, a) in cv.fold_accuracies.iter().enumerate() {
        let _ = writeln!(out, "{:<6}{a:.4}", i + 1);
    }
    let _ = writeln!(
        out,
        "\nmean accuracy  {:.4}  (range {:.4} - {:.4}, k = {}, seed = {})",
        cv.mean_accuracy, cv.min_accuracy, cv.max_accuracy, cv.k, cv.seed
    );
    out
}

fn read_predictions(path: &Path) -> Result<Vec<PredictionRecord>> {
    let mut out = Vec::new();
    for (i, line) in BufReader::new(open(path)?).lines().enumerate() {
        let line = line.with_context(|| format!("reading {}", path.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        let record = serde_json::from_str(&line).with_context(|| format!("{}:{}", path.display(), i + 1))?;
        out.push(record);
    }
    Ok(out)
}

pub fn report(config: &RunConfig) -> Result<()> {
    config.require(
        &[("predictions", &config.predictions), ("input", &config.input)],
        &[&config.predictions, &config.input, &config.hashtags_path],
    )?;
    let groups = config.hashtag_set()?;
    let predictions = read_predictions(required(&config.predictions, "predictions")?)?;

    let reports = if predictions.is_empty() {
        Vec::new()
    } else {
        let input = required(&config.input, "input")?;
        let tweets: HashMap<String, Tweet> = read_tweets(input)?.into_iter().map(|t| (t.id.clone(), t)).collect();
        let mut items = Vec::with_capacity(predictions.len());
        let mut missing = 0;
        for p in &predictions {
            match tweets.get(&p.id) {
                Some(t) => items.push((t, p.prediction.label)),
                None => missing += 1,
            }
        }
        if missing > 0 {
            log::warn!("{missing} predictions have no matching tweet in {} and were skipped", input.display());
        }
        if items.is_empty() {
            Vec::new()
        } else {
            eval::sentiment_report_labels(&items, &groups)
        }
    };

    let text = match config.format {
        Format::Json => to_json(&reports)?,
        Format::Csv => eval::reports_to_csv(&reports)?,
        Format::Table => report_table(&reports),
    };
    emit(config, &text)
}

fn report_table(reports: &[SentimentReport]) -> String {
    let mut out = format!("{:<16}{:>8}", "group", "total");
    for l in SentimentLabel::ALL {
        let _ = write!(out, "{:>10}", l.as_str());
    }
    out.push('\n');
    for r in reports {
        let _ = write!(out, "{:<16}{:>8}", r.group_key, r.total);
        for l in SentimentLabel::ALL {
            let pct = r.percentages.get(&l).copied().unwrap_or(0.0) * 100.0;
            let _ = write!(out, "{:>9.2}%", pct);
        }
        out.push('\n');
    }
    out
}
