//! Run configuration: built-in defaults, then the `--config` file, then
//! command-line flags.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use tweetnb_core::config::{KvMap, PipelineSettings};
use tweetnb_core::corpus::{HashtagSet, Wordlist, DEFAULT_LANG_THRESHOLD};
use tweetnb_core::eval::{DEFAULT_K, DEFAULT_SEED, DEFAULT_TRAIN_FRACTION};
use tweetnb_core::{lexicon, resources, OovPolicy};

use crate::Flags;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalMode {
    /// Compare a saved model against a gold-label CSV.
    Gold,
    /// Train/validation split of the labeled corpus.
    Holdout,
    /// k-fold cross-validation over the labeled corpus.
    Kfold,
}

impl FromStr for EvalMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        <Self as clap::ValueEnum>::from_str(s, true)
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: Option<PathBuf>,
    pub model: Option<PathBuf>,
    pub labeled: Option<PathBuf>,
    pub unlabeled: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub gold: Option<PathBuf>,
    pub predictions: Option<PathBuf>,
    pub wordlist_path: Option<PathBuf>,
    pub hashtags_path: Option<PathBuf>,
    pub hashtags: Option<Vec<String>>,
    pub lang_threshold: f64,
    pub seed: u64,
    pub k: usize,
    pub train_fraction: f64,
    pub mode: EvalMode,
    pub format: Format,
    pub oov: OovPolicy,
    pub pipeline: PipelineSettings,
}

const RUN_KEYS: [&str; 17] = [
    "input",
    "model",
    "labeled",
    "unlabeled",
    "output",
    "gold",
    "predictions",
    "wordlist_path",
    "hashtags_path",
    "hashtags",
    "lang_threshold",
    "seed",
    "k",
    "train_fraction",
    "mode",
    "format",
    "oov",
];

fn parsed<T: FromStr>(kv: &KvMap, key: &str) -> Result<Option<T>>
where
    T::Err: std::fmt::Display,
{
    Ok(kv.get_parsed(key)?)
}

impl RunConfig {
    pub fn resolve(flags: &Flags) -> Result<Self> {
        let kv = match &flags.config {
            Some(path) => KvMap::load(path).with_context(|| format!("reading config {}", path.display()))?,
            None => KvMap::default(),
        };
        let unknown: Vec<_> = kv
            .keys()
            .filter(|k| !RUN_KEYS.contains(k) && !PipelineSettings::KEYS.contains(k))
            .collect();
        if !unknown.is_empty() {
            bail!("unknown config keys: {}", unknown.join(", "));
        }

        let path = |flag: &Option<PathBuf>, key: &str| flag.clone().or_else(|| kv.get_str(key).map(PathBuf::from));
        let mut pipeline = PipelineSettings::from_kv(&kv)?;
        if flags.disable_stopwords {
            pipeline.enable_stopwords = false;
        }
        if flags.enable_pos {
            pipeline.enable_pos = true;
        }
        if flags.disable_stemming {
            pipeline.enable_stemming = false;
        }
        if flags.stopwords.is_some() {
            pipeline.stopwords_path = flags.stopwords.clone();
        }
        if flags.pos_lexicon.is_some() {
            pipeline.pos_lexicon_path = flags.pos_lexicon.clone();
        }
        if flags.stem_dictionary.is_some() {
            pipeline.stem_dictionary_path = flags.stem_dictionary.clone();
        }

        let format = if flags.csv {
            Format::Csv
        } else {
            flags.format.or(parsed(&kv, "format")?).unwrap_or(Format::Table)
        };

        Ok(Self {
            input: path(&flags.input, "input"),
            model: path(&flags.model, "model"),
            labeled: path(&flags.labeled, "labeled"),
            unlabeled: path(&flags.unlabeled, "unlabeled"),
            output: path(&flags.output, "output"),
            gold: path(&flags.gold, "gold"),
            predictions: path(&flags.predictions, "predictions"),
            wordlist_path: path(&flags.wordlist, "wordlist_path"),
            hashtags_path: path(&flags.hashtags_file, "hashtags_path"),
            hashtags: flags.hashtags.clone().or_else(|| kv.get_list("hashtags")),
            lang_threshold: flags
                .lang_threshold
                .or(parsed(&kv, "lang_threshold")?)
                .unwrap_or(DEFAULT_LANG_THRESHOLD),
            seed: flags.seed.or(parsed(&kv, "seed")?).unwrap_or(DEFAULT_SEED),
            k: flags.k.or(parsed(&kv, "k")?).unwrap_or(DEFAULT_K),
            train_fraction: flags
                .train_fraction
                .or(parsed(&kv, "train_fraction")?)
                .unwrap_or(DEFAULT_TRAIN_FRACTION),
            mode: flags.mode.or(parsed(&kv, "mode")?).unwrap_or(EvalMode::Gold),
            format,
            oov: match &flags.oov {
                Some(v) => v.parse().map_err(anyhow::Error::msg)?,
                None => parsed(&kv, "oov")?.unwrap_or_default(),
            },
            pipeline,
        })
    }

    /// Checks that every named option is set and every input file exists,
    /// reporting all problems at once.
    pub fn require(&self, required: &[(&str, &Option<PathBuf>)], optional_inputs: &[&Option<PathBuf>]) -> Result<()> {
        let mut problems = Vec::new();
        for (name, value) in required {
            if value.is_none() {
                problems.push(format!("missing required option --{name}"));
            }
        }
        let inputs = optional_inputs
            .iter()
            .copied()
            .flatten()
            .map(PathBuf::as_path)
            .chain(self.pipeline.resource_paths());
        for p in inputs {
            if !p.is_file() {
                problems.push(format!("input file not found: {}", p.display()));
            }
        }
        if !problems.is_empty() {
            bail!("invalid configuration:\n  {}", problems.join("\n  "));
        }
        Ok(())
    }

    pub fn hashtag_set(&self) -> Result<HashtagSet> {
        Ok(match (&self.hashtags, &self.hashtags_path) {
            (Some(tags), _) => HashtagSet::new(tags)?,
            (None, Some(path)) => HashtagSet::parse(&lexicon::read_to_string(path)?)?,
            (None, None) => resources::hashtags(),
        })
    }

    pub fn wordlist(&self) -> Result<Wordlist> {
        Ok(match &self.wordlist_path {
            Some(path) => Wordlist::parse(&lexicon::read_to_string(path)?)?,
            None => resources::wordlist(),
        })
    }
}

pub fn required<'a>(p: &'a Option<PathBuf>, what: &str) -> Result<&'a Path> {
    p.as_deref().with_context(|| format!("missing required option --{what}"))
}
