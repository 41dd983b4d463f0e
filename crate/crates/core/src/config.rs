//! Flat `key = value` configuration files.
//!
//! One entry per line, `#` starts a comment line, keys are unique, booleans
//! are `true`/`false`, lists are comma separated.
//!
//! Pipeline keys:
//!
//! | key                    | default                | meaning                          |
//! |------------------------|------------------------|----------------------------------|
//! | `enable_stopwords`     | `true`                 | drop stopwords                   |
//! | `enable_pos`           | `false`                | filter tokens by POS tag         |
//! | `pos_keep_tags`        | `ADJ,VERB,NOUN,OTHER`  | tags kept when `enable_pos`      |
//! | `enable_stemming`      | `true`                 | confix-stripping stemmer         |
//! | `stopwords_path`       | bundled list           | stopword file                    |
//! | `pos_lexicon_path`     | bundled lexicon        | `word<TAB>TAG` file              |
//! | `stem_dictionary_path` | bundled roots          | root-word file                   |

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lexicon;
use crate::preprocess::{PipelineConfig, PosTag, Stemmer};
use crate::resources;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KvMap {
    entries: BTreeMap<String, (usize, String)>,
}

impl KvMap {
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (line, entry) in lexicon::entries(text) {
            let Some((key, value)) = entry.split_once('=') else {
                return Err(Error::Parse {
                    line,
                    message: format!("expected key = value, got {entry:?}"),
                });
            };
            let key = key.trim().to_owned();
            if key.is_empty() {
                return Err(Error::Parse { line, message: "empty key".into() });
            }
            if entries.insert(key.clone(), (line, value.trim().to_owned())).is_some() {
                return Err(Error::Parse { line, message: format!("duplicate key {key:?}") });
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&lexicon::read_to_string(path)?)
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }

    pub fn get_str(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    pub fn get_parsed<T: FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.entries
            .get(key)
            .map(|(line, v)| {
                v.parse::<T>().map_err(|e| Error::Parse {
                    line: *line,
                    message: format!("{key}: {e}"),
                })
            })
            .transpose()
    }

    pub fn get_bool(&self, key: &str) -> Result<Option<bool>> {
        self.get_parsed::<bool>(key)
    }

    pub fn get_list(&self, key: &str) -> Option<Vec<String>> {
        self.get_str(key).map(|v| {
            v.split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_owned)
                .collect()
        })
    }
}

/// Serializable pipeline configuration: stage toggles plus optional
/// resource paths (bundled data when absent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PipelineSettings {
    pub enable_stopwords: bool,
    pub enable_pos: bool,
    pub pos_keep_tags: BTreeSet<PosTag>,
    pub enable_stemming: bool,
    pub stopwords_path: Option<PathBuf>,
    pub pos_lexicon_path: Option<PathBuf>,
    pub stem_dictionary_path: Option<PathBuf>,
}

impl Default for PipelineSettings {
    fn default() -> Self {
        Self {
            enable_stopwords: true,
            enable_pos: false,
            pos_keep_tags: PipelineConfig::default_keep_tags(),
            enable_stemming: true,
            stopwords_path: None,
            pos_lexicon_path: None,
            stem_dictionary_path: None,
        }
    }
}

impl PipelineSettings {
    pub const KEYS: [&'static str; 7] = [
        "enable_stopwords",
        "enable_pos",
        "pos_keep_tags",
        "enable_stemming",
        "stopwords_path",
        "pos_lexicon_path",
        "stem_dictionary_path",
    ];

    /// Reads the pipeline keys from `kv`; other keys are left for the caller.
    pub fn from_kv(kv: &KvMap) -> Result<Self> {
        let mut s = Self::default();
        if let Some(v) = kv.get_bool("enable_stopwords")? {
            s.enable_stopwords = v;
        }
        if let Some(v) = kv.get_bool("enable_pos")? {
            s.enable_pos = v;
        }
        if let Some(tags) = kv.get_list("pos_keep_tags") {
            s.pos_keep_tags = tags
                .iter()
                .map(|t| t.parse::<PosTag>().map_err(Error::Config))
                .collect::<Result<_>>()?;
        }
        if let Some(v) = kv.get_bool("enable_stemming")? {
            s.enable_stemming = v;
        }
        s.stopwords_path = kv.get_str("stopwords_path").map(PathBuf::from);
        s.pos_lexicon_path = kv.get_str("pos_lexicon_path").map(PathBuf::from);
        s.stem_dictionary_path = kv.get_str("stem_dictionary_path").map(PathBuf::from);
        Ok(s)
    }

    pub fn to_kv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "enable_stopwords = {}", self.enable_stopwords);
        let _ = writeln!(out, "enable_pos = {}", self.enable_pos);
        let tags: Vec<_> = self.pos_keep_tags.iter().map(|t| t.as_str()).collect();
        let _ = writeln!(out, "pos_keep_tags = {}", tags.join(","));
        let _ = writeln!(out, "enable_stemming = {}", self.enable_stemming);
        let paths = [
            ("stopwords_path", &self.stopwords_path),
            ("pos_lexicon_path", &self.pos_lexicon_path),
            ("stem_dictionary_path", &self.stem_dictionary_path),
        ];
        for (key, path) in paths {
            if let Some(p) = path {
                let _ = writeln!(out, "{key} = {}", p.display());
            }
        }
        out
    }

    pub fn resource_paths(&self) -> impl Iterator<Item = &Path> {
        [&self.stopwords_path, &self.pos_lexicon_path, &self.stem_dictionary_path]
            .into_iter()
            .flatten()
            .map(PathBuf::as_path)
    }

    /// Loads resources and builds the runnable configuration.
    pub fn load(&self) -> Result<PipelineConfig> {
        let stopwords = match &self.stopwords_path {
            Some(p) => lexicon::parse_token_set(&lexicon::read_to_string(p)?)?,
            None => resources::stopwords(),
        };
        let pos_lexicon = match &self.pos_lexicon_path {
            Some(p) => lexicon::parse_pos_lexicon(&lexicon::read_to_string(p)?)?,
            None => resources::pos_lexicon(),
        };
        let stemmer = match &self.stem_dictionary_path {
            Some(p) => Stemmer::new(lexicon::parse_word_set(&lexicon::read_to_string(p)?)),
            None => resources::stemmer(),
        };
        Ok(PipelineConfig {
            stopwords,
            enable_stopwords: self.enable_stopwords,
            enable_pos: self.enable_pos,
            pos_keep_tags: self.pos_keep_tags.clone(),
            enable_stemming: self.enable_stemming,
            pos_lexicon,
            stemmer,
        })
    }
}
