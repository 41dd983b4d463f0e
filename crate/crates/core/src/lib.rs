//! Tweet sentiment mining: emoticon distant labeling of tweet exports,
//! Indonesian text preprocessing, multinomial Naive Bayes classification and
//! evaluation against manual gold labels.
//!
//! ```
//! use tweetnb_core::{model, PipelineConfig, SentimentLabel, Tweet};
//!
//! let config = PipelineConfig::default();
//! let docs: Vec<_> = [("1", "calon bagus :)", SentimentLabel::Positive), ("2", "program buruk :(", SentimentLabel::Negative)]
//!     .into_iter()
//!     .map(|(id, text, label)| {
//!         let mut doc = config.process(&Tweet::new(id, text)).unwrap();
//!         doc.label = Some(label);
//!         doc
//!     })
//!     .collect();
//! let nb = model::train(&docs, &[SentimentLabel::Negative, SentimentLabel::Positive].into()).unwrap();
//! let doc = config.process(&Tweet::new("3", "bagus sekali")).unwrap();
//! assert_eq!(nb.classify(&doc).label, SentimentLabel::Positive);
//! ```

pub mod config;
pub mod corpus;
pub mod error;
pub mod eval;
pub mod lexicon;
pub mod model;
pub mod preprocess;
pub mod resources;
pub mod synthetic;

pub use corpus::{CorpusStats, LabelSource, LabeledTweet, SentimentLabel, Tweet};
pub use error::{Error, Result};
pub use eval::{EvalMetrics, SentimentReport};
pub use model::{NbModel, OovPolicy, Prediction};
pub use preprocess::{Document, PipelineConfig, Token};
