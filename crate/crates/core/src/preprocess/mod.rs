//! Tweet text normalization: cleansing, case folding, tokenization,
//! stopword removal, lexicon POS tagging, confix-stripping stemming and
//! unigram extraction.

mod pipeline;
mod pos;
mod stem;
mod text;
mod token;

pub use pipeline::{extract_unigrams, run_pipeline, PipelineConfig, PipelineTrace};
pub use pos::{pos_tag, PosTag, PosTaggedToken};
pub use stem::Stemmer;
pub use text::{case_fold, cleanse, tokenize};
pub use token::{remove_stopwords, Document, Token};
