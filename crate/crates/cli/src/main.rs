//! `tweetnb`: collect, train, classify, evaluate and report on tweet
//! sentiment.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod config;

use config::{EvalMode, Format, RunConfig};

#[derive(Parser)]
#[command(name = "tweetnb", version, about = "Tweet sentiment mining with multinomial Naive Bayes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Filter a tweet export by hashtag and language and label it from emoticons.
    Collect,
    /// Preprocess a labeled corpus and train a model.
    Train,
    /// Classify tweets with a saved model, one JSON line per tweet.
    Classify,
    /// Measure accuracy against gold labels, a holdout split or k folds.
    Eval,
    /// Per-hashtag sentiment percentages from a predictions file.
    Report,
}

/// Every option may also be given in the `--config` file (same name, `_`
/// instead of `-`); flags win.
#[derive(Args, Debug, Default)]
pub struct Flags {
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Tweet JSONL input (labeled corpus for `train` and holdout/kfold `eval`).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Model file (written by `train`, read by `classify`/`eval`).
    #[arg(long, global = true)]
    model: Option<PathBuf>,
    /// Labeled corpus output of `collect`.
    #[arg(long, global = true)]
    labeled: Option<PathBuf>,
    /// Unlabeled corpus output of `collect`.
    #[arg(long, global = true)]
    unlabeled: Option<PathBuf>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Gold labels CSV (`id,label`).
    #[arg(long, global = true)]
    gold: Option<PathBuf>,
    /// Predictions JSONL written by `classify`.
    #[arg(long, global = true)]
    predictions: Option<PathBuf>,
    /// Indonesian wordlist for the language filter.
    #[arg(long, global = true)]
    wordlist: Option<PathBuf>,
    /// File of tracked hashtags.
    #[arg(long = "hashtags-file", global = true)]
    hashtags_file: Option<PathBuf>,
    /// Comma-separated tracked hashtags.
    #[arg(long, global = true, value_delimiter = ',')]
    hashtags: Option<Vec<String>>,
    #[arg(long = "lang-threshold", global = true)]
    lang_threshold: Option<f64>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long = "train-fraction", global = true)]
    train_fraction: Option<f64>,
    #[arg(long, global = true, value_enum)]
    mode: Option<EvalMode>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Shorthand for `--format csv`.
    #[arg(long, global = true)]
    csv: bool,
    /// Scoring of out-of-vocabulary tokens: smooth or skip.
    #[arg(long, global = true)]
    oov: Option<String>,
    #[arg(long = "disable-stopwords", global = true)]
    disable_stopwords: bool,
    #[arg(long = "enable-pos", global = true)]
    enable_pos: bool,
    #[arg(long = "disable-stemming", global = true)]
    disable_stemming: bool,
    #[arg(long, global = true)]
    stopwords: Option<PathBuf>,
    #[arg(long = "pos-lexicon", global = true)]
    pos_lexicon: Option<PathBuf>,
    #[arg(long = "stem-dictionary", global = true)]
    stem_dictionary: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    let result = RunConfig::resolve(&cli.flags).and_then(|config| match cli.command {
        Command::Collect => commands::collect(&config),
        Command::Train => commands::train(&config),
        Command::Classify => commands::classify(&config),
        Command::Eval => commands::eval(&config),
        Command::Report => commands::report(&config),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
