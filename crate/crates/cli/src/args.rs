use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "speechact", version, about = "Speech-act classification for tweets")]
pub struct Cli {
    /// Seed for fold shuffling, SVM sampling and synthesis.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// Maximum number of folds evaluated concurrently.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a classifier and write the model and its vocabulary.
    Train(TrainArgs),
    /// Label tweets with a trained model.
    Predict(PredictArgs),
    /// Cross-validate classifiers, feature subsets and granularities.
    Evaluate(EvaluateArgs),
    /// Build the vocabulary of a corpus and dump it with selection scores.
    Features(FeaturesArgs),
    /// Generate a synthetic labeled corpus with parses.
    Synth(SynthArgs),
}

#[derive(Debug, Args, Clone)]
pub struct CorpusArgs {
    /// Line-delimited JSON corpus.
    #[arg(long)]
    pub corpus: PathBuf,

    /// Dependency-parse sidecar for the corpus.
    #[arg(long)]
    pub parses: Option<PathBuf>,

    /// Directory holding opinion.txt, vulgar.txt, emoticons.txt,
    /// speech_act_verbs.txt and abbreviations.txt [default: bundled lists]
    #[arg(long)]
    pub lexicons: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct VocabArgs {
    /// Topic terms excluded from selection [default: bundled list]
    #[arg(long)]
    pub blocklist: Option<PathBuf>,

    /// Number of n-grams kept after selection.
    #[arg(long, default_value_t = 1415)]
    pub k_ngram: usize,

    /// Number of sub-trees kept after selection.
    #[arg(long, default_value_t = 1655)]
    pub k_subtree: usize,

    /// Minimum number of training tweets containing a candidate.
    #[arg(long, default_value_t = 5)]
    pub min_count: usize,

    /// Longest n-gram.
    #[arg(long, default_value_t = 3)]
    pub n_max: usize,

    /// Restrict two-edge sub-trees to chains (drop sibling pairs).
    #[arg(long)]
    pub no_siblings: bool,
}

#[derive(Debug, Args, Clone)]
pub struct ModelArgs {
    /// L2 strength for logistic regression and the SVM [default: 1/|train|]
    #[arg(long)]
    pub lambda: Option<f64>,

    /// Gradient infinity-norm tolerance for logistic regression.
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,

    /// Iteration cap for logistic regression.
    #[arg(long, default_value_t = 500)]
    pub max_iter: usize,

    /// Passes over the training data for the SVM.
    #[arg(long, default_value_t = 20)]
    pub epochs: usize,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[command(flatten)]
    pub input: CorpusArgs,

    #[command(flatten)]
    pub vocab: VocabArgs,

    #[command(flatten)]
    pub model_args: ModelArgs,

    /// baseline, nb, lr or svm.
    #[arg(long, default_value = "lr")]
    pub classifier: String,

    /// all, semantic or syntactic.
    #[arg(long, default_value = "all")]
    pub features: String,

    /// Where to write the model.
    #[arg(long)]
    pub model: PathBuf,

    /// Where to write the vocabulary [default: model path with .vocab]
    #[arg(long)]
    pub vocab_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub input: CorpusArgs,

    #[arg(long)]
    pub model: PathBuf,

    /// Vocabulary written by `train` [default: model path with .vocab]
    #[arg(long)]
    pub vocab: Option<PathBuf>,

    /// Output file for the labeled records [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub input: CorpusArgs,

    #[command(flatten)]
    pub vocab: VocabArgs,

    #[command(flatten)]
    pub model_args: ModelArgs,

    /// Comma-separated classifiers, or `all`.
    #[arg(long, default_value = "lr")]
    pub classifier: String,

    /// Comma-separated feature sets: semantic, syntactic, all (combined).
    #[arg(long, default_value = "all")]
    pub features: String,

    /// Comma-separated granularities (twitter_wide, by_type, by_topic), or `all`.
    #[arg(long, default_value = "twitter_wide")]
    pub granularity: String,

    /// Number of folds.
    #[arg(long, default_value_t = 20)]
    pub folds: usize,

    /// Assign folds without preserving class proportions.
    #[arg(long)]
    pub no_stratify: bool,

    /// Select n-grams and sub-trees once on the whole corpus instead of per fold.
    #[arg(long)]
    pub whole_corpus_selection: bool,

    /// Machine-readable report file.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    #[command(flatten)]
    pub input: CorpusArgs,

    #[command(flatten)]
    pub vocab: VocabArgs,

    /// Also write the vocabulary file loadable by `predict`.
    #[arg(long)]
    pub vocab_out: Option<PathBuf>,

    /// Output file for the column dump [default: stdout]
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Number of tweets (at least 120).
    #[arg(long, default_value_t = 600)]
    pub size: usize,

    /// Output directory for corpus.jsonl, parses.conll and blocklist.txt.
    #[arg(long)]
    pub out: PathBuf,

    /// Make every cue's class depend on the topic.
    #[arg(long)]
    pub topic_rotated: bool,
}
