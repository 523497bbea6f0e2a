mod args;

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, CorpusArgs, EvaluateArgs, FeaturesArgs, ModelArgs, PredictArgs, SynthArgs, TrainArgs, VocabArgs};
use speechact::corpus::{load_corpus_with, Corpus, LoadOptions};
use speechact::eval::{evaluate_granularity, EvalConfig, Provenance, ReportDocument, SelectionMode};
use speechact::features::{
    build_vocabulary, Analyzer, AnalyzerConfig, Blocklist, FeatureSubset,
    FeatureVocabulary, VocabConfig, Vectorizer,
};
use speechact::models::{
    load_model, save_model, train, LrConfig, ModelConfig, ModelKind, SvmConfig, TrainSet,
};
use speechact::synth::{generate, write_synth, SynthConfig};
use speechact::text::Lexicons;
use speechact::{Error, Granularity, SpeechAct};

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(msg) => Failure::Usage(msg),
            other => Failure::Core(other),
        }
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();

    let result = match &cli.command {
        Command::Train(a) => cmd_train(&cli, a),
        Command::Predict(a) => cmd_predict(a),
        Command::Evaluate(a) => cmd_evaluate(&cli, a),
        Command::Features(a) => cmd_features(a),
        Command::Synth(a) => cmd_synth(&cli, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_numerical() { 4 } else { 3 })
        }
    }
}

fn lexicons(dir: Option<&Path>) -> CliResult<Lexicons> {
    Ok(match dir {
        Some(dir) => Lexicons::load_dir(dir)?,
        None => Lexicons::bundled(),
    })
}

fn load_input(input: &CorpusArgs, allow_empty: bool) -> CliResult<Corpus> {
    let corpus = load_corpus_with(
        &input.corpus,
        input.parses.as_deref(),
        LoadOptions { allow_empty },
    )?;
    let missing = corpus.missing_parses();
    if missing > 0 && !corpus.is_empty() {
        log::warn!("{missing} of {} tweets have no parse; their sub-tree and POS features stay off", corpus.len());
    }
    Ok(corpus)
}

fn vocab_settings(args: &VocabArgs) -> CliResult<(VocabConfig, AnalyzerConfig)> {
    let blocklist = match &args.blocklist {
        Some(path) => Blocklist::load(path)?,
        None => Blocklist::bundled(),
    };
    if args.n_max == 0 {
        return Err(Failure::Usage("--n-max must be at least 1".into()));
    }
    Ok((
        VocabConfig {
            k_ngram: args.k_ngram,
            k_subtree: args.k_subtree,
            min_count: args.min_count,
            blocklist,
        },
        AnalyzerConfig {
            n_max: args.n_max,
            include_siblings: !args.no_siblings,
        },
    ))
}

fn model_config(kind: ModelKind, args: &ModelArgs, seed: u64) -> ModelConfig {
    match kind {
        ModelKind::Baseline => ModelConfig::Baseline,
        ModelKind::NaiveBayes => ModelConfig::NaiveBayes,
        ModelKind::LogisticRegression => ModelConfig::LogisticRegression(LrConfig {
            lambda: args.lambda,
            tol: args.tol,
            max_iter: args.max_iter,
        }),
        ModelKind::LinearSvm => ModelConfig::LinearSvm(SvmConfig {
            lambda: args.lambda,
            epochs: args.epochs,
            seed,
        }),
    }
}

/// Parses a comma-separated list; `all` expands to `every`.
fn parse_list<T: FromStr<Err = Error> + Copy + PartialEq>(text: &str, every: &[T]) -> CliResult<Vec<T>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if item.eq_ignore_ascii_case("all") && every.len() > 1 {
            for v in every {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
            continue;
        }
        let v = item.parse::<T>()?;
        if !out.contains(&v) {
            out.push(v);
        }
    }
    if out.is_empty() {
        return Err(Failure::Usage(format!("empty list {text:?}")));
    }
    Ok(out)
}

fn with_extension(path: &Path, ext: &str) -> PathBuf {
    path.with_extension(ext)
}

fn group_table(vocab: &FeatureVocabulary) -> String {
    let mut out = String::new();
    writeln!(out, "{:<22}{:>8}", "group", "columns").unwrap();
    for (group, n) in vocab.group_sizes() {
        writeln!(out, "{:<22}{n:>8}", group.name()).unwrap();
    }
    writeln!(out, "{:<22}{:>8}", "semantic", vocab.semantic_len()).unwrap();
    writeln!(out, "{:<22}{:>8}", "syntactic", vocab.syntactic_len()).unwrap();
    writeln!(out, "{:<22}{:>8}", "total", vocab.len()).unwrap();
    out
}

fn cmd_train(cli: &Cli, args: &TrainArgs) -> CliResult {
    let kind: ModelKind = args.classifier.parse()?;
    let subset: FeatureSubset = args.features.parse()?;
    let corpus = load_input(&args.input, false)?;
    let (vocab_config, analyzer_config) = vocab_settings(&args.vocab)?;
    let analyzer = Analyzer::new(lexicons(args.input.lexicons.as_deref())?, analyzer_config);
    let vocab = build_vocabulary(&corpus, &vocab_config, &analyzer)?.restrict(subset)?;
    let vectorizer = Vectorizer::new(&vocab);
    let x: Vec<_> = corpus
        .iter()
        .map(|t| vectorizer.vectorize(&analyzer.analyze(t)))
        .collect();
    let y = corpus.labels()?;
    let config = model_config(kind, &args.model_args, cli.seed);
    let model = train(TrainSet::new(&x, &y, vocab.len())?, &config, vocab.fingerprint())?;
    let vocab_path = args
        .vocab_out
        .clone()
        .unwrap_or_else(|| with_extension(&args.model, "vocab"));
    save_model(&model, &args.model)?;
    vocab.save(&vocab_path)?;
    print!("{}", group_table(&vocab));
    if let Some(reason) = model.summary.stop_reason {
        println!(
            "{} stopped after {} iterations ({reason:?})",
            kind.short(),
            model.summary.iterations.unwrap_or(0)
        );
    }
    Ok(())
}

#[derive(Serialize)]
struct Scores {
    assertion: f64,
    recommendation: f64,
    expression: f64,
    question: f64,
    request: f64,
    miscellaneous: f64,
}

#[derive(Serialize)]
struct PredictionRecord<'a> {
    id: &'a str,
    predicted: SpeechAct,
    scores: Scores,
}

fn cmd_predict(args: &PredictArgs) -> CliResult {
    let model = load_model(&args.model)?;
    let vocab_path = args
        .vocab
        .clone()
        .unwrap_or_else(|| with_extension(&args.model, "vocab"));
    let vocab = FeatureVocabulary::load(&vocab_path)?;
    model.check_vocabulary(&vocab)?;
    let lexicons = lexicons(args.input.lexicons.as_deref())?;
    let header = vocab.header();
    if lexicons.fingerprint() != header.lexicon_fingerprint {
        return Err(Failure::Core(Error::FingerprintMismatch {
            expected: header.lexicon_fingerprint.clone(),
            actual: lexicons.fingerprint(),
        }));
    }
    let analyzer = Analyzer::new(
        lexicons,
        AnalyzerConfig {
            n_max: header.n_max,
            include_siblings: header.include_siblings,
        },
    );
    let corpus = load_input(&args.input, true)?;
    let vectorizer = Vectorizer::new(&vocab);
    let mut out = String::new();
    for tweet in &corpus {
        let s = model.scores(&vectorizer.vectorize(&analyzer.analyze(tweet)))?;
        let record = PredictionRecord {
            id: &tweet.id,
            predicted: speechact::models::argmax(&s),
            scores: Scores {
                assertion: s[0],
                recommendation: s[1],
                expression: s[2],
                question: s[3],
                request: s[4],
                miscellaneous: s[5],
            },
        };
        out.push_str(&serde_json::to_string(&record).expect("record serializes"));
        out.push('\n');
    }
    emit(args.output.as_deref(), &out)
}

fn emit(path: Option<&Path>, text: &str) -> CliResult {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| {
            Failure::Core(Error::Io {
                path: path.to_path_buf(),
                source,
            })
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Failure::Core(Error::Io {
                    path: "<stdout>".into(),
                    source: e,
                })),
                _ => Ok(()),
            }
        }
    }
}

/// Everything that determines an evaluation's numbers, echoed into its report.
#[derive(Serialize)]
struct EffectiveConfig {
    seed: u64,
    folds: usize,
    stratified: bool,
    selection: SelectionMode,
    classifiers: Vec<ModelConfig>,
    features: Vec<FeatureSubset>,
    granularities: Vec<Granularity>,
    k_ngram: usize,
    k_subtree: usize,
    min_count: usize,
    n_max: usize,
    include_siblings: bool,
    blocklist: Vec<String>,
}

fn cmd_evaluate(cli: &Cli, args: &EvaluateArgs) -> CliResult {
    let kinds: Vec<ModelKind> = parse_list(&args.classifier, &ModelKind::ALL)?;
    // Here `all` names the combined feature set, not every subset.
    let subsets: Vec<FeatureSubset> = parse_list(&args.features, &[FeatureSubset::All])?;
    let granularities: Vec<Granularity> = parse_list(&args.granularity, &Granularity::ALL)?;
    if args.folds < 2 {
        return Err(Failure::Usage(format!("--folds must be at least 2, got {}", args.folds)));
    }
    let corpus = load_input(&args.input, false)?;
    let (vocab_config, analyzer_config) = vocab_settings(&args.vocab)?;
    let analyzer = Analyzer::new(lexicons(args.input.lexicons.as_deref())?, analyzer_config);
    let selection = if args.whole_corpus_selection {
        SelectionMode::WholeCorpus
    } else {
        SelectionMode::PerFold
    };
    let configs: Vec<ModelConfig> = kinds
        .iter()
        .map(|&k| model_config(k, &args.model_args, cli.seed))
        .collect();

    let effective = EffectiveConfig {
        seed: cli.seed,
        folds: args.folds,
        stratified: !args.no_stratify,
        selection,
        classifiers: configs.clone(),
        features: subsets.clone(),
        granularities: granularities.clone(),
        k_ngram: vocab_config.k_ngram,
        k_subtree: vocab_config.k_subtree,
        min_count: vocab_config.min_count,
        n_max: analyzer_config.n_max,
        include_siblings: analyzer_config.include_siblings,
        blocklist: vocab_config.blocklist.terms().collect(),
    };
    let provenance = Provenance::new(corpus.fingerprint(), analyzer.lexicons().fingerprint(), &effective);
    let title = match (kinds.len() > 1, subsets.len() > 1, granularities.len() > 1) {
        (_, false, true) => "F1 by granularity",
        (_, true, false) => "F1 by feature set",
        (true, false, false) => "F1 by classifier",
        _ => "F1",
    };
    let mut doc = ReportDocument::new(title, provenance);
    for &granularity in &granularities {
        for &subset in &subsets {
            for config in &configs {
                let eval = EvalConfig {
                    k: args.folds,
                    stratified: !args.no_stratify,
                    seed: cli.seed,
                    model: *config,
                    subset,
                    selection,
                    vocab: vocab_config.clone(),
                    jobs: cli.jobs,
                };
                log::info!("evaluating {} / {subset} / {granularity}", config.kind());
                let report = evaluate_granularity(&corpus, &analyzer, &eval, granularity)?;
                let mut label = vec![config.kind().short().to_string()];
                if subsets.len() > 1 {
                    label.push(subset.name().to_string());
                }
                if granularities.len() > 1 {
                    label.push(granularity.name().to_string());
                }
                doc.push(label.join(" "), report);
            }
        }
    }
    print!("{}", doc.render_table());
    if let Some(path) = &args.report {
        doc.save(path)?;
    }
    Ok(())
}

fn cmd_features(args: &FeaturesArgs) -> CliResult {
    let corpus = load_input(&args.input, false)?;
    let (vocab_config, analyzer_config) = vocab_settings(&args.vocab)?;
    let analyzer = Analyzer::new(lexicons(args.input.lexicons.as_deref())?, analyzer_config);
    let vocab = build_vocabulary(&corpus, &vocab_config, &analyzer)?;
    if let Some(path) = &args.vocab_out {
        vocab.save(path)?;
    }
    let mut out = String::from("column\tgroup\tkey\tscore\n");
    for (i, f) in vocab.features().iter().enumerate() {
        let score = match vocab.score(i) {
            Some(s) => format!("{s:.6}"),
            None => "-".into(),
        };
        writeln!(out, "{i}\t{}\t{}\t{score}", f.group, f.key).unwrap();
    }
    emit(args.output.as_deref(), &out)?;
    if args.output.is_some() {
        print!("{}", group_table(&vocab));
    }
    Ok(())
}

fn cmd_synth(cli: &Cli, args: &SynthArgs) -> CliResult {
    let corpus = generate(&SynthConfig {
        size: args.size,
        seed: cli.seed,
        topic_rotated: args.topic_rotated,
    })?;
    write_synth(&corpus, &args.out)?;
    println!("wrote {} tweets to {}", corpus.len(), args.out.display());
    Ok(())
}
