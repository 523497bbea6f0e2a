use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn speechact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_speechact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn synth_into(dir: &Path, size: &str) {
    let out = speechact(&["synth", "--size", size, "--out", p(dir)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

fn train(dir: &Path, classifier: &str, model: &Path) {
    let out = speechact(&[
        "train",
        "--corpus", p(&dir.join("corpus.jsonl")),
        "--parses", p(&dir.join("parses.conll")),
        "--blocklist", p(&dir.join("blocklist.txt")),
        "--classifier", classifier,
        "--model", p(model),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn missing_required_arguments_are_usage_errors() {
    assert_eq!(speechact(&["evaluate"]).status.code(), Some(2));
    assert_eq!(speechact(&["evaluate", "--corpus", "x.jsonl", "--folds", "1"]).status.code(), Some(2));
}

#[test]
fn unreadable_corpus_is_a_data_error() {
    let out = speechact(&["features", "--corpus", "/nonexistent/corpus.jsonl"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn predict_recovers_training_labels_and_checks_the_vocabulary() {
    let dir = tempfile::tempdir().unwrap();
    synth_into(dir.path(), "240");
    let model = dir.path().join("lr.model");
    train(dir.path(), "lr", &model);

    let out = speechact(&[
        "predict",
        "--corpus", p(&dir.path().join("corpus.jsonl")),
        "--parses", p(&dir.path().join("parses.conll")),
        "--model", p(&model),
    ]);
    assert!(out.status.success());
    let corpus = fs::read_to_string(dir.path().join("corpus.jsonl")).unwrap();
    let mut right = 0;
    let lines: Vec<String> = stdout(&out).lines().map(String::from).collect();
    assert_eq!(lines.len(), corpus.lines().count());
    for (pred, truth) in lines.iter().zip(corpus.lines()) {
        let pred: serde_json::Value = serde_json::from_str(pred).unwrap();
        let truth: serde_json::Value = serde_json::from_str(truth).unwrap();
        assert_eq!(pred["id"], truth["id"]);
        assert_eq!(pred["scores"].as_object().unwrap().len(), 6);
        right += usize::from(pred["predicted"] == truth["label"]);
    }
    assert!(right * 100 >= lines.len() * 95, "{right} of {} correct", lines.len());

    // A vocabulary from another run must be refused.
    let other = tempfile::tempdir().unwrap();
    let out = speechact(&["synth", "--size", "240", "--seed", "9", "--out", p(other.path())]);
    assert!(out.status.success());
    let other_model = other.path().join("nb.model");
    train(other.path(), "nb", &other_model);
    let out = speechact(&[
        "predict",
        "--corpus", p(&dir.path().join("corpus.jsonl")),
        "--model", p(&model),
        "--vocab", p(&other_model.with_extension("vocab")),
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn empty_prediction_input_gives_empty_output() {
    let dir = tempfile::tempdir().unwrap();
    synth_into(dir.path(), "120");
    let model = dir.path().join("nb.model");
    train(dir.path(), "nb", &model);
    let empty = dir.path().join("empty.jsonl");
    fs::write(&empty, "").unwrap();
    let out = speechact(&["predict", "--corpus", p(&empty), "--model", p(&model)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
}

#[test]
fn zero_caps_leave_only_the_fixed_columns() {
    let dir = tempfile::tempdir().unwrap();
    synth_into(dir.path(), "120");
    let out = speechact(&[
        "features",
        "--corpus", p(&dir.path().join("corpus.jsonl")),
        "--k-ngram", "0",
        "--k-subtree", "0",
    ]);
    assert!(out.status.success());
    // Header line plus one line per column.
    assert_eq!(stdout(&out).lines().count(), 1 + 243);
}

#[test]
fn evaluate_prints_one_row_per_configuration() {
    let dir = tempfile::tempdir().unwrap();
    synth_into(dir.path(), "240");
    let report = dir.path().join("report.json");
    let out = speechact(&[
        "evaluate",
        "--corpus", p(&dir.path().join("corpus.jsonl")),
        "--parses", p(&dir.path().join("parses.conll")),
        "--classifier", "baseline,nb",
        "--features", "semantic,all",
        "--folds", "10",
        "--report", p(&report),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let table = stdout(&out);
    for header in ["As", "Ex", "Qu", "Rc", "Rq", "Mis", "Avg"] {
        assert!(table.contains(header), "{table}");
    }
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(&report).unwrap()).unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r["values"].as_array().unwrap().len() == 7));
    assert!(json["provenance"].is_object());
}
