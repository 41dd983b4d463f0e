use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const DEMO: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/demo_corpus.jsonl");

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tweetnb"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("spawn tweetnb")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = run(dir, args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn labeled_line(id: &str, text: &str, label: &str) -> String {
    format!(r#"{{"id":"{id}","text":"{text}","label":"{label}","label_source":"distant"}}"#) + "\n"
}

/// Three training tweets: two positive, one negative.
fn fixture_t(dir: &Path) -> PathBuf {
    let text = labeled_line("t1", "calon bagus", "positive")
        + &labeled_line("t2", "bagus mantap", "positive")
        + &labeled_line("t3", "calon buruk", "negative");
    write(dir, "fixture_t.jsonl", &text)
}

fn tweets(dir: &Path, name: &str, texts: &[(&str, &str)]) -> PathBuf {
    let text: String = texts
        .iter()
        .map(|(id, t)| format!(r#"{{"id":"{id}","text":"{t}"}}"#) + "\n")
        .collect();
    write(dir, name, &text)
}

#[test]
fn collect_demo_corpus() {
    let dir = TempDir::new().unwrap();
    let stats: Value = serde_json::from_str(&ok(
        dir.path(),
        &["collect", "--input", DEMO, "--labeled", "l.jsonl", "--unlabeled", "u.jsonl", "--format", "json"],
    ))
    .unwrap();
    assert_eq!(stats["total_ingested"], 6);
    assert_eq!(stats["labeled_positive"], 2);
    assert_eq!(stats["labeled_negative"], 1);
    assert_eq!(stats["unlabeled"], 1);
    assert_eq!(stats["rejected_ambiguous_emoticon"], 1);
    assert_eq!(stats["rejected_language"], 1);

    let labeled = std::fs::read_to_string(dir.path().join("l.jsonl")).unwrap();
    assert_eq!(labeled.lines().count(), 3);
    let first: Value = serde_json::from_str(labeled.lines().next().unwrap()).unwrap();
    assert_eq!(first["label"], "positive");
    assert_eq!(first["label_source"], "distant");
    let unlabeled = std::fs::read_to_string(dir.path().join("u.jsonl")).unwrap();
    assert_eq!(unlabeled.lines().count(), 1);
}

#[test]
fn missing_inputs_reported_together_before_any_output() {
    let dir = TempDir::new().unwrap();
    let out = run(
        dir.path(),
        &["collect", "--input", "nope.jsonl", "--labeled", "l.jsonl", "--unlabeled", "u.jsonl", "--wordlist", "words.txt"],
    );
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("nope.jsonl") && err.contains("words.txt"), "{err}");
    assert!(out.stdout.is_empty());
    assert!(!dir.path().join("l.jsonl").exists());
}

#[test]
fn missing_required_option() {
    let dir = TempDir::new().unwrap();
    let out = run(dir.path(), &["train", "--input", DEMO]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--model"));
}

#[test]
fn config_file_with_flag_override() {
    let dir = TempDir::new().unwrap();
    fixture_t(dir.path());
    write(dir.path(), "run.conf", "# training run\ninput = fixture_t.jsonl\nmodel = a.json\nformat = json\n");
    ok(dir.path(), &["train", "--config", "run.conf"]);
    ok(dir.path(), &["train", "--config", "run.conf", "--model", "b.json"]);
    assert_eq!(std::fs::read(dir.path().join("a.json")).unwrap(), std::fs::read(dir.path().join("b.json")).unwrap());

    write(dir.path(), "bad.conf", "modle = a.json\n");
    let out = run(dir.path(), &["train", "--config", "bad.conf"]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("modle"));
}

#[test]
fn train_twice_is_byte_identical() {
    let dir = TempDir::new().unwrap();
    fixture_t(dir.path());
    ok(dir.path(), &["train", "--input", "fixture_t.jsonl", "--model", "m1.json"]);
    ok(dir.path(), &["train", "--input", "fixture_t.jsonl", "--model", "m2.json"]);
    let m1 = std::fs::read(dir.path().join("m1.json")).unwrap();
    assert_eq!(m1, std::fs::read(dir.path().join("m2.json")).unwrap());
    assert!(m1.ends_with(b"\n"));
}

#[test]
fn train_on_all_empty_documents_fails() {
    let dir = TempDir::new().unwrap();
    let text = labeled_line("a", "yang dan", "positive") + &labeled_line("b", "di ke", "negative");
    write(dir.path(), "empty.jsonl", &text);
    let out = run(dir.path(), &["train", "--input", "empty.jsonl", "--model", "m.json"]);
    assert!(!out.status.success());
    assert!(!dir.path().join("m.json").exists());
}

#[test]
fn classify_against_fixture_model() {
    let dir = TempDir::new().unwrap();
    fixture_t(dir.path());
    ok(dir.path(), &["train", "--input", "fixture_t.jsonl", "--model", "m.json"]);
    tweets(dir.path(), "in.jsonl", &[("q1", "bagus"), ("q2", "zzz qqq")]);
    let out = ok(dir.path(), &["classify", "--input", "in.jsonl", "--model", "m.json"]);
    let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);

    assert_eq!(lines[0]["id"], "q1");
    assert_eq!(lines[0]["label"], "positive");
    let p = lines[0]["posteriors"]["positive"].as_f64().unwrap();
    assert!((p - 9.0 / 11.0).abs() < 1e-4, "{p}");
    assert_eq!(lines[0]["oov_tokens"], 0);

    // Two unseen tokens: scored from priors and smoothing alone.
    assert_eq!(lines[1]["oov_tokens"], 2);
    let pos = 2.0 / 3.0 * (1.0f64 / 8.0).powi(2);
    let neg = 1.0 / 3.0 * (1.0f64 / 6.0).powi(2);
    let expected = pos / (pos + neg);
    let got = lines[1]["posteriors"]["positive"].as_f64().unwrap();
    assert!((got - expected).abs() < 1e-9);
    assert_eq!(lines[1]["label"], if expected > 0.5 { "positive" } else { "negative" });
}

#[test]
fn classify_empty_input_gives_empty_output() {
    let dir = TempDir::new().unwrap();
    fixture_t(dir.path());
    ok(dir.path(), &["train", "--input", "fixture_t.jsonl", "--model", "m.json"]);
    write(dir.path(), "empty.jsonl", "");
    assert_eq!(ok(dir.path(), &["classify", "--input", "empty.jsonl", "--model", "m.json"]), "");
}

#[test]
fn eval_gold_fixture() {
    let dir = TempDir::new().unwrap();
    fixture_t(dir.path());
    ok(dir.path(), &["train", "--input", "fixture_t.jsonl", "--model", "m.json"]);
    let mut texts = Vec::new();
    let mut gold = String::from("id,label\n");
    for i in 0..10 {
        let id = format!("g{i}");
        // 5 bagus/positive, 2 buruk/negative correct; 3 buruk marked positive.
        let (text, label) = match i {
            0..=4 => ("bagus", "positive"),
            5..=6 => ("buruk", "negative"),
            _ => ("buruk", "positive"),
        };
        texts.push((id.clone(), text));
        gold.push_str(&format!("{id},{label}\n"));
    }
    gold.push_str("ghost,negative\n");
    let texts: Vec<(&str, &str)> = texts.iter().map(|(i, t)| (i.as_str(), *t)).collect();
    tweets(dir.path(), "tweets.jsonl", &texts);
    write(dir.path(), "gold.csv", &gold);

    let args = ["eval", "--input", "tweets.jsonl", "--model", "m.json", "--gold", "gold.csv"];
    let out = run(dir.path(), &args);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("ghost"));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("accuracy  0.7000  (n = 10)"), "{table}");

    let json: Value = serde_json::from_str(&ok(dir.path(), &[&args[..], &["--format", "json"]].concat())).unwrap();
    assert!((json["accuracy"].as_f64().unwrap() - 0.7).abs() < 1e-12);
    assert_eq!(json["confusion"]["positive"]["negative"], 3);

    write(dir.path(), "nobody.csv", "id,label\nx,positive\n");
    let out = run(dir.path(), &["eval", "--input", "tweets.jsonl", "--model", "m.json", "--gold", "nobody.csv"]);
    assert!(!out.status.success());
}

fn synthetic_corpus(dir: &Path) -> PathBuf {
    let pos = ["bagus", "mantap", "hebat", "senang", "dukung"];
    let neg = ["buruk", "kecewa", "gagal", "sedih", "bohong"];
    let mut text = String::new();
    for i in 0..40 {
        let (words, label) = if i % 2 == 0 { (&pos, "positive") } else { (&neg, "negative") };
        let body = format!("{} {} calon", words[i % 5], words[(i / 2 + 1) % 5]);
        text.push_str(&labeled_line(&format!("s{i:02}"), &body, label));
    }
    write(dir, "synthetic.jsonl", &text)
}

#[test]
fn kfold_and_holdout_are_deterministic() {
    let dir = TempDir::new().unwrap();
    synthetic_corpus(dir.path());
    let kfold = ["eval", "--mode", "kfold", "--k", "4", "--seed", "7", "--input", "synthetic.jsonl", "--format", "json"];
    let a = ok(dir.path(), &kfold);
    assert_eq!(a, ok(dir.path(), &kfold));
    let cv: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(cv["fold_accuracies"].as_array().unwrap().len(), 4);
    assert!(cv["mean_accuracy"].as_f64().unwrap() > 0.9);

    let holdout = ["eval", "--mode", "holdout", "--input", "synthetic.jsonl"];
    let h = ok(dir.path(), &holdout);
    assert_eq!(h, ok(dir.path(), &holdout));
    assert!(h.contains("(n = 8)"), "{h}");
}

#[test]
fn report_percentages() {
    let dir = TempDir::new().unwrap();
    tweets(
        dir.path(),
        "tweets.jsonl",
        &[("a", "x #ridwankamil"), ("b", "y #RidwanKamil"), ("c", "z #ridwankamil"), ("d", "w #ridwankamil")],
    );
    let pred = |id: &str, label: &str| {
        format!(r#"{{"id":"{id}","label":"{label}","posteriors":{{}},"oov_tokens":0}}"#) + "\n"
    };
    let text = pred("a", "positive") + &pred("b", "positive") + &pred("c", "positive") + &pred("d", "negative");
    write(dir.path(), "p.jsonl", &text);

    let csv = ok(dir.path(), &["report", "--predictions", "p.jsonl", "--input", "tweets.jsonl", "--csv"]);
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "group,total,negative,positive,neutral");
    assert_eq!(rows[1], "all,4,0.25,0.75,0");
    assert_eq!(rows[2], "ridwankamil,4,0.25,0.75,0");
    assert_eq!(rows.len(), 3);

    let table = ok(dir.path(), &["report", "--predictions", "p.jsonl", "--input", "tweets.jsonl"]);
    assert!(table.contains("75.00%") && table.contains("25.00%"));
}

#[test]
fn report_without_predictions_is_empty() {
    let dir = TempDir::new().unwrap();
    write(dir.path(), "p.jsonl", "");
    tweets(dir.path(), "tweets.jsonl", &[("a", "x")]);
    let json = ok(dir.path(), &["report", "--predictions", "p.jsonl", "--input", "tweets.jsonl", "--format", "json"]);
    assert_eq!(json.trim(), "[]");
    let csv = ok(dir.path(), &["report", "--predictions", "p.jsonl", "--input", "tweets.jsonl", "--csv"]);
    assert_eq!(csv.trim(), "group,total,negative,positive,neutral");
}
