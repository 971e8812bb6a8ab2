use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

const AVIGNON: &str =
    "La ville d'Avignon est la capitale du Vaucluse, qui est un département du sud de la France.\n";

fn eduseg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eduseg"))
        .args(args)
        .env_remove("EDUSEG_LEXICON_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, content).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn fixture(rel: &str) -> String {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures");
    root.join(rel).to_string_lossy().into_owned()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

#[test]
fn segments_avignon_before_qui() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "avignon.txt", AVIGNON);
    let out = eduseg(&["segment", "--lexicon", "builtin:fr-supplement", s(&input)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let seg = fs::read_to_string(dir.path().join("avignon.txt.seg")).unwrap();
    assert_eq!(
        seg,
        "[La ville d'Avignon est la capitale du Vaucluse,]_0\n[qui est un département du sud de la France.]_1\n"
    );
}

#[test]
fn builtin_lexicons_merge() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "a.txt", "Il pleut et il vente, qui sait.\n");
    let out = eduseg(&[
        "segment",
        "--lexicon",
        "builtin:fr",
        "--lexicon",
        "builtin:fr-supplement",
        "--json",
        s(&input),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["files"][0]["segments"], 3);
}

#[test]
fn empty_input_gives_empty_output() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "empty.txt", "");
    let out = eduseg(&["segment", "--output", s(&dir.path().join("out")), s(&input)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(
        fs::read_to_string(dir.path().join("out/empty.txt.seg")).unwrap(),
        ""
    );
}

#[test]
fn merge_strategy_without_pos_fails() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "a.txt", AVIGNON);
    let out = eduseg(&["segment", "--strategy", "mu-v", s(&input)]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("no POS tag"), "{}", stderr(&out));
    assert!(!dir.path().join("a.txt.seg").exists());
}

#[test]
fn merge_strategy_with_fallback_tagger() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "a.txt", AVIGNON);
    let out = eduseg(&[
        "segment",
        "--strategy",
        "mu-vn",
        "--pos",
        "fallback",
        "--lexicon",
        "builtin:fr-supplement",
        "--json",
        s(&input),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["strategy"], "mu-vn");
}

#[test]
fn pretagged_input_is_used() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "a.txt", "Il part et elle reste.\n");
    let tags = "Il\tPRO:PER\npart\tVER:pres\net\tKON\nelle\tPRO:PER\nreste\tVER:pres\n.\tSENT\n";
    let tagged = write(dir.path(), "a.tag", tags);
    let pos = format!("pretagged:{}", s(&tagged));
    let out = eduseg(&["segment", "--strategy", "mu-v", "--pos", &pos, s(&input)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let seg = fs::read_to_string(dir.path().join("a.txt.seg")).unwrap();
    assert_eq!(seg, "[Il part]_0\n[et elle reste.]_1\n");

    let bad = write(dir.path(), "b.tag", "Il\tPRO:PER\nvient\tVER:pres\n");
    let pos = format!("pretagged:{}", s(&bad));
    let out = eduseg(&["segment", "--strategy", "mu-v", "--pos", &pos, s(&input)]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("diverges"), "{}", stderr(&out));
}

#[test]
fn unreadable_input_is_reported_and_others_still_run() {
    let dir = TempDir::new().unwrap();
    let good = write(dir.path(), "good.txt", AVIGNON);
    let missing = dir.path().join("missing.txt");
    let out = eduseg(&["segment", s(&missing), s(&good)]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("missing.txt"), "{}", stderr(&out));
    assert!(dir.path().join("good.txt.seg").exists());
}

#[test]
fn segmentation_is_deterministic_and_round_trips() {
    let dir = TempDir::new().unwrap();
    let input = fixture("worked_example/reference.txt");
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for out_dir in [&a, &b] {
        let out = eduseg(&["segment", "--output", s(out_dir), &input]);
        assert!(out.status.success(), "{}", stderr(&out));
    }
    let first = fs::read(a.join("reference.txt.seg")).unwrap();
    assert_eq!(first, fs::read(b.join("reference.txt.seg")).unwrap());
    let text = String::from_utf8(first).unwrap();
    for (i, line) in text.lines().enumerate() {
        assert!(
            line.starts_with('[') && line.ends_with(&format!("]_{i}")),
            "{line}"
        );
    }
    assert!(text.contains("\n[en faveur d'une interdiction totale"));
}

#[test]
fn evaluates_worked_example_pairs() {
    let lr = fixture("worked_example/lr.tsv");
    let dir = TempDir::new().unwrap();
    // Same document id on both sides.
    let lc = dir.path().join("lr.tsv");
    fs::copy(fixture("worked_example/lc.tsv"), &lc).unwrap();
    let out = eduseg(&[
        "evaluate",
        "--reference",
        &lr,
        "--candidate",
        s(&lc),
        "--pairs",
        "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    let overall = &v["overall"];
    assert_eq!(overall["n_common"], 5);
    assert_eq!(overall["n_candidate"], 8);
    assert_eq!(overall["n_reference"], 11);
    assert_eq!(overall["rounded"]["f_score"], 0.526);

    let swapped = eduseg(&[
        "evaluate",
        "--reference",
        s(&lc),
        "--candidate",
        &lr,
        "--pairs",
        "--json",
    ]);
    let w = json(&swapped);
    assert_eq!(w["overall"]["precision"], overall["recall"]);
    assert_eq!(w["overall"]["recall"], overall["precision"]);

    let table = eduseg(&[
        "evaluate",
        "--reference",
        &lr,
        "--candidate",
        s(&lc),
        "--pairs",
    ]);
    assert!(stdout(&table)
        .lines()
        .last()
        .unwrap()
        .starts_with("overall"));
}

#[test]
fn identical_inputs_score_one() {
    let seg = fixture("worked_example/reference.seg");
    let out = eduseg(&[
        "evaluate",
        "--reference",
        &seg,
        "--candidate",
        &seg,
        "--segments",
        "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["overall"]["f_score"], 1.0);
}

#[test]
fn unknown_candidate_document_fails() {
    let out = eduseg(&[
        "evaluate",
        "--reference",
        &fixture("worked_example/lr.tsv"),
        "--candidate",
        &fixture("worked_example/lc.tsv"),
        "--pairs",
    ]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("lc"), "{}", stderr(&out));
}

#[test]
fn evaluate_requires_one_input_mode() {
    let lr = fixture("worked_example/lr.tsv");
    assert!(
        !eduseg(&["evaluate", "--reference", &lr, "--candidate", &lr])
            .status
            .success()
    );
    assert!(!eduseg(&[
        "evaluate",
        "--reference",
        &lr,
        "--candidate",
        &lr,
        "--pairs",
        "--segments"
    ])
    .status
    .success());
}

#[test]
fn agreement_reports_both_directions() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "d1.a", "x\ty\nu\tv\n");
    let b_dir = dir.path().join("b");
    fs::create_dir(&b_dir).unwrap();
    let b = write(&b_dir, "d1.b", "x\ty\n");
    let out = eduseg(&["agreement", "--a", s(&a), "--b", s(&b), "--pairs", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["a_as_reference"]["overall"]["recall"], 0.5);
    assert_eq!(v["a_as_reference"]["overall"]["precision"], 1.0);
    assert_eq!(v["b_as_reference"]["overall"]["recall"], 1.0);
    assert_eq!(v["b_as_reference"]["overall"]["precision"], 0.5);

    let same = eduseg(&["agreement", "--a", s(&a), "--b", s(&a), "--pairs", "--json"]);
    assert_eq!(json(&same)["a_as_reference"]["overall"]["f_score"], 1.0);

    let c = write(&b_dir, "d1.c", "p\tq\n");
    let disjoint = eduseg(&["agreement", "--a", s(&a), "--b", s(&c), "--pairs", "--json"]);
    assert_eq!(json(&disjoint)["a_as_reference"]["overall"]["f_score"], 0.0);
}

#[test]
fn compare_prints_three_systems() {
    let mut args = vec!["compare".to_string()];
    for i in 1..=3 {
        args.push("--text".into());
        args.push(fixture(&format!("corpus/doc{i:02}.txt")));
        args.push("--reference".into());
        args.push(fixture(&format!("corpus/doc{i:02}.seg")));
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let out = eduseg(&args);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("System"));
    assert!(lines[1].starts_with("Segmenter-mu"));
    assert!(lines[2].starts_with("Grammatical (V)"));
    assert!(lines[3].starts_with("Grammatical (V-N)"));
}

#[test]
fn lexicon_expand_lists_both_forms() {
    let dir = TempDir::new().unwrap();
    let lex = write(dir.path(), "lex.txt", "à condition d' /\n");
    let out = eduseg(&["lexicon", "expand", s(&lex)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l == "à condition d'"), "{text}");
    assert!(text.lines().any(|l| l == "à condition de"), "{text}");
}

#[test]
fn lexicon_validate_flags_problems() {
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "empty.txt", "");
    assert!(!eduseg(&["lexicon", "validate", s(&empty)]).status.success());

    let ok = eduseg(&["lexicon", "validate", &fixture("../../data/fr_markers.txt")]);
    assert!(ok.status.success(), "{}", stdout(&ok));
}

#[test]
fn lexicon_stats_of_bundled_list() {
    let out = eduseg(&[
        "lexicon",
        "stats",
        &fixture("../../data/fr_markers.txt"),
        "--json",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["entries"], 467);
    assert_eq!(v["max_len"], 6);
    assert_eq!(v["elided"], 136);
}

#[test]
fn lexicon_directory_from_environment() {
    let dir = TempDir::new().unwrap();
    let lexdir = dir.path().join("lex");
    fs::create_dir(&lexdir).unwrap();
    write(&lexdir, "relatives.txt", "qui /\n");
    write(&lexdir, "xx.txt", "und /\n");
    let input = write(dir.path(), "a.txt", AVIGNON);
    let de = write(dir.path(), "de.txt", "Er kam und sie ging.\n");

    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_eduseg"))
            .args(args)
            .env("EDUSEG_LEXICON_DIR", &lexdir)
            .output()
            .unwrap()
    };
    let out = run(&["segment", "--lexicon", "relatives", "--json", s(&input)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["files"][0]["segments"], 2);

    let out = run(&["segment", "--language", "xx", "--json", s(&de)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(json(&out)["files"][0]["segments"], 2);

    let out = eduseg(&["segment", "--language", "xx", s(&de)]);
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("EDUSEG_LEXICON_DIR"),
        "{}",
        stderr(&out)
    );
}
