//! End-to-end checks of the binary: output shapes and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_concept-nmr"))
        .args(args)
        .env("CONCEPT_NMR_COLOR", "never")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

#[test]
fn lattice_lists_the_eleven_concepts() {
    let out = run(&["lattice", &path("animals.cxt")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("11 concepts"), "{text}");
    assert!(text.contains("extent {a1, a2}  intent {x1, x5}"), "{text}");
}

#[test]
fn lattice_dot_is_a_digraph() {
    let out = run(&["lattice", &path("animals.cxt"), "--format", "dot"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph lattice {"), "{text}");
    assert!(text.contains("->"), "{text}");
}

#[test]
fn lattice_json_parses() {
    let out = run(&["lattice", &path("animals.cxt"), "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["concepts"].as_array().unwrap().len(), 11);
}

#[test]
fn malformed_cxt_exits_with_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cxt");
    std::fs::write(&bad, "Z\n\n1\n1\n\no\nx\nX\n").unwrap();
    let out = run(&["lattice", &bad.display().to_string()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn missing_file_exits_with_input_error() {
    let out = run(&["lattice", "no-such-file.cxt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nm_reports_verdicts_with_evidence() {
    let out = run(&["nm", &path("paper_m.json"), "C1 |~ C2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: true"), "{text}");
    assert!(text.contains("minimal states {s2}"), "{text}");

    let out = run(&["nm", &path("paper_m.json"), "C1 & C3 |~ C2"]);
    assert!(out.status.success(), "non-strict mode still exits 0");
    let text = stdout(&out);
    assert!(text.contains("verdict: false"), "{text}");
    assert!(text.contains("{s1}"), "{text}");

    let out = run(&["nm", &path("paper_m.json"), "bot |~ C1"]);
    let text = stdout(&out);
    assert!(text.contains("verdict: true"), "{text}");
    assert!(text.contains("vacuously true"), "{text}");
}

#[test]
fn strict_flag_turns_false_verdicts_into_exit_one() {
    let out = run(&["nm", &path("paper_m.json"), "C1 & C3 |~ C2", "--strict"]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["nm", &path("paper_m.json"), "C1 |~ C2", "--strict"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn holds_checks_strict_sequents() {
    let out = run(&["holds", &path("paper_m.json"), "C1 & C3 |- C1"]);
    assert!(stdout(&out).contains("verdict: true"));
    let out = run(&["holds", &path("paper_m.json"), "C3 |- C1"]);
    assert!(stdout(&out).contains("verdict: false"));
    // defeasible sequents are delegated to the preference model
    let out = run(&["holds", &path("paper_m.json"), "C1 |~ C2"]);
    assert!(stdout(&out).contains("verdict: true"));
}

#[test]
fn classify_reports_the_model_class() {
    let out = run(&["classify", &path("paper_m.json")]);
    let text = stdout(&out);
    assert!(text.contains("cumulative:   yes"), "{text}");
    assert!(text.contains("ordered:      yes"), "{text}");
    assert!(text.contains("preferential: yes"), "{text}");
    assert!(text.contains("strong:       no"), "{text}");

    let out = run(&["classify", &path("paper_mprime_derived.json")]);
    let text = stdout(&out);
    assert!(text.contains("cumulative:   no"), "{text}");
    assert!(text.contains("preference cycle {s2, s3, s4}"), "{text}");

    let out = run(&["classify", &path("paper_m.json"), "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["is_cumulative"], serde_json::Value::Bool(true));
}

#[test]
fn check_rules_finds_the_published_violations() {
    let out = run(&["check-rules", &path("paper_m.json"), "--system", "cc"]);
    assert!(stdout(&out).contains("0 violation(s)"), "{}", stdout(&out));

    let out = run(&[
        "check-rules",
        &path("paper_m.json"),
        "--system",
        "cc",
        "--extra",
        "or",
    ]);
    let text = stdout(&out);
    assert!(text.contains("Or:"), "{text}");
    assert!(text.contains("but not top |~ C2"), "{text}");

    let out = run(&[
        "check-rules",
        &path("paper_mprime_derived.json"),
        "--system",
        "ccl",
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("Loop:"), "{text}");
}

#[test]
fn entail_prints_a_derivation() {
    let out = run(&[
        "entail",
        &path("paper_kb.txt"),
        &path("paper_m.json"),
        "C1 & C2 |~ C5",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("entailed: true"), "{text}");
    assert!(text.contains("[assumption]") || text.contains("[reflexivity]"), "{text}");

    let out = run(&[
        "entail",
        &path("paper_kb.txt"),
        &path("paper_m.json"),
        "C2 |~ C1",
        "--strict",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("entailed: false"));
}

#[test]
fn entail_accepts_a_cxt_with_attribute_variables() {
    let dir = tempfile::tempdir().unwrap();
    let kb = dir.path().join("kb.txt");
    std::fs::write(&kb, "x1 |~ x5\n").unwrap();
    let out = run(&[
        "entail",
        &kb.display().to_string(),
        &path("animals.cxt"),
        "x1 & x5 |~ x5",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("entailed: true"));
}

#[test]
fn canonical_round_trips_and_exports() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("canonical.json");
    let out = run(&[
        "canonical",
        &path("paper_m.json"),
        "--output",
        &out_path.display().to_string(),
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("representation check: true"), "{text}");
    assert!(text.contains("9 states"), "{text}");

    // the exported spec loads and carries class metadata
    let exported = std::fs::read_to_string(&out_path).unwrap();
    let spec = concept_nmr::nmr::parse_model_spec(&exported).unwrap();
    assert!(spec.metadata.is_some());
    concept_nmr::nmr::model_from_spec(&spec, dir.path()).unwrap();

    let out = run(&["canonical", &path("paper_m.json"), "--ordered"]);
    assert!(stdout(&out).contains("representation check: true"));
}

#[test]
fn canonical_rejects_non_smooth_models() {
    let out = run(&["canonical", &path("paper_mprime_derived.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not closed"), "{}", stderr(&out));
}

#[test]
fn example_paper_reproduces_the_story() {
    let out = run(&["example-paper"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for needle in [
        "C1 |~ C2: true",
        "C1 & C3 |~ C2: false",
        "top |~ C2: false",
        "C4 |~ C5: false",
        "Loop: [C4 |~ C2; C2 |~ C5; C5 |~ C4] but not C4 |~ C5",
        "discrepancy 1",
        "discrepancy 2",
        "all expected verdicts reproduced",
    ] {
        assert!(text.contains(needle), "missing `{needle}` in:\n{text}");
    }
    assert!(!text.contains("[UNEXPECTED]"), "{text}");
}

#[test]
fn dot_emits_the_preference_digraph() {
    let out = run(&["dot", &path("paper_m.json")]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("digraph preference {"), "{text}");
    assert!(text.contains("s1"), "{text}");

    let out = run(&["dot", &path("animals.cxt")]);
    assert!(stdout(&out).starts_with("digraph lattice {"));
}

#[test]
fn eval_interprets_formulas() {
    let out = run(&["eval", &path("paper_m.json"), "C1 & C3"]);
    let text = stdout(&out);
    assert!(text.contains("extent {a1}"), "{text}");

    let out = run(&["eval", &path("animals.cxt"), "x1 & x5"]);
    let text = stdout(&out);
    assert!(text.contains("extent {a1, a2}"), "{text}");

    let out = run(&["eval", &path("paper_m.json"), "C1 &"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("syntax error"), "{}", stderr(&out));
}

#[test]
fn outputs_are_deterministic() {
    let a = run(&["example-paper"]);
    let b = run(&["example-paper"]);
    assert_eq!(stdout(&a), stdout(&b));
    let a = run(&["canonical", &path("paper_m.json"), "--format", "json"]);
    let b = run(&["canonical", &path("paper_m.json"), "--format", "json"]);
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn max_universe_cap_guards_pathological_inputs() {
    let out = run(&["check-rules", &path("paper_m.json"), "--max-universe", "4"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"), "{}", stderr(&out));
}

#[test]
fn color_env_var_controls_ansi_output() {
    let colored = Command::new(env!("CARGO_BIN_EXE_concept-nmr"))
        .args(["nm", &path("paper_m.json"), "C1 |~ C2"])
        .env("CONCEPT_NMR_COLOR", "always")
        .output()
        .unwrap();
    assert!(stdout(&colored).contains("\x1b[32m"), "{}", stdout(&colored));

    let plain = Command::new(env!("CARGO_BIN_EXE_concept-nmr"))
        .args(["nm", &path("paper_m.json"), "C1 |~ C2"])
        .env("CONCEPT_NMR_COLOR", "never")
        .output()
        .unwrap();
    assert!(!stdout(&plain).contains('\x1b'), "{}", stdout(&plain));

    // auto without a terminal stays plain
    let auto = Command::new(env!("CARGO_BIN_EXE_concept-nmr"))
        .args(["nm", &path("paper_m.json"), "C1 |~ C2"])
        .env_remove("CONCEPT_NMR_COLOR")
        .output()
        .unwrap();
    assert!(!stdout(&auto).contains('\x1b'));
}
