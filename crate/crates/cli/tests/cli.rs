//! The `relolog` binary on the shipped corpus: outputs and exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn relolog(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relolog")).args(args).output().expect("binary runs")
}

fn with_corpus(args: &[&str]) -> Output {
    let owned: Vec<String> = args
        .iter()
        .map(|a| match a.strip_prefix('@') {
            Some(f) => corpus(f).display().to_string(),
            None => a.to_string(),
        })
        .collect();
    let refs: Vec<&str> = owned.iter().map(String::as_str).collect();
    relolog(&refs)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn check_reports_counts() {
    let o = with_corpus(&["check", "@foaf.olog"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "ok: 4 types, 19 relations, 41 axioms\n");
}

#[test]
fn verify_foaf_instance() {
    let o = with_corpus(&["verify", "@foaf.olog", "@foaf.inst"]);
    assert_eq!(o.status.code(), Some(0), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn verify_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let inst = std::fs::read_to_string(corpus("foaf-fragment.inst")).unwrap();
    let broken = inst.replace("(P1, P2), (P2, P1), (P3, P4), (P4, P3)", "(P2, P1), (P3, P4), (P4, P3)");
    assert_ne!(broken, inst);
    let path = dir.path().join("broken.inst");
    std::fs::write(&path, broken).unwrap();
    let o = with_corpus(&["verify", "@foaf-fragment.olog", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("violated axiom"), "{out}");
    assert!(out.contains("(P1, P2)"), "{out}");
}

#[test]
fn eval_composite() {
    let o = with_corpus(&["eval", "@foaf.olog", "@foaf.inst", "-e", "compose(\"friend of\",\"knows\")"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "{(P1, P1), (P2, P2)}");
}

#[test]
fn eval_backends_agree_on_a_matrix() {
    let o = with_corpus(&[
        "eval",
        "@foaf-fragment.olog",
        "@foaf-fragment.inst",
        "-e",
        "\"friend of\"",
        "--backend",
        "boolmat",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0 1 0 0\n1 0 0 0\n0 0 0 0\n0 0 0 0\n");
    let o = with_corpus(&["eval", "@negation.olog", "@negation.lin", "-e", "join(R, S)", "--backend", "linrel"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("rank 2"));
}

#[test]
fn search_finds_a_countermodel() {
    let o = with_corpus(&["search", "@foaf.olog", "--conjecture", "\"knows\" => \"friend of\"", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(1), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("rel knows ="), "{out}");
}

#[test]
fn search_without_countermodel_exits_zero() {
    let o = with_corpus(&[
        "search",
        "@family.olog",
        "--conjecture",
        "\"grandparent of\" => \"ancestor of\"",
        "--bound",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "no countermodel up to bound 2");
}

#[test]
fn prove_accepts_and_rejects() {
    let o = with_corpus(&["prove", "@foaf.theory", "@foaf.proofs"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.ends_with(": ok")));
    let o = with_corpus(&["prove", "@shapes.theory", "@malformed/shapes.proofs"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("proof falsity: rejected\n  node root: rule falsity:"));
}

#[test]
fn interpret_and_translate() {
    let o = with_corpus(&[
        "interpret",
        "@foaf.theory",
        "@foaf.map",
        "-f",
        "[x:Person; y:Person] exists z:Person. \"parent of\"(x, z) & \"parent of\"(z, y)",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "compose(\"parent of\", \"parent of\")");
    let o = with_corpus(&["translate", "@foaf.olog", "-e", "knows ; knows"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("exists"), "{}", stdout(&o));
}

#[test]
fn export_sql_to_directory() {
    let dir = tempfile::tempdir().unwrap();
    let o = with_corpus(&[
        "export-sql",
        "@foaf-fragment.olog",
        "@foaf-fragment.inst",
        "--fold-maps",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let person = std::fs::read_to_string(dir.path().join("Person.csv")).unwrap();
    assert!(person.starts_with("ID,age,family name,given name\nP1,21,Doe,Alice\n"), "{person}");
    assert!(dir.path().join("schema.sql").exists());
}

#[test]
fn export_graph_and_render() {
    let o = with_corpus(&[
        "export-graph",
        "@foaf-fragment.olog",
        "@foaf-fragment.inst",
        "--primitive",
        "Number",
        "--primitive",
        "String",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("digraph elements {"));
    let o = with_corpus(&["render", "@foaf.olog", "-e", "meet(\"friend of\", knows)", "--desugar", "--format", "tikz"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("\\begin{tikzpicture}"));
}

#[test]
fn errors_exit_two() {
    let o = with_corpus(&["check", "@missing.olog"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).starts_with("error: "));
    let o = with_corpus(&["eval", "@foaf.olog", "@foaf.inst", "-e", "compose(knows"]);
    assert_eq!(o.status.code(), Some(2));
    let o = relolog(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_olog_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.olog");
    std::fs::write(&path, "type Person, Organization\nrel \"friend of\" : Person -> Person\nrel \"works at\" : Person -> Organization\naxiom \"friend of\" => \"works at\"\n").unwrap();
    let o = relolog(&["check", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));
}

#[test]
fn version_and_help() {
    assert_eq!(relolog(&["--version"]).status.code(), Some(0));
    for sub in
        ["check", "eval", "verify", "prove", "interpret", "translate", "search", "export-sql", "export-graph", "render"]
    {
        let o = relolog(&[sub, "--help"]);
        assert_eq!(o.status.code(), Some(0), "{sub}");
    }
}
