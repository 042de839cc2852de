use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_protoexact"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn report(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

const RESCALE_DOWN: &str = r#"{
  "domain": {"field": {"padic": 2}, "weights": ["g^1"]},
  "codomain": {"field": {"padic": 2}, "weights": ["g^0"]},
  "matrix": [["1"]]
}"#;

#[test]
fn rescale_down_is_mono_and_epi_but_not_strict() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(dir.path(), "map.json", RESCALE_DOWN);
    let o = run(&[
        "classify",
        "--map",
        map.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["tool"], "protoexact");
    assert_eq!(r["command"], "classify");
    let c = &r["result"]["classification"];
    assert_eq!(c["mono"], true);
    assert_eq!(c["epi"], true);
    assert_eq!(c["strict_mono"], false);
    assert_eq!(c["strict_epi"], false);
    assert_eq!(c["iso"], false);
}

#[test]
fn pointed_maps_are_classified_too() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(
        dir.path(),
        "map.json",
        r#"{"source": 2, "target": 1, "map": [1, 0]}"#,
    );
    let o = run(&[
        "classify",
        "--map",
        map.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let c = &report(&o)["result"]["classification"];
    assert_eq!(c["epi"], true);
    assert_eq!(c["mono"], false);
    assert_eq!(c["strict_epi"], true);
    assert_eq!(c["split_epi"], true);
}

#[test]
fn wrong_row_count_names_the_field() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(
        dir.path(),
        "map.json",
        r#"{"domain": {"field": {"padic": 2}, "weights": ["g^0"]},
            "codomain": {"field": {"padic": 2}, "weights": ["g^0"]},
            "matrix": [["1"], ["0"]]}"#,
    );
    let o = run(&["classify", "--map", map.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("field `matrix`"), "{err}");
    assert!(err.contains("expected 1 rows, found 2"), "{err}");
}

#[test]
fn malformed_entries_name_their_path() {
    let dir = tempfile::tempdir().unwrap();
    let space = write(
        dir.path(),
        "in.json",
        r#"{"space": {"field": {"padic": 2}, "weights": ["g^0", "oops"]}, "generators": []}"#,
    );
    let o = run(&[
        "compute",
        "orthogonalize",
        "--input",
        space.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("space.weights[1]"), "{}", stderr(&o));
}

#[test]
fn live_image_of_a_null_direction_cites_the_basis_index() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(
        dir.path(),
        "map.json",
        r#"{"domain": {"field": {"padic": 2}, "weights": ["g^0", "0"]},
            "codomain": {"field": {"padic": 2}, "weights": ["g^0"]},
            "matrix": [["0", "1"]]}"#,
    );
    let o = run(&["compute", "kernel", "--map", map.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    assert!(err.contains("invariant violation"), "{err}");
    assert!(err.contains("basis vector 1"), "{err}");
}

#[test]
fn expanding_maps_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(
        dir.path(),
        "map.json",
        r#"{"domain": {"field": {"padic": 2}, "weights": ["g^0"]},
            "codomain": {"field": {"padic": 2}, "weights": ["g^0"]},
            "matrix": [["1/2"]]}"#,
    );
    let o = run(&["classify", "--map", map.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("operator norm"), "{}", stderr(&o));
}

#[test]
fn counterexamples_complete_with_expected_verdicts() {
    let o = run(&["counterexamples", "--max-size", "3", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    let checks = r["result"]["report"]["checks"].as_array().unwrap();
    let verdict = |name: &str| {
        let c = checks.iter().find(|c| c["axiom"] == name).unwrap();
        (c["expectation"].clone(), c["verdict"].clone())
    };
    let (expected, found) = verdict("epi_pullback_total");
    assert_eq!(expected, "fail");
    assert!(found["fail"]["witness"].is_object());
    let (expected, found) = verdict("right_obscure");
    assert_eq!(expected, "fail");
    assert!(found["fail"]["witness"].is_object());
    assert_eq!(verdict("left_obscure"), ("pass".into(), "pass".into()));
}

#[test]
fn zero_fuel_exits_with_the_budget_code() {
    let dir = tempfile::tempdir().unwrap();
    let x = write(dir.path(), "x.json", "1");
    let partial = dir.path().join("partial.json");
    let o = run(&[
        "factor",
        "--precover",
        x.to_str().unwrap(),
        "--fuel",
        "0",
        "--json",
        partial.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 3);
    let r: Value = serde_json::from_str(&std::fs::read_to_string(&partial).unwrap()).unwrap();
    assert_eq!(r["result"]["certificate"]["complete"], false);
}

#[test]
fn enumeration_budget_exits_with_the_budget_code() {
    let o = run(&["audit", "--instance", "weighted", "--max-diagrams", "10"]);
    assert_eq!(code(&o), 3, "{}", stderr(&o));
}

#[test]
fn infinite_fields_are_not_enumerated() {
    let o = run(&["audit", "--instance", "weighted", "--field", "Q2"]);
    assert_eq!(code(&o), 2);
    assert!(stderr(&o).contains("--sampled"), "{}", stderr(&o));
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let args = [
        "audit",
        "--instance",
        "weighted",
        "--sampled",
        "--field",
        "Q2",
        "--samples",
        "40",
        "--format",
        "json",
    ];
    let a = run(&args);
    let b = bin().args(args).args(["--jobs", "1"]).output().unwrap();
    let c = bin().args(args).args(["--jobs", "3"]).output().unwrap();
    assert_eq!(code(&a), 0, "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let r = report(&a);
    assert_eq!(r["bounds"]["samples"], 40);
    assert!(r["bounds"]["seed"].is_u64());
}

#[test]
fn certificates_round_trip_through_verify_cert() {
    let dir = tempfile::tempdir().unwrap();
    let map = write(
        dir.path(),
        "map.json",
        r#"{"domain": {"field": {"trivial": "F2"}, "weights": ["g^1"]},
            "codomain": {"field": {"trivial": "F2"}, "weights": ["g^0"]},
            "matrix": [["1"]]}"#,
    );
    let cert = dir.path().join("cert.json");
    let o = run(&[
        "factor",
        "--map",
        map.to_str().unwrap(),
        "--json",
        cert.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let o = run(&[
        "verify-cert",
        "--cert",
        cert.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_eq!(report(&o)["result"]["replay"], "Exact");

    // Tampering with a recorded leg is caught.
    let mut r: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    r["result"]["certificate"]["right"] = r["result"]["certificate"]["left"].clone();
    std::fs::write(&cert, serde_json::to_string(&r).unwrap()).unwrap();
    let o = run(&[
        "verify-cert",
        "--cert",
        cert.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert_ne!(report(&o)["result"]["replay"], "Exact");
}

#[test]
fn quotient_norm_reports_a_minimizing_representative() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "q.json",
        r#"{"space": {"field": {"padic": 2}, "weights": ["g^0", "g^0"]},
            "generators": [[1, 1]],
            "vector": [1, 0]}"#,
    );
    let o = run(&[
        "compute",
        "quotient-norm",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r = report(&o);
    assert_eq!(r["result"]["norm"], "g^0");
}

#[test]
fn oracle_check_finds_no_mismatches() {
    let o = run(&[
        "oracle-check",
        "--max-dim",
        "1",
        "--max-size",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    for c in report(&o)["result"]["checks"].as_array().unwrap() {
        assert!(c["compared"].as_u64().unwrap() > 0, "{c}");
        assert_eq!(c["mismatches"], 0, "{c}");
    }
}

#[test]
fn bad_flags_exit_with_code_two() {
    let o = run(&["audit", "--instance", "nonsense"]);
    assert_eq!(code(&o), 2);
}

fn docs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

#[test]
fn shipped_examples_run_cleanly() {
    let ex = |name: &str| {
        docs()
            .join("examples")
            .join(name)
            .to_str()
            .unwrap()
            .to_owned()
    };
    let runs: Vec<Vec<String>> = vec![
        vec!["classify".into(), "--map".into(), ex("rescale-down.json")],
        vec!["classify".into(), "--map".into(), ex("collapse.json")],
        vec![
            "compute".into(),
            "kernel".into(),
            "--map".into(),
            ex("projection.json"),
        ],
        vec![
            "compute".into(),
            "cokernel".into(),
            "--map".into(),
            ex("inclusion.json"),
        ],
        vec![
            "compute".into(),
            "pullback".into(),
            "--f".into(),
            ex("projection.json"),
            "--g".into(),
            ex("projection.json"),
        ],
        vec![
            "compute".into(),
            "pushout".into(),
            "--i".into(),
            ex("inclusion.json"),
            "--g".into(),
            ex("inclusion.json"),
        ],
        vec![
            "compute".into(),
            "quotient-norm".into(),
            "--input".into(),
            ex("subspace.json"),
        ],
        vec![
            "compute".into(),
            "orthogonalize".into(),
            "--input".into(),
            ex("subspace.json"),
        ],
        vec![
            "compute".into(),
            "colimit".into(),
            "--input".into(),
            ex("chain.json"),
        ],
        vec!["factor".into(), "--map".into(), ex("f2-rescale.json")],
        vec![
            "factor".into(),
            "--precover".into(),
            ex("f2-line.json"),
            "--generators".into(),
            "rank-one".into(),
        ],
    ];
    for args in runs {
        let o = bin()
            .args(&args)
            .args(["--format", "json"])
            .output()
            .unwrap();
        assert_eq!(code(&o), 0, "{args:?}: {}", stderr(&o));
        let r = report(&o);
        assert_eq!(r["version"], env!("CARGO_PKG_VERSION"));
        assert!(r["bounds"].is_object(), "{args:?}");
    }
}

#[test]
fn schema_documents_are_json() {
    for entry in std::fs::read_dir(docs().join("schemas")).unwrap() {
        let path = entry.unwrap().path();
        let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        assert!(v["$schema"].is_string(), "{}", path.display());
    }
}
