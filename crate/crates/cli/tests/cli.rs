use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn itl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_itl")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    itl(args).status.code().unwrap()
}

fn structured(args: &[&str]) -> (i32, Value) {
    let mut full = args.to_vec();
    full.extend(["--format", "structured", "--no-timestamp"]);
    let out = itl(&full);
    (out.status.code().unwrap(), serde_json::from_slice(&out.stdout).unwrap())
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("itl-cli-{}-{name}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

const PQ: &str = "const p : <>\nconst q : <>\n";

#[test]
fn usage_errors_exit_with_three() {
    assert_eq!(code(&[]), 3);
    assert_eq!(code(&["no-such-command"]), 3);
    assert_eq!(code(&["prove"]), 3);
    assert_eq!(code(&["check", "-e", "p &"]), 3);
    assert_eq!(code(&["prove", "/no/such/file"]), 3);
    assert_eq!(code(&["--version"]), 0);
}

#[test]
fn usage_errors_have_a_structured_report() {
    let (c, v) = structured(&["check", "-e", "p &"]);
    assert_eq!(c, 3);
    assert_eq!(v["status"], "usage-error");
}

#[test]
fn check_prints_the_type_of_a_term() {
    let out = itl(&["check", "-e", &format!("{PQ}p & q")]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("<>"));
}

#[test]
fn prove_exit_codes_follow_the_outcome() {
    assert_eq!(code(&["prove", "-e", &format!("{PQ}p, q => p & q")]), 0);
    assert_eq!(code(&["prove", "-e", &format!("{PQ}p => q")]), 1);
}

#[test]
fn emitted_proofs_pass_verify_proof() {
    let dir = tmp("proof");
    let proof = dir.join("proof.json");
    let goal = format!("{PQ}p -> q, p => q");
    assert_eq!(code(&["prove", "-e", &goal, "--out", proof.to_str().unwrap()]), 0);
    let (c, v) = structured(&["verify-proof", proof.to_str().unwrap(), "--goal", &goal]);
    assert_eq!(c, 0, "{v}");
    assert_eq!(v["verdict"], "accepted");
    let (c, v) = structured(&["verify-proof", proof.to_str().unwrap(), "--goal", &format!("{PQ}p => q")]);
    assert_eq!(c, 0);
    assert_eq!(v["assumptions"], serde_json::json!(["p sub q"]));
    assert_eq!(code(&["verify-proof", proof.to_str().unwrap(), "--goal", &format!("{PQ}q => p")]), 1);
}

#[test]
fn tampered_proofs_are_rejected() {
    let dir = tmp("tamper");
    let proof = dir.join("proof.json");
    assert_eq!(code(&["prove", "-e", &format!("{PQ}p & q => q"), "--out", proof.to_str().unwrap()]), 0);
    let text = fs::read_to_string(&proof).unwrap();
    let bad = text.replacen("\"q\"", "\"p\"", 1);
    assert_ne!(bad, text);
    fs::write(&proof, bad).unwrap();
    assert_ne!(code(&["verify-proof", proof.to_str().unwrap()]), 0);
}

#[test]
fn refuting_models_pass_model_eval() {
    let dir = tmp("refute");
    let model = dir.join("model.json");
    let goal = dir.join("goal.seq");
    fs::write(&goal, format!("{PQ}p <-> q => p = q\n")).unwrap();
    let (c, v) = structured(&["refute", goal.to_str().unwrap(), "--out", model.to_str().unwrap()]);
    assert_eq!(c, 0, "{v}");
    assert_eq!(code(&["model-eval", model.to_str().unwrap()]), 0);
    assert_eq!(code(&["model-eval", model.to_str().unwrap(), goal.to_str().unwrap()]), 0);
    assert_eq!(code(&["refute", "-e", &format!("{PQ}p & q => p")]), 1);
}

#[test]
fn entail_reports_both_directions() {
    let (c, _) = structured(&[
        "entail",
        "--premise",
        "[Tully runs]",
        "--premise",
        "[Tully [is Cicero]]",
        "--conclusion",
        "[Cicero runs]",
        "--theory",
        "names",
    ]);
    assert_eq!(c, 0);
    let (c, v) =
        structured(&["entail", "--premise", "[Tully runs]", "--conclusion", "[Cicero runs]", "--theory", "names"]);
    assert_eq!(c, 1, "{v}");
}

#[test]
fn translate_gives_one_line_per_structure() {
    let out = itl(&["translate", "-e", "[Tully runs]\n[[every man]laughs]"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("runs"));
}

#[test]
fn shipped_corpus_passes() {
    let corpus = format!("{}/data/corpus.json", env!("CARGO_MANIFEST_DIR"));
    let (c, v) = structured(&["corpus", &corpus]);
    assert_eq!(c, 0, "{v}");
    assert!(v["entries"].as_array().unwrap().iter().all(|e| e["pass"] == true));
}

#[test]
fn corpus_reports_a_wrong_expectation() {
    let dir = tmp("corpus");
    let file = dir.join("c.json");
    fs::write(
        &file,
        r#"[{"name": "x", "kind": "sequent", "signature": ["const p : <>"], "sequent": "=> p", "expect": "proof-found"}]"#,
    )
    .unwrap();
    let (c, v) = structured(&["corpus", file.to_str().unwrap()]);
    assert_eq!(c, 1);
    assert_eq!(v["verdict"], "0/1 passed");
}

#[test]
fn structured_reports_are_stable() {
    let args = ["refute", "-e", "const p : <>\nconst q : <>\nconst r : <>\n=> p = q, q = r, r = p"];
    assert_eq!(structured(&args).1, structured(&args).1);
    let out = itl(&[&args[..], &["--format", "structured"]].concat());
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("# generated at "));
}
