mod common;

use common::*;
use fdq_cli::format::{deserialize, Document};
use serde_json::Value;

fn star(dir: &std::path::Path) -> fdq::deform::StarProduct {
    match deserialize(&std::fs::read_to_string(dir.join("star.fdq")).unwrap()).unwrap() {
        Document::Star(s) => s,
        _ => unreachable!(),
    }
}

#[test]
fn moyal_file_has_half_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(fdq(dir.path(), &["moyal", "--n", "2", "--pi", "0 1; -1 0", "--order", "3", "-o", "star.fdq"]), 0);
    let text = std::fs::read_to_string(dir.path().join("star.fdq")).unwrap();
    let c1 = text.lines().find(|l| l.starts_with("C 1 ")).unwrap();
    assert!(c1.contains(r#"[[[1,0],[0,1]],[["1/2",[0,0]]]]"#));
}

#[test]
fn pipeline_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    assert_eq!(pipeline(a.path()), vec![0; 4]);
    assert_eq!(pipeline(b.path()), vec![0; 4]);
    for f in ARTIFACTS {
        let (x, y) = (std::fs::read(a.path().join(f)).unwrap(), std::fs::read(b.path().join(f)).unwrap());
        assert_eq!(x, y, "{f} differs between runs");
    }
}

#[test]
fn corrupted_module_fails_with_replayable_witness() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(pipeline(d), vec![0; 4]);
    write_corrupted(&d.join("rho.fdq"), &d.join("bad.fdq"));
    assert_eq!(fdq(d, &["verify", "bad.fdq", "star.fdq", "--json", "bad.json"]), 1);
    let report: Value = serde_json::from_str(&std::fs::read_to_string(d.join("bad.json")).unwrap()).unwrap();
    assert_eq!(report["passed"], Value::Bool(false));
    let bad = read_module(&d.join("bad.fdq"));
    assert_eq!(replay_module_witness(&report, &bad, &star(d)), Ok(1));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("junk.fdq"), "fdq/9\nkind star\n").unwrap();
    std::fs::write(d.join("trunc.fdq"), "fdq/1\nkind module\nvars x:2 y:1\nlambda 2\nrho 0 [[[[0,0]],[[[[\"1\",[0,0,0]]],[0,0],[0]]]]]\n").unwrap();
    assert_eq!(fdq(d, &["verify", "junk.fdq", "junk.fdq"]), 2);
    assert_eq!(fdq(d, &["verify", "trunc.fdq", "missing.fdq"]), 2);
    assert_eq!(fdq(d, &["build", "--star", "trunc.fdq", "-o", "x.fdq"]), 2);
    assert_eq!(fdq(d, &["frobnicate"]), 2);
    assert_eq!(fdq(d, &["moyal", "--n", "2", "--pi", "0 1; 1 0", "--order", "2", "-o", "s.fdq"]), 2);
}

#[test]
fn non_associative_star_is_rejected_by_build() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let text = "fdq/1\nkind star\nvars x:2 y:1\nlambda 1\nC 0 [[[[0,0],[0,0]],[[\"1\",[0,0]]]]]\nC 1 [[[[2,0],[0,0]],[[\"1\",[0,0]]]]]\n";
    std::fs::write(d.join("bad-star.fdq"), text).unwrap();
    assert_eq!(fdq(d, &["build", "--star", "bad-star.fdq", "-o", "rho.fdq"]), 2);
}

#[test]
fn commutant_and_gauge_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(pipeline(d), vec![0; 4]);
    assert_eq!(fdq(d, &["commutant", "rho.fdq", "--op", "y1*dy1", "-o", "c.fdq"]), 0);
    assert_eq!(fdq(d, &["commutant", "rho.fdq", "--check", "c.fdq"]), 0);
    assert_eq!(fdq(d, &["commutant", "rho.fdq", "--op", "dx1"]), 2);
    assert_eq!(fdq(d, &["star-prime", "rho.fdq", "--a", "y1", "--b", "dy1", "-o", "p.fdq"]), 0);
    assert_eq!(fdq(d, &["gauge", "rho.fdq", "--xi", "dy1", "--eta", "y1*dy1", "--json", "g.json"]), 0);
    let g: Value = serde_json::from_str(&std::fs::read_to_string(d.join("g.json")).unwrap()).unwrap();
    assert_eq!(g["data"]["commutator"][0], "dy1");
    assert_eq!(fdq(d, &["equiv", "rho.fdq", "norm.fdq", "-o", "e.fdq"]), 0);
}

#[test]
fn output_directory_override() {
    let (work, out) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let status = std::process::Command::new(env!("CARGO_BIN_EXE_fdq"))
        .args(["moyal", "--n", "2", "--pi", "0 1; -1 0", "--order", "1", "-o", "s.fdq"])
        .current_dir(work.path())
        .env(fdq_cli::OUTPUT_DIR_ENV, out.path())
        .output()
        .unwrap();
    assert!(status.status.success());
    assert!(out.path().join("s.fdq").exists());
    assert!(!work.path().join("s.fdq").exists());
}

#[test]
fn homotopy_test_command() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["homotopy-test", "--seed", "5", "--cases", "4", "--cochain-cases", "2", "--json", "h.json"];
    assert_eq!(fdq(dir.path(), &args), 0);
    let h: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("h.json")).unwrap()).unwrap();
    assert!(h["checks"].as_array().unwrap().len() >= 9);
}
