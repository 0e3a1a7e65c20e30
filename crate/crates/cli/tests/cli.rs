use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/corpus").join(name)
}

fn fqcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fqcat")).args(args).output().unwrap()
}

fn code(args: &[&str]) -> i32 {
    fqcat(args).status.code().unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn exit_codes_on_the_corpus() {
    let p2 = corpus("p2.fcat");
    assert_eq!(code(&["validate", path(&p2)]), 0);
    assert_eq!(code(&["model-check", path(&p2)]), 0);
    assert_eq!(code(&["validate", path(&corpus("c2fold.fcat"))]), 3);
    assert_eq!(code(&["model-check", path(&corpus("c2fold.fcat"))]), 2);
    for name in ["mut_factorization", "mut_lifting", "mut_two_of_three"] {
        assert_eq!(code(&["model-check", path(&corpus(&format!("{name}.fcat")))]), 1, "{name}");
    }
    for name in ["chain3_cof_unstable", "b2_weq_unstable"] {
        assert_eq!(code(&["check-model-filter", path(&corpus(&format!("{name}.fcat")))]), 1, "{name}");
    }
    assert_eq!(code(&["validate", "/nonexistent.fcat"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn mutation_names_the_axiom() {
    let out = fqcat(&["model-check", path(&corpus("mut_factorization.fcat"))]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("FAIL") && l.contains("axiom factorization")), "{text}");
}

#[test]
fn json_report_shape() {
    let out = fqcat(&["--json", "model-check", path(&corpus("mut_lifting.fcat"))]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tool_version"], "fqcat 0.1.0");
    assert_eq!(v["input_digest"].as_str().unwrap().len(), 64);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks[0]["status"], "fail");
    assert_eq!(checks[0]["name"], "axiom lifting");
    assert!(checks.iter().all(|c| c.get("witness").is_some()));
}

#[test]
fn quotient_with_oracle_and_emit() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.fcat");
    let p2 = corpus("p2.fcat");
    assert_eq!(code(&["quotient", path(&p2), "--filter", "0,1", "--oracle", "--emit", path(&out)]), 0);
    assert_eq!(code(&["validate", path(&out)]), 0);
    assert_eq!(code(&["model-check", path(&out)]), 0);
    let text = String::from_utf8(fqcat(&["quotient", path(&p2), "--filter", "0,1", "--oracle"]).stdout).unwrap();
    assert!(text.contains("oracle isomorphism"));
}

#[test]
fn product_with_collapse_record() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("p.fcat");
    let p2 = corpus("p2.fcat");
    let r = fqcat(&["product", path(&p2), "--index", "a,b", "--filter-min", "a", "--emit", path(&out)]);
    assert_eq!(r.status.code(), Some(0));
    assert!(String::from_utf8(r.stdout).unwrap().contains("principal collapse"));
    assert_eq!(code(&["model-check", path(&out)]), 0);
    assert_eq!(code(&["product", path(&p2), "--index", "a,b", "--filter-sets", "a,b"]), 0);
    assert_eq!(code(&["product", path(&p2), "--index", "a,b"]), 2);
}

#[test]
fn filters_and_subterminals() {
    let b2 = corpus("b2.fcat");
    let out = fqcat(&["--json", "filters", path(&b2), "--enumerate"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(fqcat(&["subterminals", path(&b2)]).stdout).unwrap();
    assert!(text.contains("(1,1)"));
}

#[test]
fn transfer_of_diagonal_meet() {
    let r = fqcat(&[
        "transfer",
        path(&corpus("p2.fcat")),
        path(&corpus("b2.fcat")),
        "--adjunction",
        path(&corpus("delta_meet.fadj")),
    ]);
    let text = String::from_utf8(r.stdout).unwrap();
    assert_eq!(r.status.code(), Some(0), "{text}");
    assert!(text.contains("induced adjunction"));
}

#[test]
fn reports_are_byte_identical() {
    let args = ["--json", "quotient", "../core/corpus/b2.fcat", "--filter", "(0,1),(1,1)"];
    let a = Command::new(env!("CARGO_BIN_EXE_fqcat"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .unwrap();
    let b = Command::new(env!("CARGO_BIN_EXE_fqcat"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn morphism_limit_is_enforced() {
    assert_eq!(code(&["--max-morphisms", "2", "validate", path(&corpus("b2.fcat"))]), 2);
}
