use std::path::{Path, PathBuf};

use qgpd_cli::document::{emit, parse, Document, QuasigroupoidDoc};
use qgpd_cli::{run, Outcome};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_str()
        .unwrap()
        .to_string()
}

fn qgpd(args: &[&str]) -> Outcome {
    run(std::iter::once("qgpd").chain(args.iter().copied()))
}

fn temp_doc(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let p: PathBuf = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn fixtures_are_canonical() {
    let dirs = [fixture(""), fixture("neg")];
    for dir in dirs {
        for entry in std::fs::read_dir(dir).unwrap() {
            let p = entry.unwrap().path();
            if p.extension().is_some_and(|x| x == "json") {
                let text = std::fs::read_to_string(&p).unwrap();
                assert_eq!(emit(&parse(&text).unwrap()), text, "{}", p.display());
            }
        }
    }
}

#[test]
fn check_iso_on_translation_pair() {
    let out = qgpd(&["check-iso", &fixture("mp-z3-translation.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    assert!(out.stdout.ends_with("PASS 0 violations\n"));
}

#[test]
fn corrupted_antipode_reports_d4_3() {
    let out = qgpd(&["validate", &fixture("neg/whq-antipode.json")]);
    assert_eq!(out.code, 1);
    assert!(out.stdout.contains("FAIL axiom=d4-3 witness=1 "), "{}", out.stdout);
    assert!(out.stdout.ends_with("FAIL 4 violations\n"));
}

#[test]
fn factorize_discrete_pair() {
    let out = qgpd(&["factorize", &fixture("discrete2.json"), "--max-arrows", "8"]);
    assert_eq!(out.code, 0);
    assert_eq!(out.stdout, "factorization A=[0,1] H=[0,1]\n1 factorizations\n");
    let out = qgpd(&["factorize", &fixture("coarse2.json"), "--max-arrows", "3"]);
    assert_eq!(out.code, 2, "bound exceeded is an input error");
}

#[test]
fn single_violation_is_one_fail_line() {
    let out = qgpd(&["validate", "--only", "d1", &fixture("neg/whq-d1.json")]);
    assert_eq!(out.code, 1);
    let fails: Vec<&str> = out.stdout.lines().filter(|l| l.starts_with("FAIL axiom=")).collect();
    assert_eq!(fails, ["FAIL axiom=d1 witness=1,1 lhs=(2)e8 rhs=(4)e8"]);
}

#[test]
fn witnesses_rerun_with_only() {
    let full = qgpd(&["validate", &fixture("neg/e2.json")]);
    let only = qgpd(&["validate", "--only", "e2", &fixture("neg/e2.json")]);
    let pick = |s: &str| s.lines().filter(|l| l.starts_with("FAIL axiom=e2 ")).map(String::from).collect::<Vec<_>>();
    assert!(!pick(&full.stdout).is_empty());
    assert_eq!(pick(&full.stdout), pick(&only.stdout));
    let missing = qgpd(&["validate", "--only", "zz", &fixture("neg/e2.json")]);
    assert_eq!(missing.code, 2);
}

#[test]
fn builds_feed_checkers() {
    let dir = tempfile::tempdir().unwrap();
    let dcp = qgpd(&["build", "dcp", &fixture("mp-ms3-parity.json")]);
    assert_eq!(dcp.code, 0, "{}", dcp.stderr);
    let p = temp_doc(&dir, "dcp.json", &dcp.stdout);
    assert_eq!(qgpd(&["validate", &p]).code, 0);

    for (what, file) in [("magma", "coarse2.json"), ("bowtie", "mp-z2-flip.json")] {
        let built = qgpd(&["build", what, &fixture(file)]);
        assert_eq!(built.code, 0, "{}", built.stderr);
        let p = temp_doc(&dir, &format!("{what}.json"), &built.stdout);
        let out = qgpd(&["check-whq", &p]);
        assert_eq!(out.code, 0, "{what}: {}", out.stdout);
        assert_eq!(emit(&parse(&built.stdout).unwrap()), built.stdout);
    }
}

#[test]
fn prime_fields() {
    let dir = tempfile::tempdir().unwrap();
    let built = qgpd(&["build", "magma", "--field=GF7", &fixture("coarse2.json")]);
    assert_eq!(built.code, 0);
    assert!(built.stdout.contains("\"1/1\""));
    let p = temp_doc(&dir, "m.json", &built.stdout);
    assert_eq!(qgpd(&["check-whq", "--field=GF7", &p]).code, 0);
    assert_eq!(qgpd(&["check-iso", "--field=GF2", &fixture("mp-z2-flip.json")]).code, 0);
    let bad = qgpd(&["check-whq", "--field=GF4", &p]);
    assert_eq!(bad.code, 2);
    assert!(bad.stderr.contains("GF4") || bad.stderr.contains('4'), "{}", bad.stderr);
    // 1/7 has no image in GF(7).
    let sevenths = built.stdout.replacen("\"1/1\"", "\"1/7\"", 1);
    let p = temp_doc(&dir, "m7.json", &sevenths);
    assert_eq!(qgpd(&["check-whq", "--field=GF7", &p]).code, 2);
}

#[test]
fn input_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = QuasigroupoidDoc::of(&qgpd::quasigroupoid::discrete_groupoid(2).unwrap());
    doc.product.push([0, 1, 0]);
    let p = temp_doc(&dir, "bad.json", &emit(&Document::Quasigroupoid(doc)));
    let out = qgpd(&["validate", &p]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("range error") && out.stderr.contains("(0,1)"), "{}", out.stderr);

    let p = temp_doc(&dir, "junk.json", "{\"kind\": \"quasigroupoid\", \"version\": 1, \"objects\": 1}");
    let out = qgpd(&["validate", &p]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("schema error"));

    assert_eq!(qgpd(&["validate", "/nonexistent/x.json"]).code, 2);
    assert_eq!(qgpd(&["frobnicate"]).code, 2);
    assert_eq!(qgpd(&["check-iso", &fixture("coarse2.json")]).code, 2);
}

#[test]
fn machine_reports_parse() {
    let out = qgpd(&["suite", "--format=machine", &fixture("factorization-coarse2.json")]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["pass"], true);
    assert_eq!(v["violations"], 0);
    assert!(v["checks"].as_array().unwrap().iter().any(|c| c["axiom"] == "vii"));
}

#[test]
fn discrete_document_counts() {
    let text = std::fs::read_to_string(fixture("discrete2.json")).unwrap();
    let Document::Quasigroupoid(d) = parse(&text).unwrap() else { panic!() };
    assert_eq!((d.objects, d.source.len(), d.product.len()), (2, 2, 2));
}
