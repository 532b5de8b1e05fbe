use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use trivext_harness::report::ReportFile;
use trivext_harness::ringspec::RingSpec;

fn trivext(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_trivext")).args(args).output().unwrap()
}

fn spec(name: &str) -> String {
    format!("{}/specs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn schema() -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.schema.json");
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(report: &Path) -> Value {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema()).unwrap();
    let errors: Vec<String> = validator.iter_errors(&doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:?}");
    doc
}

fn tmp(dir: &tempfile::TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

#[test]
fn check_single_claim_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "r.json");
    let o = trivext(&["check", "--suite", "small", "--checks", "ex2.4.ann", "--seed", "7", "--report", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = assert_valid(&out);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 1);
    assert_eq!(doc["reports"][0]["status"]["kind"], "confirmed");
}

#[test]
fn open_check_never_fails_the_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "r.json");
    let o = trivext(&["check", "--suite", "small", "--checks", "thm2.6.intersection", "--report", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let doc = assert_valid(&out);
    let r = &doc["reports"][0];
    assert_eq!(r["registry_status"], "open");
    assert_eq!(r["status"]["kind"], "counterexample");
    let o = trivext(&["replay", "--report", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "thm2.6.intersection: still fails\n");
}

#[test]
fn small_suite_report_validates_and_is_total() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "r.json");
    let o = trivext(&["check", "--suite", "small", "--checks", "all", "--seed", "3", "--report", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc = assert_valid(&out);
    assert_eq!(doc["reports"].as_array().unwrap().len(), 23);
    let again = tmp(&dir, "r2.json");
    trivext(&["check", "--suite", "small", "--checks", "all", "--seed", "3", "--report", again.to_str().unwrap()]);
    assert_eq!(std::fs::read(&out).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn check_on_a_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = tmp(&dir, "r.json");
    let o = trivext(&[
        "check", "--spec", &spec("small_suite.toml"), "--suite", "small",
        "--checks", "ax.ring,ex2.4.ann,lem2.7.formulas,prod.componentwise", "--report", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let doc = assert_valid(&out);
    assert_eq!(doc["reports"][0]["instances_run"], 5);
    for r in doc["reports"].as_array().unwrap() {
        assert_eq!(r["status"]["kind"], "confirmed", "{r}");
    }
}

#[test]
fn exit_two_on_a_standard_counterexample() {
    let mut file = ReportFile::from_json(
        r#"{"version": 1, "seed": 0, "config_digest": "00", "reports": [{"check": "ax.ring", "anchor": "",
        "registry_status": "standard", "status": {"kind": "counterexample", "witness": {"check": "ax.ring",
        "ring": {"kind": "zmod", "n": 4}, "elements": [[1], [1], [1]], "detail": "identity"}}, "instances_run": 1}]}"#,
    )
    .unwrap();
    assert_eq!(file.exit_code(), 2);
    file.reports[0].registry_status = trivext_harness::report::RegistryStatus::Open;
    assert_eq!(file.exit_code(), 0);
}

#[test]
fn replay_of_a_bogus_witness_reports_no_failure() {
    let dir = tempfile::tempdir().unwrap();
    let path = tmp(&dir, "r.json");
    std::fs::write(
        &path,
        r#"{"version": 1, "seed": 0, "config_digest": "00", "reports": [{"check": "ax.ring", "anchor": "",
        "registry_status": "standard", "status": {"kind": "counterexample", "witness": {"check": "ax.ring",
        "ring": {"kind": "zmod", "n": 4}, "elements": [[1], [2], [3]], "detail": "made up"}}, "instances_run": 1}]}"#,
    )
    .unwrap();
    let o = trivext(&["replay", "--report", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), "ax.ring: no longer fails\n");
}

#[test]
fn parse_errors_exit_one_with_a_location() {
    let dir = tempfile::tempdir().unwrap();
    let bad = tmp(&dir, "bad.toml");
    std::fs::write(&bad, "version = 1\n\n[rings.r]\nkind = \"zmod\"\nn = 4\ncolour = 2\n").unwrap();
    let o = trivext(&["ideal", "--spec", bad.to_str().unwrap(), "--op", "inv", "--args", "{(2)}"]);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr(&o);
    assert!(e.contains("bad.toml: line 3"), "{e}");
    assert!(e.contains("colour"), "{e}");
    std::fs::write(&bad, "version = 1\n[rings.r\n").unwrap();
    let o = trivext(&["check", "--spec", bad.to_str().unwrap(), "--checks", "ax.ring"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
    let o = trivext(&["check", "--seed", "minus-one"]);
    assert_eq!(o.status.code(), Some(1));
    let o = trivext(&["check", "--checks", "nope"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unregistered check `nope`"));
    let o = trivext(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn ideal_examples() {
    let o = trivext(&["ideal", "--spec", &spec("z4e.toml"), "--op", "ann", "--args", "(0, 1)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(
        stdout(&o),
        "ring: Z/4 ∝ k^1\n(0 : (0, 1)):\nideal of order 4\nminimal generators (μ = 2): (2, 0), (0, 1)\n\
         elements: (0, 0), (2, 0), (0, 1), (2, 1)\n= U ∝ E' with U = <(2)> of order 2, E' = E\n"
    );
    let o = trivext(&["ideal", "--spec", &spec("symbolic.toml"), "--op", "inv", "--args", "{(2, 0)}", "--ring", "zq"]);
    assert_eq!(stdout(&o), "ring: Z ∝ Q\n(2Z ∝ Q)^-1 = (1/2)Z ∝ Q\n");
    for i in ["m", "j", "i", "whole"] {
        let cap = trivext(&["ideal", "--spec", &spec("z4e.toml"), "--op", "cap", "--args", i, "whole"]);
        let v = trivext(&["ideal", "--spec", &spec("z4e.toml"), "--op", "cap", "--args", i, i]);
        assert_eq!(stdout(&cap), stdout(&v));
    }
    let o = trivext(&["ideal", "--spec", &spec("symbolic.toml"), "--op", "cap", "--args", "mixed", "{(1, 0)}"]);
    assert_eq!(stdout(&o), "ring: Z ∝ Q\n2Z ∝ Q ∩ R = 2Z ∝ Q\n");
    let o = trivext(&["ideal", "--spec", &spec("z4e.toml"), "--op", "v", "--args", "j"]);
    assert!(stdout(&o).contains("ideal of order 8"));
    let o = trivext(&["ideal", "--spec", &spec("z4e.toml"), "--op", "ann", "--args", "nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn resolve_examples() {
    let o = trivext(&["resolve", "--spec", &spec("z4.toml"), "--module", "two", "--depth", "4"]);
    let s = stdout(&o);
    assert!(s.contains("F4 = R^1 → F3: (2)\n"), "{s}");
    assert!(s.ends_with("pd: NotFreeUpTo(4)\n"), "{s}");
    let o = trivext(&["resolve", "--spec", &spec("z4.toml"), "--module", "free2", "--depth", "3"]);
    assert!(stdout(&o).ends_with("pd: Free(0)\n"));
    let o = trivext(&["resolve", "--spec", &spec("z6.toml"), "--module", "quot"]);
    assert!(stdout(&o).ends_with("pd: Free(0)\n"));
}

#[test]
fn budget_override_is_honoured() {
    let o = Command::new(env!("CARGO_BIN_EXE_trivext"))
        .args(["ideal", "--spec", &spec("z4e.toml"), "--op", "ann", "--args", "(0, 1)"])
        .env("TRIVEXT_BUDGET", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("budget"), "{}", stderr(&o));
    let o = Command::new(env!("CARGO_BIN_EXE_trivext"))
        .args(["list"])
        .env("TRIVEXT_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn shipped_specs_round_trip() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("specs");
    let mut n = 0;
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let s = RingSpec::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let printed = s.to_toml();
        assert_eq!(RingSpec::parse(&printed).unwrap(), s, "{}", path.display());
        assert_eq!(RingSpec::parse(&printed).unwrap().to_toml(), printed);
        n += 1;
    }
    assert!(n >= 5);
}
