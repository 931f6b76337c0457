use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn homalt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homalt"))
        .args(args)
        .env("HOMALT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/non_right_alt.json")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn twisted_albert_passes_the_main_suites() {
    let o = homalt(&[
        "check",
        "albert5",
        "--twist",
        "2,3,0",
        "--suites",
        "axioms,powers,jordan,operators,identities",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all suites passed"));
}

#[test]
fn inline_twist_matches_flag() {
    let a = homalt(&["albert5", "--twist", "2,3,5"]);
    let c = homalt(&["check", "albert5:2,3,5", "--format", "json"]);
    let d = homalt(&["check", "albert5", "--twist", "2,3,5", "--format", "json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(stdout(&c).replace("albert5:2,3,5", "albert5"), stdout(&d));
}

#[test]
fn fixture_fails_axioms_with_witness() {
    let o = homalt(&[
        "check",
        fixture().to_str().unwrap(),
        "--suites",
        "axioms",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], false);
    let check = &v["suites"][0]["checks"][0];
    assert_eq!(check["law"], "right-hom-alternative");
    assert_eq!(check["witness"]["kind"], "basis");
    assert_eq!(check["witness"]["data"], serde_json::json!([0, 0, 0]));
}

#[test]
fn teichmuller_expansion_vanishes() {
    let o = homalt(&["symbolic", "--teichmuller"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("10 terms → 0"));
}

#[test]
fn shipped_certificates_verify() {
    let o = homalt(&["symbolic", "--certificates", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["certificates"].as_array().unwrap().len(), 6);
}

#[test]
fn malformed_json_is_bad_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "bad.json", "{\"dim\": 2,\n \"basis\": [\"a\"");
    let o = homalt(&["check", &path]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn invalid_arguments_are_bad_input() {
    assert_eq!(
        homalt(&["check", "albert5", "--samples", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        homalt(&["check", "albert5", "--nmax", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        homalt(&["check", "albert5", "--suites", "nope"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        homalt(&["check", "albert5", "--twist", "2,1,0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        homalt(&["check", "/no/such/file.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn non_multiplicative_powers_is_a_precondition_failure() {
    let dir = tempfile::tempdir().unwrap();
    let base = stdout(&homalt(&["albert5"]));
    let mut v: serde_json::Value = serde_json::from_str(&base).unwrap();
    v["alpha"][0][0] = serde_json::json!("2/1");
    let path = write(dir.path(), "nonmult.json", &v.to_string());
    let o = homalt(&["powers", &path, "--n", "3"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
    let o = homalt(&["check", &path, "--suites", "identities"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn missing_idempotent_is_a_precondition_failure() {
    let o = homalt(&["operators", "albert5:2,3,0", "--idempotent", "0,1,0,0,0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn json_reports_are_reproducible() {
    let args = [
        "check",
        "albert5:-1,4,7",
        "--suites",
        "axioms,powers,jordan,identities,symbolic",
        "--seed",
        "9",
        "--format",
        "json",
    ];
    let first = homalt(&args);
    let second = homalt(&args);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn fixture_reports_are_reproducible() {
    let f = fixture();
    let args = [
        "check",
        f.to_str().unwrap(),
        "--suites",
        "axioms,powers,jordan",
        "--format",
        "json",
    ];
    assert_eq!(homalt(&args).stdout, homalt(&args).stdout);
}

#[test]
fn constructions_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = |n: &str| dir.path().join(n).to_str().unwrap().to_string();
    assert!(homalt(&["albert5", "-o", &d("base.json")]).status.success());
    let expected = stdout(&homalt(&["albert5", "--twist", "2,3,1"]));
    let alpha: serde_json::Value = serde_json::from_str(&expected).unwrap();
    let beta = write(dir.path(), "beta.json", &alpha["alpha"].to_string());
    let o = homalt(&[
        "twist",
        &d("base.json"),
        "--beta",
        &beta,
        "-o",
        &d("tw.json"),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let built = std::fs::read_to_string(d("tw.json")).unwrap();
    assert_eq!(built, expected);

    assert!(
        homalt(&["derive", &d("tw.json"), "--n", "2", "-o", &d("der.json")])
            .status
            .success()
    );
    assert!(homalt(&["plus", &d("der.json"), "-o", &d("plus.json")])
        .status
        .success());
    let o = homalt(&["jordan", &d("plus.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = homalt(&["check", &d("der.json"), "--suites", "axioms,powers"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn decompose_prints_both_parts() {
    let o = homalt(&[
        "decompose",
        "albert5:2,3,0",
        "--idempotent",
        "1,0,0,0,0",
        "--element",
        "0,1,0,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(
        v["split"][1],
        serde_json::json!(["0/1", "0/1", "0/1", "0/1", "0/1"])
    );
}

#[test]
fn distinguish_reports_different_twists() {
    let o = homalt(&["distinguish", "albert5:2,3,0", "albert5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not isomorphic"));
    let o = homalt(&["distinguish", "albert5", "albert5"]);
    assert!(stdout(&o).contains("inconclusive"));
}

#[test]
fn identity_from_the_command_line() {
    let ok = homalt(&[
        "identity",
        "albert5:2,3,5",
        "--eq",
        "(= (as x y z) (neg (as x z y)))",
    ]);
    assert_eq!(ok.status.code(), Some(0), "{}", stderr(&ok));
    let bad = homalt(&[
        "identity",
        "albert5:2,3,5",
        "--eq",
        "(= (as x y z) (as x z y))",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    let unparsable = homalt(&["identity", "albert5", "--eq", "(= (as x y"]);
    assert_eq!(unparsable.status.code(), Some(2));
}
