use std::path::PathBuf;
use std::process::Command;

use nccumulant_verify::data::{scalar_matrix_data, Num};
use nccumulant_verify::report::{CheckReport, Params, Status};
use nccumulant_verify::suites::{self, run_all};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_nccumulant")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn check_all_is_deterministic() {
    let (a, b) = (run_all(11, 2, 8, None), run_all(11, 2, 8, None));
    assert_eq!(a.len(), suites::SUITES.len());
    for (x, y) in a.iter().zip(&b) {
        assert!(x.passed(), "{}", x.text_line());
        assert!(x.same_outcome(y), "{} differs between runs", x.id);
    }
    assert!(!run_all(12, 2, 8, None).iter().zip(&a).all(|(x, y)| x.same_outcome(y)));
}

#[test]
fn golden_report_reproduces() {
    let text = std::fs::read_to_string(root().join("docs/golden-report.json")).unwrap();
    let golden: CheckReport = serde_json::from_str(&text).unwrap();
    let suite = suites::find(&golden.id).unwrap();
    assert!(suite.run(&golden.params, golden.seed, None).same_outcome(&golden));
    assert!(suite.replay(&golden).same_outcome(&golden));
    // field names and encodings as documented
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_value(&golden).unwrap(), value);
}

/// Trace-free coefficients are a precondition of the alternating-word
/// identity; replacing two of them by the identity breaks it.
fn broken_report() -> CheckReport {
    let suite = suites::find("freeness-characterization").unwrap();
    let mut report = suite.run(&Params { n: 3, ..suite.default_params() }, 5, None);
    assert!(report.passed());
    let one = |i: usize, j: usize| Num(nccumulant::algebra::int((i == j) as i64));
    let identity: Vec<Vec<Num>> = (0..2).map(|i| (0..2).map(|j| one(i, j)).collect()).collect();
    let n = report.params.n;
    report.drawn.coefficients[n + 1] = identity.clone();
    report.drawn.coefficients[n + 2] = identity;
    suite.replay(&report)
}

#[test]
fn witness_replays_to_the_same_failure() {
    let failed = broken_report();
    assert_eq!(failed.status, Status::Fail);
    let witness = failed.witness.clone().unwrap();
    assert!(witness.identity.starts_with("alternating-centered"));

    let again = suites::find(&failed.id).unwrap().replay(&failed);
    assert_eq!((again.status, again.instances), (Status::Fail, 1));
    assert_eq!(again.witness.as_ref(), Some(&witness));

    let dir = std::env::temp_dir().join(format!("nccumulant-replay-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("witness.json");
    std::fs::write(&file, serde_json::to_string(&failed).unwrap() + "\n").unwrap();
    let (code, out) = bin(&["check", "--replay", file.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 1);
    let replayed: CheckReport = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(replayed.witness, Some(witness));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn replaying_a_pass_evaluates_everything() {
    let suite = suites::find("tensor").unwrap();
    let report = suite.run(&Params { n: 3, ..suite.default_params() }, 2, None);
    assert!(suite.replay(&report).same_outcome(&report));
}

#[test]
fn binary_exit_codes() {
    let (code, out) = bin(&["enumerate", "--n", "4", "--lattice", "nc"]);
    assert_eq!((code, out.lines().count()), (0, 14));
    assert_eq!(bin(&["moebius", "--n", "4", "--lattice", "nc"]), (0, "-5\n".into()));
    assert_eq!(bin(&["bogus"]).0, 2);
    assert_eq!(bin(&["check-all", "--nope"]).0, 2);
    let (code, out) = bin(&["check", "moebius", "--n", "99"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("ERROR moebius"));
}

#[test]
fn spec_file_drives_the_models() {
    let dir = std::env::temp_dir().join(format!("nccumulant-spec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("spec.json");
    std::fs::write(
        &file,
        r#"{"variables": [{"name": "s", "moments": [0, 1, 0, 2, 0, 5, 0, 14]}, {"name": "t", "moments": ["1/2", 1, 2, 3, 5, 8, 13, 21]}],
           "families": [{"name": "a", "cumulants": [0, 1, 0, 0, 0, 0, 0, 0]}, {"name": "b", "cumulants": [1, 1, 1, 1, 1, 1, 1, 1]}],
           "max_order": 8, "dimension": 3}"#,
    )
    .unwrap();
    let spec = file.to_str().unwrap();
    for suite in ["free-brillinger", "classical-brillinger", "freeness", "tensor"] {
        let (code, out) = bin(&["check", suite, "--n", "3", "--spec", spec, "--format", "json"]);
        let report: CheckReport = serde_json::from_str(out.trim()).unwrap();
        assert_eq!(code, 0, "{suite}: {report:?}");
        assert_eq!(report.params.dim, 3);
    }
    std::fs::write(&file, r#"{"variables": [{"name": "t", "moments": [1, 2, 3]}]}"#).unwrap();
    let (code, out) = bin(&["check", "classical-brillinger", "--n", "3", "--spec", spec]);
    assert_eq!(code, 1);
    assert!(out.starts_with("ERROR") && out.contains("capacity"), "{out}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn scalar_matrix_encoding() {
    let m = nccumulant::algebra::Matrix::identity(2);
    assert_eq!(serde_json::to_string(&scalar_matrix_data(&m)).unwrap(), r#"[["1","0"],["0","1"]]"#);
}
