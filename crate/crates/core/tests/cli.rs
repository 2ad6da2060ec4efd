//! End-to-end runs of the `complements` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout {:?}: {e}", self.stdout))
    }

    fn error(&self) -> Value {
        serde_json::from_str(&self.stderr).unwrap_or_else(|e| panic!("stderr {:?}: {e}", self.stderr))
    }
}

fn complements<S: AsRef<std::ffi::OsStr>>(args: &[S]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_complements"))
        .args(args)
        .env_remove("COMPLEMENTS_LOG")
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn write(dir: &Path, name: &str, v: &Value) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, v.to_string()).unwrap();
    p
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/classification")
}

#[test]
fn scalar_commands_print_exact_json() {
    let r = complements(&["round", "--a", "2/3", "--n", "4"]);
    assert_eq!((r.code, r.json()), (0, json!({"result": "3/4"})));
    let r = complements(&["round-vector", "--b", "1,1/2,1/3", "--n", "2"]);
    assert_eq!(r.json(), json!({"result": ["1", "1/2", "1/2"]}));
    let r = complements(&["floor", "--a", "-7/2"]);
    assert_eq!(r.json(), json!({"floor": "-4"}));
    let r = complements(&["norm", "--v", "1/2,-3/4"]);
    assert_eq!(r.json(), json!({"norm": "3/4"}));
    let r = complements(&["kodaira", "II*"]);
    assert_eq!(
        r.json(),
        json!({"type": "II*", "d_P": "5/6", "index": 6, "adjunction_index": 12})
    );
    let r = complements(&["gamma", "--nset", "1", "--low-approx", "3/5"]);
    assert_eq!(r.json(), json!({"result": "1/2"}));
}

#[test]
fn restriction_search_and_not_found() {
    let data = [
        "--divisor",
        "1",
        "--v",
        "4142135/10000000",
        "--e",
        "1",
        "--epsilon",
        "1/10",
    ];
    let mut args = data.to_vec();
    args.extend(["--n-max", "500"]);
    let r = complements(&[&["find-n"], args.as_slice()].concat());
    assert_eq!((r.code, r.json()), (0, json!({"n": 12, "v_n": ["5/12"]})));

    let mut args = data.to_vec();
    args.extend(["--n-max", "11"]);
    let r = complements(&[&["find-n"], args.as_slice()].concat());
    assert_eq!(r.code, 2);
    assert_eq!(r.error()["error"], "not_found");
    assert!(r.stdout.is_empty());
}

#[test]
fn error_classes_map_to_exit_codes() {
    let r = complements(&["round", "--a", "5/4", "--n", "3"]);
    assert_eq!((r.code, r.error()["error"].clone()), (1, json!("domain")));
    let r = complements(&["round", "--a", "1/0", "--n", "3"]);
    assert_eq!(r.code, 3);
    let r = complements(&["curve", "classify", "/no/such/file.json"]);
    assert_eq!((r.code, r.error()["error"].clone()), (3, json!("malformed")));

    let dir = TempDir::new().unwrap();
    let bad_json = dir.path().join("bad.json");
    fs::write(&bad_json, "{ not json").unwrap();
    assert_eq!(
        complements(&[Path::new("curve"), Path::new("validate"), &bad_json]).code,
        3
    );

    let dangling = write(
        dir.path(),
        "dangling.json",
        &json!({
            "components": [{"id": "A", "genus": 0}],
            "nodes": [["A", "B"]],
        }),
    );
    let r = complements(&[Path::new("curve"), Path::new("validate"), &dangling]);
    assert_eq!((r.code, r.error()["error"].clone()), (1, json!("invalid_curve")));

    for help in [&["--help"][..], &["--version"], &["curve", "--help"]] {
        assert_eq!(complements(help).code, 0);
    }
}

#[test]
fn curve_complement_round_trip() {
    let dir = TempDir::new().unwrap();
    let pair = write(
        dir.path(),
        "p1.json",
        &json!({
            "components": [{"id": "L", "genus": 0}],
            "boundary": [
                {"component": "L", "point": "a", "mult": "1/2"},
                {"component": "L", "point": "b", "mult": "2/3"},
                {"component": "L", "point": "c", "mult": "3/4"},
            ],
        }),
    );
    let r = complements(&[
        Path::new("curve"),
        Path::new("complement"),
        &pair,
        Path::new("--candidates"),
        Path::new("1,2,3,4,5,6"),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let out = r.json();
    let n = out["n"].as_u64().unwrap();
    let plus = write(dir.path(), "plus.json", &out["boundary"]);
    let r = complements(&[
        Path::new("curve"),
        Path::new("check"),
        &pair,
        Path::new("--plus"),
        &plus,
        Path::new("--n"),
        Path::new(&n.to_string()),
    ]);
    assert_eq!(r.json(), json!({"is_n_complement": true}));

    let r = complements(&[Path::new("curve"), Path::new("degrees"), &pair]);
    assert_eq!(r.json()["components"][0]["anticanonical_degree"], 2);
}

#[test]
fn zariski_on_a_single_curve() {
    let dir = TempDir::new().unwrap();
    let model = write(dir.path(), "model.json", &json!({"classes": ["E"], "q": [["-2"]]}));
    let div = write(dir.path(), "d.json", &json!({"coeffs": {"E": "1"}, "ambient": ["1"]}));
    let r = complements(&[Path::new("zariski"), &model, &div]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let v = r.json();
    assert_eq!(v["fixed"], json!({"E": "1/2"}));
    assert_eq!(v["mobile"]["coeffs"], json!({"E": "1/2"}));
    assert_eq!(v["mobile_intersections"], json!(["0"]));

    let r = complements(&[Path::new("nef-check"), &model, &div]);
    assert_eq!(r.json(), json!({"nef": false, "intersections": ["-1"]}));

    let l = write(dir.path(), "l.json", &json!({"coeffs": {"E": "1/4"}, "ambient": ["1"]}));
    let r = complements(&[Path::new("maximality"), &model, &div, &l]);
    assert_eq!(r.json(), json!({"holds": true}));

    let m = write(dir.path(), "m.json", &json!({"q": [["-2", "1"], ["1", "-2"]]}));
    assert_eq!(
        complements(&[Path::new("negdef"), &m]).json(),
        json!({"negative_definite": true})
    );

    let asym = write(
        dir.path(),
        "asym.json",
        &json!({"classes": ["A", "B"], "q": [["-2", "1"], ["0", "-2"]]}),
    );
    let r = complements(&[Path::new("zariski"), &asym, &div]);
    assert_eq!((r.code, r.error()["error"].clone()), (1, json!("invalid_model")));
}

#[test]
fn decimal_copy_is_marked_approximate() {
    let r = complements(&["--decimal", "4", "merge", "--b", "1/3,1/5,3/4"]);
    let v = r.json();
    assert_eq!(v["result"], json!(["3/4", "8/15"]));
    assert_eq!(v["decimal_approx"]["result"], json!(["~0.7500", "~0.5333"]));
}

#[test]
fn shipped_corpus_passes() {
    let r = complements(&[Path::new("batch"), &corpus().join("manifest.json")]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let v = r.json();
    assert_eq!(v["failed"], json!([]));
    assert_eq!(v["total"], v["passed"]);
    assert!(v["total"].as_u64().unwrap() >= 20);
}

#[test]
fn batch_output_order_ignores_job_count() {
    let manifest = corpus().join("manifest.json");
    let one = complements(&[Path::new("--jobs"), Path::new("1"), Path::new("batch"), &manifest]);
    let four = complements(&[Path::new("--jobs"), Path::new("4"), Path::new("batch"), &manifest]);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn batch_edge_cases() {
    let dir = TempDir::new().unwrap();
    let empty = write(dir.path(), "empty.json", &json!({"cases": []}));
    let r = complements(&[Path::new("batch"), &empty]);
    assert_eq!(
        (r.code, r.json()),
        (0, json!({"total": 0, "passed": 0, "failed": [], "cases": []}))
    );

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"cases\": [").unwrap();
    assert_eq!(complements(&[Path::new("batch"), &broken]).code, 3);

    // copy the corpus and corrupt one fixture
    for entry in fs::read_dir(corpus()).unwrap() {
        let p = entry.unwrap().path();
        fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    fs::write(dir.path().join("triangle.json"), "{\"components\": []}").unwrap();
    let r = complements(&[Path::new("batch"), &dir.path().join("manifest.json")]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["failed"], json!(["triangle"]));
}

#[test]
fn logging_stays_off_stdout() {
    let out = Command::new(env!("CARGO_BIN_EXE_complements"))
        .args(["round", "--a", "1/3", "--n", "5"])
        .env("COMPLEMENTS_LOG", "trace")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v, json!({"result": "2/5"}));
}
