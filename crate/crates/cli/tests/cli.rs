use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn nilcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilcoh"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn betti_of_the_six_torus() {
    let out = nilcoh(&["betti", "--catalog", "torus6"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).lines().any(|l| l == "1 6 15 20 15 6 1"));
    let v = json(&nilcoh(&["betti", "--catalog", "torus6", "--format", "json"]));
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["report"]["betti"], serde_json::json!([1, 6, 15, 20, 15, 6, 1]));
}

#[test]
fn iwasawa_hodge_diamond() {
    let v = json(&nilcoh(&["hodge", "--catalog", "iwasawa", "--format", "json"]));
    let h = &v["report"]["hodge"];
    assert_eq!(h[1][0], 3);
    assert_eq!(h[0][1], 2);
    assert_eq!(v["report"]["status"]["verdict"], "certified");
    let table = stdout(&nilcoh(&["hodge", "--catalog", "iwasawa"]));
    assert!(table.contains("p=1   3   6   6   3"), "{table}");
    assert!(table.contains("* certified"));
}

#[test]
fn h7_symbolic_status_is_unknown() {
    let out = nilcoh(&["status", "--catalog", "h7", "--J", "symbolic", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["report"]["verdict"], "unknown");
    assert_eq!(v["report"]["reason"], "no rational J-invariant candidate filtration");
    let hodge = stdout(&nilcoh(&["hodge", "--catalog", "h7", "--J", "symbolic"]));
    assert!(hodge.contains("NOT certified"));
    let v = json(&nilcoh(&["status", "--catalog", "h7", "--J", "1/2", "--format", "json"]));
    assert_eq!(v["report"]["criterion"], "rational-J");
}

#[test]
fn output_is_deterministic_across_thread_counts() {
    let args = ["froelicher", "--catalog", "iwasawa", "--format", "json"];
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_nilcoh"))
            .args(args)
            .env("NILCOH_THREADS", threads)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert_eq!(one, run("4"));
    assert_eq!(one, run("4"));
}

#[test]
fn froelicher_page_range() {
    let v = json(&nilcoh(&[
        "froelicher", "--catalog", "iwasawa", "--pages", "1", "--format", "json",
    ]));
    let pages = v["report"]["pages"].as_array().unwrap();
    assert_eq!(pages.len(), 1);
    assert_eq!(pages[0]["r"], 1);
    assert_eq!(v["report"]["stable_page"], 2);
    assert_eq!(v["report"]["degenerates_at_first_page"], false);
}

#[test]
fn hochschild_serre_ideals() {
    let v = json(&nilcoh(&["hochschild-serre", "--catalog", "h7", "--format", "json"]));
    assert_eq!(v["report"]["tensor_check"], true);
    assert_eq!(v["report"]["abutment"], serde_json::json!([1, 3, 8, 12, 8, 3, 1]));
    let same = json(&nilcoh(&[
        "hochschild-serre", "--catalog", "h7", "--ideal", "e4,e5,e6", "--format", "json",
    ]));
    assert_eq!(same["report"], v["report"]);
    let derived = json(&nilcoh(&[
        "hochschild-serre", "--catalog", "h7", "--ideal", "derived", "--format", "json",
    ]));
    assert_eq!(derived["report"]["ideal_dim"], 3);
    let out = nilcoh(&["hochschild-serre", "--catalog", "h7", "--ideal", "e1", "--format", "json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "not-ideal");
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&nilcoh(&["bogus"])), 64);
    assert_eq!(code(&nilcoh(&["betti", "--catalog", "torus6", "--frobnicate"])), 64);
    assert_eq!(code(&nilcoh(&["betti"])), 64);
    assert_eq!(code(&nilcoh(&["betti", "--catalog", "a", "--file", "b"])), 64);
    assert_eq!(code(&nilcoh(&["--help"])), 0);
    assert_eq!(code(&nilcoh(&["--version"])), 0);
}

#[test]
fn input_errors_exit_66() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let out = nilcoh(&["betti", "--file", missing.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 66);
    assert_eq!(json(&out)["error"]["kind"], "io");
    let extra = write(dir.path(), "extra.json", r#"{"dim": 2, "brackets": [], "colour": 1}"#);
    let out = nilcoh(&["betti", "--file", &extra, "--format", "json"]);
    assert_eq!(code(&out), 66);
    assert_eq!(json(&out)["error"]["kind"], "schema");
    assert_eq!(code(&nilcoh(&["betti", "--catalog", "nope"])), 66);
    assert_eq!(code(&nilcoh(&["hodge", "--catalog", "h7", "--J", "nope"])), 66);
}

#[test]
fn validation_failures_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let jacobi = write(
        dir.path(),
        "jacobi.json",
        r#"{"dim": 4, "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 3, "j": 4, "k": 1, "c": "1"}]}"#,
    );
    let out = nilcoh(&["check", "--file", &jacobi, "--format", "json"]);
    assert_eq!(code(&out), 2);
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "jacobi");
    assert_eq!(v["error"]["triple"], serde_json::json!([1, 2, 4]));

    let solvable = write(
        dir.path(),
        "solvable.json",
        r#"{"dim": 2, "brackets": [{"i": 1, "j": 2, "k": 2, "c": "1"}]}"#,
    );
    let out = nilcoh(&["betti", "--file", &solvable, "--format", "json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "not-nilpotent");

    assert_eq!(code(&nilcoh(&["hodge", "--catalog", "heisenberg3"])), 2);
}

#[test]
fn non_integrable_structures() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(
        dir.path(),
        "nonint.json",
        r#"{"dim": 4, "brackets": [{"i": 1, "j": 3, "k": 2, "c": "1"}],
            "J_onezero": [["1", "-i", "0", "0"], ["0", "0", "1", "-i"]]}"#,
    );
    let out = nilcoh(&["classify", "--file", &file, "--format", "json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "non-integrable");
    let out = nilcoh(&["check", "--file", &file, "--allow-non-integrable", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["warnings"][0], "complex structure is not integrable");
    assert_eq!(v["report"]["complex_structure"]["integrable"], false);
    let out = nilcoh(&["hodge", "--file", &file, "--allow-non-integrable", "--format", "json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn file_input_matches_catalog() {
    let dir = tempfile::tempdir().unwrap();
    let entry = nilcoh::catalog::get("kodaira").unwrap();
    let text = nilcoh::catalog::to_json(&entry.algebra, Some(&entry.structures[0].j));
    let file = write(dir.path(), "kodaira.json", &text);
    let from_file = json(&nilcoh(&["hodge", "--file", &file, "--format", "json"]));
    let from_catalog = json(&nilcoh(&["hodge", "--catalog", "kodaira", "--format", "json"]));
    assert_eq!(from_file["report"], from_catalog["report"]);
}

#[test]
fn user_filtrations() {
    let dir = tempfile::tempdir().unwrap();
    // 0 ⊂ centre ⊂ g for the Iwasawa algebra.
    let file = write(
        dir.path(),
        "filtration.json",
        r#"{"name": "centre", "steps": [
            [],
            [[0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]],
            [[1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0], [0, 0, 1, 0, 0, 0],
             [0, 0, 0, 1, 0, 0], [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]]
        ]}"#,
    );
    let v = json(&nilcoh(&["series", "--catalog", "iwasawa", "--filtration", &file, "--format", "json"]));
    let series = &v["report"]["series"][0];
    assert_eq!(series["name"], "centre");
    assert_eq!(series["kind"], "principal-torus-bundle");
    assert_eq!(series["dims"], serde_json::json!([0, 2, 6]));

    let v = json(&nilcoh(&[
        "status", "--catalog", "h7", "--J", "symbolic", "--filtration", &file, "--format", "json",
    ]));
    assert_eq!(v["report"]["verdict"], "unknown");
    let extra = &v["report"]["candidates"][3];
    assert_eq!(extra["name"], "centre");
    assert_eq!(extra["kind"], "none");

    let unnested = write(
        dir.path(),
        "unnested.json",
        r#"{"steps": [[], [[0, 0, 0, 0, 1, 0]], [[1, 0, 0, 0, 0, 0]]]}"#,
    );
    let out = nilcoh(&["series", "--catalog", "iwasawa", "--filtration", &unnested, "--format", "json"]);
    assert_eq!(code(&out), 2);
    assert_eq!(json(&out)["error"]["kind"], "malformed-filtration");

    let bad = write(dir.path(), "bad.json", r#"{"steps": [[]], "extra": 1}"#);
    let out = nilcoh(&["series", "--catalog", "iwasawa", "--filtration", &bad]);
    assert_eq!(code(&out), 66);
}

#[test]
fn catalog_listing() {
    let v = json(&nilcoh(&["catalog", "--format", "json"]));
    let names: Vec<&str> = v["report"]["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["torus2", "torus6", "heisenberg3", "kodaira", "iwasawa", "h7"]);
}
