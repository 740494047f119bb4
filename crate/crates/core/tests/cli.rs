use std::path::PathBuf;
use std::process::{Command, Output};

use cosheaf::group::IsoClass;
use cosheaf::homology::{bm_homology, Pipeline};
use cosheaf::io::{parse_report, read_document};
use serde_json::Value;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosheaf")).args(args).output().expect("binary runs")
}

fn run_file(cmd: &str, file: &std::path::Path) -> Output {
    run(&[cmd, file.to_str().unwrap()])
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is json")
}

fn stderr_error(o: &Output) -> Value {
    let text = String::from_utf8_lossy(&o.stderr);
    let line = text.lines().rev().find(|l| l.starts_with('{')).expect("error record on stderr");
    serde_json::from_str::<Value>(line).unwrap()["error"].clone()
}

fn write_temp(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn check_accepts_examples() {
    for name in ["triangle_boundary.json", "vertex_z6.json", "three_point.json"] {
        let o = run_file("check", &data(name));
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert_eq!(stdout_json(&o)["valid"], true);
    }
}

#[test]
fn bm_report_round_trips() {
    let file = data("triangle_boundary.json");
    let o = run_file("bm", &file);
    assert_eq!(o.status.code(), Some(0));
    let parsed = parse_report(std::str::from_utf8(&o.stdout).unwrap()).unwrap();
    let doc = read_document(&file).unwrap();
    let direct = bm_homology(doc.complex.as_ref().unwrap(), &doc.cosheaf).unwrap();
    assert_eq!(parsed, direct);
    assert_eq!(parsed.pipeline, Pipeline::Bm);
    assert_eq!(parsed.trimmed(), vec![IsoClass::free(1), IsoClass::free(1)]);
}

#[test]
fn torsion_is_reported_as_strings() {
    let o = run_file("bm", &data("vertex_z6.json"));
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["H"][0]["torsion"], serde_json::json!(["6"]));
}

#[test]
fn poset_documents() {
    let file = data("three_point.json");
    let derived = stdout_json(&run_file("derived", &file));
    assert_eq!(derived["H"][0]["rank"], 0);
    assert_eq!(derived["H"][0]["torsion"], serde_json::json!(["2"]));
    let cech = stdout_json(&run_file("cech", &file));
    assert_eq!(cech["cover_acyclic"], true);
    assert_eq!(cech["H"][0], derived["H"][0]);
    let o = run(&["cosheafify", file.to_str().unwrap(), "--open", "a", "b"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout_json(&o)["comparison_is_iso"], true);
    // Borel-Moore needs a simplicial complex
    let o = run_file("bm", &file);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_error(&o)["class"], "input");
}

#[test]
fn derived_degree_bound() {
    let o = run(&["derived", data("triangle_boundary.json").to_str().unwrap(), "--max-degree", "4"]);
    assert_eq!(stdout_json(&o)["H"].as_array().unwrap().len(), 5);
}

#[test]
fn crosscheck_agrees() {
    let o = run_file("crosscheck", &data("triangle_boundary.json"));
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["agree"], true);
    assert_eq!(v["reports"].as_array().unwrap().len(), 4);
    assert!(v["mismatch"].is_null());
}

#[test]
fn kernel_example() {
    let o = run(&["example", "paper-kernel"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "not a cosheaf");
    assert_eq!(v["nerve_colimit"]["rank"], 2);
    assert_eq!(v["table_value"]["rank"], 1);
    assert_eq!(v["cosheafification_value"]["rank"], 2);
    assert_eq!(v["kernel_table"].as_array().unwrap().len(), 5);
}

#[test]
fn fuzz_is_reproducible() {
    let a = run(&["fuzz", "--seed", "9", "--count", "12"]);
    let b = run(&["fuzz", "--seed", "9", "--count", "12"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v = stdout_json(&a);
    assert_eq!(v["agreed"], 12);
    let env = Command::new(env!("CARGO_BIN_EXE_cosheaf"))
        .args(["fuzz", "--seed", "9"])
        .env("COSHEAF_FUZZ_COUNT", "3")
        .output()
        .unwrap();
    assert_eq!(stdout_json(&env)["count"], 3);
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write_temp(&dir, "broken.json", "{\"kind\": \"poset\",\n  \"elements\": [\"a\"");
    let o = run_file("check", &broken);
    assert_eq!(o.status.code(), Some(1));
    let e = stderr_error(&o);
    assert_eq!((e["class"].as_str(), e["kind"].as_str()), (Some("input"), Some("parse")));
    assert!(e["message"].as_str().unwrap().contains("line 2"), "{e}");

    let missing_map = write_temp(
        &dir,
        "missing.json",
        r#"{"kind": "poset", "elements": ["a", "b"], "hasse": [["a", "b"]],
            "groups": {"a": {"gens": 1}, "b": {"gens": 1}}, "maps": {}}"#,
    );
    let o = run_file("check", &missing_map);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stderr_error(&o)["class"], "input");

    let o = run_file("check", &dir.path().join("absent.json"));
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr_error(&o)["message"].as_str().unwrap().contains("absent.json"));

    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(run(&["derived"]).status.code(), Some(1));
}

#[test]
fn contract_violations_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    // Z/2 -> Z sending the generator to 1 is not well defined
    let ill = write_temp(
        &dir,
        "ill.json",
        r#"{"kind": "poset", "elements": ["a", "b"], "hasse": [["a", "b"]],
            "groups": {"a": {"gens": 1, "relations": [[2]]}, "b": {"gens": 1}}, "maps": {"a>b": [[1]]}}"#,
    );
    let o = run_file("check", &ill);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stderr_error(&o)["class"], "contract");

    // a > b, a > c, b > d, c > d with the two routes a -> d differing
    let diamond = write_temp(
        &dir,
        "diamond.json",
        r#"{"kind": "poset", "elements": ["a", "b", "c", "d"],
            "hasse": [["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]],
            "groups": {"a": {"gens": 1}, "b": {"gens": 1}, "c": {"gens": 1}, "d": {"gens": 1}},
            "maps": {"a>b": [[1]], "a>c": [[1]], "b>d": [[1]], "c>d": [[2]]}}"#,
    );
    let o = run_file("bm", &diamond);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
}
