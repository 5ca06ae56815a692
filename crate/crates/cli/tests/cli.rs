use std::process::{Command, Output};

use serde_json::Value;

fn rosecover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rosecover")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

const MOD2: [&str; 6] = ["--group", "elementary_abelian:2,2", "--n", "2", "--images", "1,2"];

#[test]
fn build_prints_counts() {
    let out = rosecover(&[&["build"][..], &MOD2].concat());
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "V=4 E=8 rank=5");

    let out = rosecover(&["build", "--group", "cyclic:1", "--n", "3", "--images", "0,0,0"]);
    assert_eq!(stdout(&out).trim(), "V=1 E=3 rank=3");
}

#[test]
fn build_exit_codes() {
    assert_eq!(code(&rosecover(&["build", "--group", "cyclic:3", "--n", "2", "--images", "0,0"])), 3);
    assert_eq!(code(&rosecover(&["build", "--group", "cyclic:3", "--n", "3", "--images", "1,1"])), 2);
    assert_eq!(code(&rosecover(&["build", "--group", "quaternion:8", "--n", "2"])), 2);
    assert_eq!(code(&rosecover(&["build", "--group", "cyclic:3", "--images", "g,q"])), 2);
    assert_eq!(code(&rosecover(&["build", "--n", "2"])), 2);
}

#[test]
fn build_writes_dot_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("y.dot");
    let out = rosecover(&[&["build", "--json", "--dot", dot.to_str().unwrap()][..], &MOD2].concat());
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], 5);
    assert_eq!(v["cotree"].as_array().unwrap().len(), 5);
    let text = std::fs::read_to_string(dot).unwrap();
    assert!(text.starts_with("digraph cover {"));
    assert_eq!(text.matches("->").count(), 8);
}

#[test]
fn group_from_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z3.json");
    std::fs::write(&path, r#"{"order": 3, "mul": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
    let out = rosecover(&["build", "--group", path.to_str().unwrap(), "--images", "1,0,2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "V=3 E=9 rank=7");

    std::fs::write(&path, r#"{"order": 2, "mul": [[0,1],[1,1]]}"#).unwrap();
    assert_eq!(code(&rosecover(&["build", "--group", path.to_str().unwrap(), "--images", "1,1"])), 2);
}

#[test]
fn verify_cw_examples() {
    let out = rosecover(&[&["verify-cw"][..], &MOD2].concat());
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("isotypic dims 2,1,1,1"));

    let out = rosecover(&["verify-cw", "--group", "symmetric:3", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let cells: Vec<&str> = text.lines().next().unwrap().split_whitespace().skip(1).collect();
    assert_eq!(cells[0], "e:13");
    assert_eq!(cells.len(), 6);
    assert!(cells[1..].iter().all(|c| c.ends_with(":1")));

    assert_eq!(code(&rosecover(&["verify-cw", "--group", "trivial", "--n", "3"])), 0);

    let out = rosecover(&["verify-cw", "--json", "--group", "symmetric:3", "--n", "3"]);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["characters"]["traces"][0], "13");
    assert!(v["isotypic"].is_null());
}

#[test]
fn move_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert_path = dir.path().join("cert.json");
    let out = rosecover(&[
        "move",
        "--group",
        "elementary_abelian:2,2",
        "--images",
        "1,2,0",
        "--vector",
        "1,0,0,0,0,0,0,0,0",
        "--out",
        cert_path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verified true"));
    let cert: Value = serde_json::from_str(&std::fs::read_to_string(&cert_path).unwrap()).unwrap();
    assert_eq!(cert["orbit_rank_value"], 4);
    assert!(cert["ell"].is_string());
    assert_eq!(cert["matrix"].as_array().unwrap().len(), 9);
}

#[test]
fn move_is_deterministic() {
    let args =
        ["--json", "move", "--group", "dihedral:4", "--n", "3", "--vector", "1/2,-1,0,0,0,0,0,0,0,0,0,0,0,0,0,0,3"];
    let first = rosecover(&args);
    assert_eq!(code(&first), 0, "{}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, rosecover(&args).stdout);
}

#[test]
fn move_exit_codes() {
    let zero =
        rosecover(&["move", "--group", "elementary_abelian:2,2", "--images", "1,2,0", "--vector", "0,0,0,0,0,0,0,0,0"]);
    assert_eq!(code(&zero), 4);
    let rank_two = rosecover(&[&["move", "--vector", "1,0,0,0,0"][..], &MOD2].concat());
    assert_eq!(code(&rank_two), 5);
    let exhausted =
        rosecover(&["move", "--group", "symmetric:4", "--n", "3", "--vector-word", "a3", "--max-candidates", "0"]);
    assert_eq!(code(&exhausted), 6);
    let wrong_len = rosecover(&["move", "--group", "cyclic:2", "--n", "3", "--vector", "1,2"]);
    assert_eq!(code(&wrong_len), 2);
    let open_lift = rosecover(&["move", "--group", "cyclic:2", "--n", "3", "--vector-word", "a1"]);
    assert_eq!(code(&open_lift), 2);
}

#[test]
fn move_vector_word() {
    let out = rosecover(&["move", "--group", "cyclic:3", "--images", "1,1,0", "--vector-word", "a3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn slide_matrix() {
    let out =
        rosecover(&["--json", "slide", "--group", "cyclic:3", "--images", "1,1,0", "--petal", "1", "--ell", "a3"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["petal"], 1);
    assert_eq!(v["ell"], "a3");
    assert_eq!(v["matrix"].as_array().unwrap().len(), 7);

    let not_closed = rosecover(&["slide", "--group", "cyclic:3", "--images", "1,1,0", "--petal", "1", "--ell", "a2"]);
    assert_eq!(code(&not_closed), 2);
    let uses_petal = rosecover(&["slide", "--group", "cyclic:3", "--images", "1,1,0", "--petal", "3", "--ell", "a3"]);
    assert_eq!(code(&uses_petal), 2);
}

#[test]
fn selftest_passes() {
    let out = rosecover(&["selftest", "--quick"]);
    assert_eq!(code(&out), 0, "{}", stdout(&out));
    let names: Vec<String> = stdout(&out).lines().map(|l| l.split(':').next().unwrap().to_string()).collect();
    assert_eq!(names, ["characters", "formula-oracle", "goldens", "mover"]);
}

#[test]
fn selftest_reports_injected_fault() {
    let out = rosecover(&["selftest", "--quick", "--inject-fault", "mover"]);
    assert_ne!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stderr).contains("selftest failed: mover"));
    assert!(stdout(&out).contains("mover: FAILED"));
}
