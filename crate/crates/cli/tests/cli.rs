use std::io::Write;
use std::process::{Command, Output, Stdio};

use hyperquadric::maps::MapDescriptor;

const EXAMPLE: &str =
    r#"{"source":{"r":1,"s":1},"target":{"r":2,"s":2,"t":1},"components":["z1^2","z2^2","z1*z2","z2^2","z2^2"]}"#;
const SCALED: &str = r#"{"source":{"r":1,"s":1},"target":{"r":1,"s":1},"components":["z1","2*z2"]}"#;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_hyperquadric"));
    c.env_remove("HYPERQUADRIC_SEED");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn classify_example_text() {
    let o = run(&["classify", EXAMPLE]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict: QuasiStandard"), "{out}");
    assert!(out.contains("A ≅ P^{1,1}: span{e1, e3}"), "{out}");
    assert!(out.contains("B ≅ P^{1,1,1}: span{e2, e4, e5}"), "{out}");
}

#[test]
fn classify_example_json_round_trips_the_map() {
    let o = run(&["classify", "--format", "json", EXAMPLE]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema"], 1);
    assert_eq!(v["verdict"], "QuasiStandard");
    assert_eq!(v["witness"]["a"]["abc"], serde_json::json!([1, 1, 0]));
    let desc: MapDescriptor = serde_json::from_value(v["map"].clone()).unwrap();
    let original: MapDescriptor = serde_json::from_str(EXAMPLE).unwrap();
    assert_eq!(desc.to_map().unwrap(), original.to_map().unwrap());
}

#[test]
fn ortho_test_on_a_scaled_map() {
    let o = run(&["ortho-test", "--format", "json", SCALED]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["orthogonal"], false);
    assert_eq!(v["k"], 0);
    let o = run(&["ortho-test", EXAMPLE]);
    assert!(stdout(&o).contains("orthogonal: true"));
}

#[test]
fn decompose_and_planes() {
    let o = run(&["decompose", "--format", "json", EXAMPLE]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["found"], true);
    assert_eq!(v["projection_a"]["components"], serde_json::json!(["z1^2", "0", "z1*z2", "0", "0"]));
    let o = run(&["decompose", SCALED]);
    assert!(stdout(&o).contains("no decomposition found"));
    let o = run(&["planes", "--format", "json", "--symbolic", EXAMPLE]);
    let v = json(&o);
    assert_eq!(v["k"], 0);
    assert_eq!(v["generic_dim"], 0);
    assert_eq!(v["boundary_bound"], 2);
    assert_eq!(v["within_bound"], true);
}

#[test]
fn input_from_stdin_and_file() {
    let mut child = bin().args(["classify", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    child.stdin.take().unwrap().write_all(EXAMPLE.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(stdout(&o).contains("QuasiStandard"));

    let path = std::env::temp_dir().join(format!("hyperquadric-cli-{}.json", std::process::id()));
    std::fs::write(&path, SCALED).unwrap();
    let o = run(&["classify", path.to_str().unwrap()]);
    std::fs::remove_file(&path).ok();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: Linear"));
}

#[test]
fn input_errors_exit_with_one() {
    let bad_poly = r#"{"source":{"r":1,"s":1},"target":{"r":1,"s":1},"components":["z1 + ","z2"]}"#;
    let o = run(&["classify", bad_poly]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1, column"));
    let mismatch = r#"{"source":{"r":1,"s":1},"target":{"r":2,"s":1},"components":["z1","z2"]}"#;
    let o = run(&["classify", mismatch]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("descriptor error"));
    assert_eq!(run(&["classify", "/nonexistent/map.json"]).status.code(), Some(1));
    assert_eq!(run(&["fuzz", "--theorem", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(1));
}

#[test]
fn verify_single_maps() {
    let o = run(&["verify", "--format", "json", EXAMPLE]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["reports"].as_array().unwrap().len(), 10);
    let o = run(&["verify", "--theorem", "equiv1", SCALED]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("equiv1      PASS"));
}

#[test]
fn fuzz_is_deterministic_and_clean() {
    let out = std::env::temp_dir().join(format!("hyperquadric-fuzz-{}.json", std::process::id()));
    let args = ["fuzz", "--seeds", "1", "--format", "json", "--out", out.to_str().unwrap()];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let written = std::fs::read(&out).unwrap();
    std::fs::remove_file(&out).ok();
    assert_eq!(written, a.stdout);
    let v = json(&a);
    assert_eq!(v["schema"], 1);
    for r in v["reports"].as_array().unwrap() {
        assert_eq!(r["counterexamples"], serde_json::json!([]), "{}", r["theorem"]);
    }
    assert_eq!(v["instances"].as_array().unwrap().len(), v["corpus_size"].as_u64().unwrap() as usize);
}

#[test]
fn seed_comes_from_the_environment() {
    let o = bin()
        .args(["fuzz", "--seeds", "1", "--theorem", "less", "--format", "json"])
        .env("HYPERQUADRIC_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(json(&o)["seed"], 7);
    let o = run(&["fuzz", "--seeds", "1", "--theorem", "less", "--format", "json", "--seed", "9"]);
    assert_eq!(json(&o)["seed"], 9);
}
