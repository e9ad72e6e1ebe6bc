use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use jacpoly::exactalg::parse;
use serde_json::Value;

const F: &str = "(x+1)^2*(y+1)^4+(x+1)*(y+1)";
const G: &str = "(x+1)^3*(y+1)^6+3/2*(x+1)^2*(y+1)^3+3/8*x";

fn jacpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jacpoly")).args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn walk_example() {
    let v = stdout_json(&jacpoly(&["walk", "-F", F, "-G", G, "-a", "2", "-b", "3"]));
    let summary = v["summary"].as_str().unwrap();
    assert!(summary.contains("(⋆_1) fails"), "{summary}");
    assert!(summary.contains("degree certificate 3"), "{summary}");
    assert_eq!(v["schema"], "jacpoly.walk/1");
}

#[test]
fn generator_example() {
    let v = stdout_json(&jacpoly(&["generator", "-F", F, "-a", "2", "-b", "3"]));
    assert_eq!(v["delta"], 1);
    assert_eq!(v["e"], serde_json::json!(["1"]));
    assert_eq!(parse(v["q"].as_str().unwrap()).unwrap(), parse("(x+1)*(y+1)^2").unwrap());
}

#[test]
fn region_list() {
    let v = stdout_json(&jacpoly(&["region", "-a", "2", "-b", "3", "-m", "2", "-n", "4", "--list"]));
    assert_eq!(v["points"], serde_json::json!([[0, 0]]));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&jacpoly(&["polygon", "-F", "x^"])), 1);
    assert_eq!(code(&jacpoly(&["walk", "-F", F])), 2);
    assert_eq!(code(&jacpoly(&["region", "-a", "3", "-b", "2", "-m", "3", "-n", "3"])), 2);
    assert_eq!(code(&jacpoly(&["region", "-a", "2", "-b", "3", "-m", "2", "-n", "4", "--svg"])), 1);
}

fn poly_fields(v: &Value, keys: &[&str]) {
    for k in keys {
        let s = v[*k].as_str().unwrap_or_else(|| panic!("{k} is a string"));
        let f = parse(s).unwrap();
        assert_eq!(f.to_string(), s, "{k} is printed canonically");
    }
}

#[test]
fn json_file_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = jacpoly(&["generator", "-F", F, "-a", "2", "-b", "3", "--json", path.to_str().unwrap()]);
        assert!(out.status.success());
        assert!(!out.stdout.is_empty(), "summary goes to stdout");
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let v: Value = serde_json::from_slice(&ta).unwrap();
    poly_fields(&v, &["q", "w_f", "inner", "z"]);
    // only the two reports remain; no temp files
    assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    fs::write(&path, format!("{F}\n")).unwrap();
    let arg = format!("@{}", path.display());
    let from_file = jacpoly(&["pregen", "-F", &arg, "-a", "2"]);
    let inline = jacpoly(&["pregen", "-F", F, "-a", "2"]);
    assert_eq!(stdout_json(&from_file), stdout_json(&inline));
    assert_eq!(code(&jacpoly(&["pregen", "-F", "@/nonexistent/f.txt", "-a", "2"])), 1);
}

#[test]
fn batch_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = dir.path().join("jobs.json");
    let jobs = serde_json::json!([
        ["region", "-a", "2", "-b", "3", "-m", "2", "-n", "4", "--list"],
        ["certify", "-F", F, "-a", "2", "-b", "3"],
        ["region", "-a", "3", "-b", "2", "-m", "3", "-n", "3"],
    ]);
    fs::write(&manifest, jobs.to_string()).unwrap();
    let out = jacpoly(&["--batch", manifest.to_str().unwrap()]);
    assert_eq!(code(&out), 2, "worst exit code wins");
    let log = String::from_utf8(out.stdout).unwrap();
    assert!(log.contains("[0] exit 0") && log.contains("[1] exit 0") && log.contains("[2] exit 2"), "{log}");
    let first: Value = serde_json::from_slice(&fs::read(dir.path().join("jobs.0.json")).unwrap()).unwrap();
    assert_eq!(first["points"], serde_json::json!([[0, 0]]));
    assert!(dir.path().join("jobs.1.json").exists());
    assert!(!dir.path().join("jobs.2.json").exists());
}

fn assert_svg(path: &Path) {
    let text = fs::read_to_string(path).unwrap();
    assert!(text.starts_with("<svg") || text.starts_with("<?xml"), "{text:.60}");
    assert!(text.trim_end().ends_with("</svg>"));
}

#[test]
fn svg_output() {
    let dir = tempfile::tempdir().unwrap();
    let (p1, p2) = (dir.path().join("poly.svg"), dir.path().join("walk.svg"));
    assert!(jacpoly(&["polygon", "-F", F, "--svg", p1.to_str().unwrap()]).status.success());
    assert!(jacpoly(&["walk", "-F", F, "-G", G, "-a", "2", "-b", "3", "--svg", p2.to_str().unwrap()]).status.success());
    assert_svg(&p1);
    assert_svg(&p2);
    assert_eq!(code(&jacpoly(&["pregen", "-F", F, "-a", "2", "--svg", p1.to_str().unwrap()])), 2);
}
