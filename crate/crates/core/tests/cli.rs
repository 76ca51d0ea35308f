//! The command-line binary, run as a subprocess.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nervelab"))
}

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nervelab_cli_{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn betti_of_the_shipped_torus() {
    let o = run(&["betti", "--input", &fixture("torus7.cplx"), "--up-to", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1 2 1\n");
}

#[test]
fn luck_row() {
    let o = run(&["luck", "--wedge", "2", "--cyclic", "10", "--degree", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,b_d,ratio,closed_form\n10,11,1.1,11\n");
}

#[test]
fn thinning_is_byte_identical() {
    let args = ["thin", "--space", &fixture("circle.mms"), "--eps", "0.5", "--seed", "7"];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.status.code(), Some(0));
    assert!(!a.stdout.is_empty());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    let unknown = run(&["bogus"]);
    assert_eq!(unknown.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));
    assert_eq!(run(&["betti", "--input", "/no/such/file"]).status.code(), Some(2));
    let bad = scratch("bad.cplx");
    std::fs::write(&bad, "0 1\n1 x\n").unwrap();
    assert_eq!(run(&["betti", "--input", bad.to_str().unwrap()]).status.code(), Some(2));
    let mv = run(&["mvcheck", "--input", &fixture("hexagon.cplx"), "--u", "0,1,2", "--v", "3,4,5"]);
    assert_eq!(mv.status.code(), Some(1));
}

#[test]
fn reports_have_matching_json_mirrors() {
    let out = scratch("luck.csv");
    let o = run(&["luck", "--wedge", "3", "--cyclic", "2,4,8", "--expected-limit", "2", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(out.with_extension("json")).unwrap()).unwrap();
    assert_eq!(json["schema_version"], 1);
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    for (line, row) in csv.lines().skip(1).zip(json["rows"].as_array().unwrap()) {
        for (cell, col) in line.split(',').zip(&header) {
            assert_eq!(row[*col].to_string(), cell);
        }
    }
    assert!(csv.contains("8,17,2.125,17,0.125"));
}

#[test]
fn config_file_with_override() {
    let cfg = scratch("luck.cfg");
    std::fs::write(&cfg, "# chain of covers\nwedge = 4\ncyclic = 5\ndegree = 1\n").unwrap();
    let from_file = run(&["luck", "--config", cfg.to_str().unwrap()]);
    assert_eq!(stdout(&from_file).lines().nth(1), Some("5,16,3.2,16"));
    let overridden = run(&["luck", "--config", cfg.to_str().unwrap(), "--wedge", "2"]);
    assert_eq!(stdout(&overridden).lines().nth(1), Some("5,6,1.2,6"));
}

#[test]
fn remaining_subcommands() {
    let o = run(&["mvcheck", "--input", &fixture("hexagon.cplx"), "--u", "0,1,2,3", "--v", "3,4,5,0"]);
    assert_eq!(stdout(&o), "0 <= 1 + 0 holds\n");
    assert_eq!(stdout(&run(&["girth", "--input", &fixture("hexagon.cplx")])), "6\n");
    let o = run(&["profile", "--input", &fixture("hexagon.cplx"), "--radius", "1"]);
    assert!(stdout(&o).starts_with("classes 1\n1 "));
    let glued = scratch("glued.cplx");
    let member = format!("{}=1/2", fixture("torus7.cplx"));
    let o = run(&["glue", "--member", &member, "--multiplier", "4", "--out", glued.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&run(&["betti", "--input", glued.to_str().unwrap()])), "1 4 2\n");
    let o = run(&["nerve", "--space", &fixture("circle.mms"), "--eps", "0.5", "--seed", "3"]);
    assert!(stdout(&o).starts_with("betti 1 1"));
    let o = run(&["cheeger", "--space", &fixture("circle.mms"), "--radius", "1", "--mode", "heuristic", "--seed", "2"]);
    assert!(stdout(&o).starts_with("h_r "));
    let o = run(&["cheeger", "--circle", "12", "--step", "1/2", "--radius", "1"]);
    assert_eq!(stdout(&o), "length,points,h_r\n12,24,0.8333333333333334\n");
    let o = run(&["forest", "--p", "4", "--seed", "1"]);
    assert!(stdout(&o).contains("acyclic true"));
    let o = run(&["elek", "--torus", "6,8", "--radius", "2"]);
    assert_eq!(stdout(&o).lines().nth(1), Some("0,36,6,2,0.05555555555555555,0"));
    let o = run(&[
        "relate", "--space", &fixture("circle.mms"), "--p1", "0", "--p2", "0", "--eps", "0.3", "--radius", "2",
        "--mu1", &["1"; 48].join(","), "--mu2", &["1"; 48].join(","),
    ]);
    assert_eq!(stdout(&o), "true\n");
}
