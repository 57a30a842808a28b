use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use topoforce::harness::{SuiteReport, SweepTable};

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("topoforce-cli-{}-{name}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    fs::write(dir.join("ex1.json"), r#"{"points": ["r", "s"], "opens": [[], ["s"], ["r", "s"]]}"#).unwrap();
    fs::write(dir.join("discrete.json"), r#"{"points": ["a", "b"], "opens": [[], ["a"], ["b"], ["a", "b"]]}"#).unwrap();
    fs::write(dir.join("broken.json"), r#"{"points": ["a", "b"], "opens": [[], ["a"], ["b"]]}"#).unwrap();
    fs::write(
        dir.join("a.json"),
        r#"{"text": "~(sigma = one) \\/ ~~(sigma = one)", "params": {"sigma": {"point": [[{"nat": 0}, "r"]]}, "one": {"nat": 1}}}"#,
    )
    .unwrap();
    fs::write(dir.join("sigma.json"), r#"{"point": [[{"nat": 0}, "r"]], "open": [[{"nat": 2}, ["s"]]]}"#).unwrap();
    fs::write(dir.join("small.json"), r#"{"cap": 8}"#).unwrap();
    dir
}

fn run(dir: &PathBuf, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_topoforce")).current_dir(dir).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn validate_reports_properties_and_rejects_bad_spaces() {
    let dir = workdir("validate");
    let ok = run(&dir, &["validate", "ex1.json"]);
    assert_eq!(ok.status.code(), Some(0));
    let text = stdout(&ok);
    assert!(text.contains("U_r = {r, s}"));
    assert!(text.contains("locally homogeneous: false"));
    let bad = run(&dir, &["validate", "broken.json"]);
    assert_eq!(bad.status.code(), Some(2));
    assert_eq!(run(&dir, &["validate", "missing.json"]).status.code(), Some(2));
}

#[test]
fn tv_and_forces_on_example1() {
    let dir = workdir("tv");
    let tv = run(&dir, &["tv", "ex1.json", "a.json"]);
    assert_eq!(stdout(&tv), "tv = {s}\n");
    let json: serde_json::Value = serde_json::from_slice(&run(&dir, &["--json", "tv", "ex1.json", "a.json"]).stdout).unwrap();
    assert_eq!(json["tv"], serde_json::json!(["s"]));
    assert_eq!(run(&dir, &["forces", "ex1.json", "{r,s}", "a.json"]).status.code(), Some(1));
    let s = run(&dir, &["forces", "ex1.json", "s", "a.json"]);
    assert_eq!(s.status.code(), Some(0));
    assert!(stdout(&s).starts_with("{s} forces ~(sigma = one)"));
    assert_eq!(run(&dir, &["forces", "ex1.json", "r", "a.json"]).status.code(), Some(2));
    assert_eq!(run(&dir, &["tv", "ex1.json", "a.json", "--universe", "small.json"]).status.code(), Some(0));
}

#[test]
fn settle_prints_the_ground_value() {
    let dir = workdir("settle");
    assert_eq!(stdout(&run(&dir, &["settle", "ex1.json", "sigma.json", "r"])), "{<^2, {s}>, <^0, @r>} ^r = 1\n");
    assert!(stdout(&run(&dir, &["settle", "ex1.json", "sigma.json", "s"])).ends_with("^s = {2}\n"));
    assert_eq!(run(&dir, &["settle", "ex1.json", "sigma.json", "q"]).status.code(), Some(2));
}

#[test]
fn axioms_exit_codes() {
    let dir = workdir("axioms");
    let main = run(&dir, &["--json", "axioms", "ex1.json", "--universe", "small.json"]);
    assert_eq!(main.status.code(), Some(0));
    let report: SuiteReport = serde_json::from_slice(&main.stdout).unwrap();
    assert_eq!(report.universe.size, 8);
    let sep = run(&dir, &["axioms", "ex1.json", "--select", "full-separation"]);
    assert_eq!(sep.status.code(), Some(1));
    assert!(stdout(&sep).contains("FAIL full-separation"));
    let all = run(&dir, &["axioms", "discrete.json", "--select", "full-separation,replacement,exponentiation"]);
    assert_eq!(all.status.code(), Some(0));
    assert_eq!(run(&dir, &["axioms", "ex1.json", "--select", "infinity"]).status.code(), Some(2));
}

#[test]
fn example1_enumerate_and_sweep() {
    let dir = workdir("batch");
    let ex = run(&dir, &["--json", "example1"]);
    assert_eq!(ex.status.code(), Some(0));
    let report: SuiteReport = serde_json::from_slice(&ex.stdout).unwrap();
    assert!(report.passed());
    let en = run(&dir, &["enumerate", "3"]);
    assert_eq!(en.status.code(), Some(0));
    assert!(stdout(&en).ends_with("29 spaces (brute force: 29)\n"));
    assert_eq!(run(&dir, &["enumerate", "5"]).status.code(), Some(2));
    let sw = run(&dir, &["--json", "sweep", "2"]);
    assert_eq!(sw.status.code(), Some(0));
    let table: SweepTable = serde_json::from_slice(&sw.stdout).unwrap();
    assert_eq!(table.rows.len(), 4);
    assert!(table.violations.is_empty());
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    let dir = workdir("determinism");
    let a = run(&dir, &["--json", "axioms", "ex1.json"]).stdout;
    let b = run(&dir, &["--json", "axioms", "ex1.json"]).stdout;
    assert_eq!(a, b);
    let s1 = run(&dir, &["--json", "sweep", "3"]).stdout;
    let s2 = run(&dir, &["--json", "sweep", "3"]).stdout;
    assert_eq!(s1, s2);
}
