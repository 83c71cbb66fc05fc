//! Golden tests for the command-line tool: text and JSON forms, exit codes,
//! and a tampered-fixture negative control.

use std::io::Write;
use std::path::Path;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_semigraphoid"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

fn export(dir: &Path) {
    let o = bin().arg("--export-fixtures").arg(dir).output().unwrap();
    assert!(o.status.success());
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

const M: &str = "2.3|14 1.4|23 1.2| 3.4|\n";

#[test]
fn check_text_and_json() {
    let o = run_stdin(&["check", "-"], M);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "SEMIGRAPHOID\n");
    let j = json(&run_stdin(&["--json", "check", "-"], M));
    assert_eq!(j, serde_json::json!({ "n": 4, "semigraphoid": true, "violated": [] }));

    let o = run_stdin(&["check", "-"], "1.2| 1.3|2\n");
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("NOT_SEMIGRAPHOID\n"), "{text}");
    assert!(text.contains("violated:"), "{text}");
}

#[test]
fn closure_golden() {
    let o = run_stdin(&["closure", "-"], "1.2| 1.3|2\n");
    assert_eq!(stdout(&o), "1.2|\n1.3|\n1.3|2\n1.2|3\n");
    let j = json(&run_stdin(&["--json", "closure", "-"], "1.2| 1.3|2\n"));
    assert_eq!(j["size"], 4);
    assert_eq!(j["closure"], serde_json::json!(["1.2|", "1.3|", "1.3|2", "1.2|3"]));
}

#[test]
fn submodular_certificate_golden() {
    let o = run_stdin(&["submodular", "-"], M);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "NOT_SUBMODULAR\n\
         1.2| + 2.3|1 = 2.3| + 1.2|3\n\
         3.4| + 1.4|3 = 1.4| + 3.4|1\n\
         3.4|1 + 2.3|14 = 2.3|1 + 3.4|12\n\
         1.2|3 + 1.4|23 = 1.4|3 + 1.2|34\n\
         sum: 1.4| + 2.3| + 3.4|12 + 1.2|34 = 0\n"
    );
    let j = json(&run_stdin(&["--json", "submodular", "-"], M));
    assert_eq!(j["certificate"].as_array().unwrap().len(), 4);
    assert!(j["certificate"].as_array().unwrap().iter().all(|t| t["multiplier"] == 1));

    let o = run_stdin(&["submodular", "-"], "1.2|\n");
    let text = stdout(&o);
    assert!(text.starts_with("SUBMODULAR\n"), "{text}");
}

#[test]
fn axioms_golden() {
    let o = run(&["axioms", "--n", "3"]);
    assert_eq!(
        stdout(&o),
        "1.2| + 2.3|1 = 2.3| + 1.2|3\n1.2| + 1.3|2 = 1.3| + 1.2|3\n1.3| + 2.3|1 = 2.3| + 1.3|2\n"
    );
    assert_eq!(json(&run(&["--json", "axioms", "--n", "4"]))["count"], 24);
    assert_eq!(json(&run(&["--json", "axioms", "--n", "5"]))["count"], 120);
    assert_eq!(run(&["axioms", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn fixture_commands() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let g = path(dir.path(), "gamma5_statements.txt");
    assert_eq!(stdout(&run(&["coarsest", &g])), "COARSEST\n");
    assert_eq!(stdout(&run(&["coarsest", &path(dir.path(), "m4.txt")])), "NOT_COARSEST\n");
    let j = json(&run(&["--json", "geometry", "fvector", &path(dir.path(), "polytope10.txt")]));
    assert_eq!(j["vertices"], 14);
    assert_eq!(j["f_vector"], serde_json::json!([14, 36, 32, 10]));
    let o = run(&["geometry", "simplicial", &path(dir.path(), "m4.txt")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn errors_exit_with_two() {
    let o = run(&["check", "/nonexistent/input.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error: "));
    let o = run_stdin(&["check", "-"], "1.2|\n1.x|\n");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2, column 1"));
    let o = run_stdin(&["submodular", "-"], "1.2| 1.3|2\n");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_embedded_reports_known_first_failure() {
    let o = run(&["--json", "verify-paper"]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["pass"], false);
    assert_eq!(j["first_failure"], "[7] S_4 orbit of the listed quartic");
    let passing: Vec<u64> = j["groups"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|g| g["pass"] == true)
        .map(|g| g["number"].as_u64().unwrap())
        .collect();
    assert_eq!(passing, [0, 1, 2, 4, 5, 6]);
}

#[test]
fn verify_detects_a_tampered_fixture() {
    let dir = tempfile::tempdir().unwrap();
    export(dir.path());
    let o = run(&["--json", "verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(json(&o)["first_failure"], "[7] S_4 orbit of the listed quartic");

    let file = dir.path().join("gamma5_statements.txt");
    let text = std::fs::read_to_string(&file).unwrap();
    let dropped: Vec<&str> = text.lines().skip(1).collect();
    std::fs::write(&file, dropped.join("\n")).unwrap();
    let o = run(&["--json", "verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let j = json(&o);
    assert_eq!(j["first_failure"], "sha256 gamma5_statements.txt");
    let gamma = j["groups"].as_array().unwrap().iter().find(|g| g["number"] == 4).unwrap();
    assert_eq!(gamma["pass"], false);

    std::fs::remove_file(&file).unwrap();
    let o = run(&["verify-paper", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
