use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_betti-cone"));
    cmd.env_remove("BETTI_CONE_THREADS");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn run_stdin(args: &[&str], input: &str) -> Output {
    let mut child = bin()
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn pure_table() {
    let o = run(&["pure", "--degseq", "0,3,4,6,7,9", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("0 | 5/189"));
    assert!(text.contains("4 |"));
    assert!(text.trim_end().ends_with("2/27"));
}

#[test]
fn pure_json_parses() {
    let o = run(&["pure", "--degseq", "0,2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 3);
}

#[test]
fn bad_degree_sequence_is_exit_2() {
    let o = run(&["pure", "--degseq", "0,3,3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn secant_pure_reports_degree_sequence() {
    let o = run(&["secant-pure", "-g", "4", "-k", "2", "-d", "15", "--tuple", "1,3,3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("# degseq: 0,4,5,6,9,10,12\n"));

    let o = run(&["secant-pure", "-g", "3", "-k", "1", "-d", "11", "--dominant", "--format", "table"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&["secant-pure", "-g", "3", "-k", "1", "-d", "8", "--dominant"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decompose_round_trip_through_stdin() {
    let diagram = run(&["secant-pure", "-g", "2", "-k", "1", "-d", "9", "--dominant"]);
    let o = run_stdin(&["decompose", "--input", "-"], &stdout(&diagram));
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["residual"].is_null());
    assert_eq!(v["summands"].as_array().unwrap().len(), 1);
}

#[test]
fn decompose_outside_cone_is_exit_3_with_partial() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b.json");
    let pure = stdout(&run(&["pure", "--degseq", "0,2,3"]));
    let mut v: serde_json::Value = serde_json::from_str(&pure).unwrap();
    // dropping column 1 leaves a gap below the projective dimension
    let text = serde_json::to_string(&strip_column(&mut v, 1)).unwrap();
    fs::write(&path, text).unwrap();
    let o = run(&["decompose", "--input", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    let partial: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(partial.get("summands").is_some());
}

fn strip_column(v: &mut serde_json::Value, p: u64) -> serde_json::Value {
    let entries = v["entries"].as_array_mut().expect("entries array");
    entries.retain(|e| e["p"].as_u64() != Some(p));
    v.clone()
}

#[test]
fn missing_input_is_exit_4() {
    let o = run(&["decompose", "--input", "/nonexistent/b.json"]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn purity_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("purity.csv");
    let o = run(&[
        "sweep", "purity", "-g", "2", "-k", "1", "--d-min", "7", "--d-max", "27", "--step", "10",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = fs::read_to_string(out).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 1 + 3 * 3);
    assert_eq!(lines[0], "g,k,d,r,quantity,value_num,value_den");
    assert_eq!(lines[1], "2,1,7,5,lower_bound,5,13");
    assert_eq!(lines[3], "2,1,7,5,r_gap,40,13");
}

#[test]
fn distribution_sweep_csv() {
    let o = run(&["sweep", "distribution", "-g", "1", "-k", "1", "--a", "0,1", "--d", "10001"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = stdout(&o);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "g,k,d,r,a,p,value,limit");
    assert!(lines[1].starts_with("1,1,10001,10000,0.0,5000,"));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "--suite", "lemma33", "--g-max", "2", "--k-max", "1", "--d-max", "20"]);
    assert_eq!(ok.status.code(), Some(0));
    let bad = run(&[
        "verify", "--suite", "lemma33", "--g-max", "2", "--k-max", "1", "--d-max", "20", "--as-printed",
    ]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("FAIL"));
    for suite in ["lemma41", "multiplicity", "herzog-kuhl"] {
        let o = run(&["verify", "--suite", suite, "--g-max", "2", "--k-max", "1", "--d-max", "16"]);
        assert_eq!(o.status.code(), Some(0), "{suite}");
    }
}

#[test]
fn output_is_independent_of_thread_count() {
    let args = ["sweep", "purity", "-g", "2", "-k", "2", "--d-min", "9", "--d-max", "200"];
    let one = bin().env("BETTI_CONE_THREADS", "1").args(args).output().unwrap();
    let many = bin().env("BETTI_CONE_THREADS", "4").args(args).output().unwrap();
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn bad_thread_count_is_exit_2() {
    let o = bin().env("BETTI_CONE_THREADS", "many").args(["pure", "--degseq", "0,1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
