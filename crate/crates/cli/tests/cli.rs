use std::io::Write;
use std::process::{Command, Output, Stdio};

use slaa::hoa::parse_hoa;
use slaa::ltl::LassoWord;
use slaa::oracle::membership;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ltl2slaa")).args(args).env("NO_COLOR", "1").output().unwrap()
}

fn run_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_ltl2slaa"))
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

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn merged_eventually_stats() {
    let o = run(&["translate", "-f", "F(G a | G F b)", "--mode", "fg", "--format", "stats"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "states=1 marks=5 det=false nonalt=true\n");
}

#[test]
fn basic_gfa_stats() {
    let o = run(&["translate", "-f", "G F a", "--mode", "basic", "--format", "stats"]);
    assert!(stdout(&o).starts_with("states=2 marks=1 "));
}

#[test]
fn true_gives_universal_hoa() {
    let o = run(&["translate", "-f", "1", "--mode", "fg"]);
    assert_eq!(o.status.code(), Some(0));
    let a = parse_hoa(&stdout(&o)).unwrap();
    for w in [";{}", "{},{};{}"] {
        assert!(membership(&a, &LassoWord::parse(w, &[]).unwrap()).unwrap());
    }
}

#[test]
fn formats() {
    let dot = stdout(&run(&["translate", "-f", "a U b", "--format", "dot"]));
    assert!(dot.starts_with("digraph"));
    let ltl = stdout(&run(&["translate", "-f", "G F a", "--format", "ltl"]));
    assert!(ltl.contains("G F a"));
    let raw =
        stdout(&run(&["translate", "-f", "F(G a | G F b)", "--mode", "basic", "--no-simplify", "--format", "stats"]));
    assert!(raw.starts_with("states=4 marks=1 "));
    let reuse =
        stdout(&run(&["translate", "-f", "F(G a | G F b)", "--mode", "f", "--reuse-marks", "--format", "stats"]));
    assert!(reuse.starts_with("states=2 "));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["translate", "-f", "a U"]).status.code(), Some(2));
    assert!(stderr(&run(&["translate", "-f", "a U"])).contains("error"));
    assert_eq!(run(&["translate", "-f", "a", "--reuse-marks"]).status.code(), Some(1));
    assert_eq!(run(&["translate", "-f", "a", "--file", "x"]).status.code(), Some(1));
    assert_eq!(run(&["translate", "-f", "a", "--mode", "ltl3ba"]).status.code(), Some(1));
    assert_eq!(run(&["translate", "--file", "/nonexistent/formulae"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn file_from_stdin_and_out() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("stats.txt");
    let o = run_with_stdin(
        &["translate", "--file", "-", "--format", "stats", "--out", out.to_str().unwrap()],
        "# golden\nG F a\n\nF(G a | G F b)\n",
    );
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.lines().nth(1).unwrap().starts_with("states=1 marks=5"));

    let bad = run_with_stdin(&["translate", "--file", "-"], "a\nb U\n");
    assert_eq!(bad.status.code(), Some(2));
    assert!(stderr(&bad).contains("line 2"));
}

#[test]
fn check_passes() {
    let o = run(&["check", "--random", "100", "--seed", "7", "--preset", "randfg", "--words", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "PASS 100/100\n");
    let o = run(&["check", "--random", "30", "--seed", "7", "--preset", "rand4", "--words", "10", "--roundtrip"]);
    assert_eq!(stdout(&o), "PASS 30/30\n");
    let o = run(&["check", "-f", "G F a", "--roundtrip"]);
    assert_eq!(stdout(&o), "PASS 1/1\n");
}

#[test]
fn bench_csv() {
    let empty = run(&["bench", "--random", "0"]);
    assert_eq!(empty.status.code(), Some(0));
    let text = stdout(&empty);
    assert_eq!(text.lines().count(), 2);
    assert!(text.starts_with("# ltl2slaa bench v1\nformula,basic_states,"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bench.csv");
    let args = ["bench", "--random", "50", "--seed", "3", "--preset", "randfg", "--mergeable-only", "--out"];
    let o = run(&[&args[..], &[path.to_str().unwrap()]].concat());
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&path).unwrap();
    let rows = csv_rows(csv.split_once('\n').unwrap().1.as_bytes());
    assert_eq!(rows.len(), 50);
    let col = |i: usize| rows.iter().map(|r| r[i].parse::<usize>().unwrap()).sum::<usize>();
    let totals_line = stdout(&o).lines().nth(2).unwrap().to_string();
    let totals: Vec<usize> = totals_line.split_whitespace().skip(1).map(|x| x.parse().unwrap()).collect();
    assert_eq!(totals, vec![50, col(1), col(2), col(5), col(6), col(9), col(10)]);

    let again = dir.path().join("again.csv");
    run(&[&args[..], &[again.to_str().unwrap()]].concat());
    assert_eq!(std::fs::read_to_string(again).unwrap(), csv);
}

fn csv_rows(bytes: &[u8]) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(bytes);
    r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect()
}
