use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(name)
}

fn latfac(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latfac"))
        .args(args)
        .env_remove("ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latfac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

const S1: &str = "ext={4}:ext={1,2,3,4,5,6,7,8}";
const S2: &str = "ext={3}:int={e}";

#[test]
fn show_running_context() {
    let o = latfac(&["show", fixture("running.cxt").to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("15 concepts, 8 join-irr, 5 meet-irr\n"), "{out}");
    assert!(out.contains("8 objects, 5 attributes"));
}

#[test]
fn show_json_lattice_input() {
    let o = latfac(&["show", fixture("cube.json").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("8 concepts, 3 join-irr, 3 meet-irr\n"));
}

#[test]
fn show_empty_context() {
    let p = temp_file("empty.cxt", "B\n\n0\n0\n\n");
    let o = latfac(&["show", p.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("1 concept, 0 join-irr, 0 meet-irr\n"));
}

#[test]
fn tolerance_lists_added_incidences() {
    let o = latfac(&["factor", fixture("running.cxt").to_str().unwrap(), "--method", "tolerance", "--interval", S2]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("added incidences: 11"), "{out}");
    assert!(out.contains("factor: 2 blocks"));
}

#[test]
fn interval_factor_of_s1() {
    let o = latfac(&["factor", fixture("running.cxt").to_str().unwrap(), "--method", "interval", "--interval", S1]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("kind: lattice"));
    assert!(out.contains("factor: 8 classes"));
    assert!(out.contains("interval: pure"));
}

#[test]
fn interval_factor_json_is_valid() {
    let o = latfac(&[
        "factor",
        fixture("running.cxt").to_str().unwrap(),
        "--method",
        "interval",
        "--interval",
        S1,
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).expect("json");
    assert_eq!(v["classes"].as_array().unwrap().len(), 8);
    assert_eq!(v["interval"], "pure");
}

#[test]
fn congruence_of_s1_is_trivial() {
    let o = latfac(&["factor", fixture("running.cxt").to_str().unwrap(), "--method", "congruence", "--interval", S1]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("trivial congruence"));
    assert!(stdout(&o).contains("factor: 1 element\n"));
}

#[test]
fn nested_interval_fails_require_lattice() {
    let o = latfac(&[
        "factor",
        fixture("cube.json").to_str().unwrap(),
        "--method",
        "interval",
        "--interval",
        "ext={2}:ext={5}",
        "--require-lattice",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("kind: partial-order"));
}

#[test]
fn method_flags_are_checked_first() {
    let o = latfac(&[
        "factor",
        "does-not-exist.cxt",
        "--method",
        "tolerance",
        "--interval",
        S2,
        "--reduce",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("--reduce"));
    let o = latfac(&["factor", "does-not-exist.cxt", "--method", "congruence", "--interval", S1, "--interval", S2]);
    assert!(stderr(&o).contains("exactly one"));
}

#[test]
fn malformed_header_is_reported() {
    let p = temp_file("bad.cxt", "Q\n\n1\n1\n\na\nx\nX\n");
    let o = latfac(&["show", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected 'B'"), "{}", stderr(&o));
}

#[test]
fn enrich_writes_context_and_delta() {
    let out = temp_file("enriched.cxt", "");
    let o = latfac(&[
        "enrich",
        fixture("running.cxt").to_str().unwrap(),
        "--interval",
        S2,
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.starts_with("B\n"));
    assert!(stdout(&o).lines().all(|l| l.starts_with("added ")));
    let again = latfac(&["show", out.to_str().unwrap()]);
    assert!(again.status.success());
}

#[test]
fn verify_passes_on_small_context() {
    let p = temp_file("small.cxt", "B\n\n3\n3\n\na\nb\nc\nx\ny\nz\nX..\n.X.\nXXX\n");
    let o = latfac(&["verify", p.to_str().unwrap(), "--interval", "ext={a}:ext={a,c}"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(!out.contains("MISMATCH"));
    assert!(out.contains("block relation: ok"));
}

#[test]
fn verify_passes_on_mutated_running_context() {
    let text = std::fs::read_to_string(fixture("running.cxt")).unwrap();
    // flip the first cell of the last object row
    let mut lines: Vec<String> = text.lines().map(String::from).collect();
    let last = lines.iter().rposition(|l| !l.is_empty()).unwrap();
    let flipped: String = lines[last]
        .chars()
        .enumerate()
        .map(|(i, c)| match (i, c) {
            (0, 'X') => '.',
            (0, _) => 'X',
            (_, c) => c,
        })
        .collect();
    lines[last] = flipped;
    let p = temp_file("mutated.cxt", &(lines.join("\n") + "\n"));
    let o = latfac(&["verify", p.to_str().unwrap(), "--interval", "ext={3}:ext={1,2,3,4,5,6,7,8}"]);
    assert!(o.status.success(), "{}\n{}", stdout(&o), stderr(&o));
    assert!(!stdout(&o).contains("MISMATCH"));
}

#[test]
fn verify_refuses_large_context() {
    let mut text = String::from("B\n\n20\n20\n\n");
    for i in 0..20 {
        text += &format!("g{i}\n");
    }
    for j in 0..20 {
        text += &format!("m{j}\n");
    }
    for i in 0..20 {
        let row: String = (0..20).map(|j| if (i + j) % 3 == 0 { 'X' } else { '.' }).collect();
        text += &row;
        text.push('\n');
    }
    let p = temp_file("big.cxt", &text);
    let o = latfac(&["verify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("oracle budget"));
}

#[test]
fn budget_comes_from_environment() {
    let p = temp_file("budget.cxt", "B\n\n3\n3\n\na\nb\nc\nx\ny\nz\nX..\n.X.\nXXX\n");
    let o = Command::new(env!("CARGO_BIN_EXE_latfac"))
        .args(["verify", p.to_str().unwrap()])
        .env("ORACLE_BUDGET", "objects=2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_latfac"))
        .args(["verify", p.to_str().unwrap()])
        .env("ORACLE_BUDGET", "objects=0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    let args = ["show", "--format", "dot"];
    let f = fixture("running.cxt");
    let a = latfac(&[args[0], f.to_str().unwrap(), args[1], args[2]]);
    let b = latfac(&[args[0], f.to_str().unwrap(), args[1], args[2]]);
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("digraph lattice {"));
}
