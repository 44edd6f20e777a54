use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn linskol(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linskol")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn corpus(name: &str) -> String {
    format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn skolemise_prints_one_line_per_formula() {
    let o = linskol(&["skolemise", &corpus("ex1_focus_order.lin")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "linear: v A(x)_(x,aL) -o B(x)_(x,aR)");
    assert_eq!(lines[1], "linear: A(u)_(x1,u)");
    assert_eq!(lines[2], "goal: B(x2)_(x2)");
    assert_eq!(lines[4], "sigma: u(x1)/u");
}

#[test]
fn skolemise_empty_contexts_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "a.lin", "|- ^a+\n");
    let o = linskol(&["skolemise", f.to_str().unwrap()]);
    assert!(stdout(&o).contains("goal: ^a_()"), "{}", stdout(&o));
    let o = linskol(&["skolemise", f.to_str().unwrap(), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema"], "linskol/1");
    assert_eq!(v["text"], "|- ^a_()");
}

#[test]
fn shadowed_binder_is_renamed_with_a_warning() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.lin", "%pos P\nex x. (P(x) * ex x. P(x)) |- ^ex y. P(y) * ex z. P(z)\n");
    let o = linskol(&["skolemise", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).contains("shadows"), "{}", stderr(&o));
    assert!(stdout(&o).contains("P(x)_(x) * P(x1)_(x,x1)"), "{}", stdout(&o));
}

#[test]
fn compare_exit_codes_follow_the_verdicts() {
    let o = linskol(&["compare", &corpus("ex1_focus_order.lin")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("agreement: true"));
    assert!(stdout(&o).contains("sigma: u(x)/u, u/x1, x1/x2"));
    for name in ["ex2_tensor_cycle.lin", "ex3_bang_cycle.lin"] {
        let o = linskol(&["compare", &corpus(name)]);
        assert_eq!(o.status.code(), Some(1), "{name}");
        assert!(stdout(&o).contains("sljf: unprovable") && stdout(&o).contains("ljf: unprovable"));
    }
}

#[test]
fn exhausted_budget_exits_with_two() {
    let o = linskol(&["prove", &corpus("ex1_focus_order.lin"), "--depth", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("verdict: budget_exhausted"));
}

#[test]
fn input_errors_exit_with_three_and_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "bad.lin", "A |- \n");
    let o = linskol(&["prove", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("2:1:"), "{}", stderr(&o));
    let o = linskol(&["prove", "/nonexistent/file.lin"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn prove_reports_round_trip_through_check() {
    let dir = tempfile::tempdir().unwrap();
    for engine in ["sljf", "ljf"] {
        let o = linskol(&["prove", &corpus("ex1_focus_order.lin"), "--engine", engine, "--reconstruct", "--json"]);
        assert_eq!(o.status.code(), Some(0));
        let f = write(dir.path(), &format!("{engine}.json"), &stdout(&o));
        let c = linskol(&["check", f.to_str().unwrap()]);
        assert_eq!(c.status.code(), Some(0), "{}", stdout(&c));
        assert_eq!(stdout(&c).trim(), "valid");
    }
    let o = linskol(&["compare", &corpus("ex2_tensor_cycle.lin"), "--format", "json"]);
    let f = write(dir.path(), "cmp.json", &stdout(&o));
    assert_eq!(linskol(&["check", f.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn corrupted_proof_is_rejected_with_a_node_path() {
    let dir = tempfile::tempdir().unwrap();
    let o = linskol(&["prove", &corpus("ex1_focus_order.lin"), "--json"]);
    let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v["sljf_proof"]["proof"]["premises"][0]["premises"][0]["rule"] = serde_json::json!("blur_l");
    let f = write(dir.path(), "bad.json", &v.to_string());
    let c = linskol(&["check", f.to_str().unwrap()]);
    assert_eq!(c.status.code(), Some(1));
    assert!(stdout(&c).contains("at node 0.0"), "{}", stdout(&c));
    let f = write(dir.path(), "junk.json", "{ not json");
    assert_eq!(linskol(&["check", f.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn prove_text_output_with_reconstruction_trace_and_stats() {
    let o = linskol(&["prove", &corpus("ex1_focus_order.lin"), "--reconstruct", "--stats"]);
    let text = stdout(&o);
    assert!(text.contains("reconstructed:"));
    assert!(text.contains("schedule: x1:=t0, new u, x2:=u, x:=u, -oL"), "{text}");
    assert!(text.contains("term_backtracks: 0"));
    let o = linskol(&["prove", &corpus("ex2_tensor_cycle.lin"), "--trace"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(stdout(&o).matches("second condition of admissibility is violated").count(), 1);
    let o = linskol(&["prove", &corpus("ex3_bang_cycle.lin"), "--trace"]);
    assert!(stdout(&o).contains("first condition of admissibility is violated for the variable b"));
}

#[test]
fn bench_writes_csv_for_a_corpus_and_random_sequents() {
    let o = linskol(&["bench", "--dir", &corpus("")]);
    assert_eq!(o.status.code(), Some(0));
    let mut r = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[0][2], "proved");
    assert!(rows.iter().all(|row| &row[4] == "true" && &row[9] == "0"));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.csv");
    let o = linskol(&["bench", "--random", "60", "--seed", "9", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let mut r = csv::Reader::from_path(&out).unwrap();
    assert_eq!(r.records().count(), 60);
    assert!(stderr(&o).contains("60 sequents, 0 disagreements"));
}
