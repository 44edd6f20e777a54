use linskol::report::{check_report, compare, run, Engine, ReportError, RunOptions, RunReport, SCHEMA};
use linskol::search::Verdict;
use linskol::syntax::{parse_sequent, ParseOptions, Sequent};

fn corpus(name: &str) -> Sequent {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_sequent(&std::fs::read_to_string(path).unwrap(), ParseOptions::default()).unwrap()
}

fn round_trip(r: &RunReport) -> RunReport {
    serde_json::from_str(&serde_json::to_string(r).unwrap()).unwrap()
}

#[test]
fn proved_reports_round_trip_through_the_checker() {
    let seq = corpus("ex1_focus_order.lin");
    let options = RunOptions { reconstruct: true, trace: true, ..RunOptions::default() };
    for engine in [Engine::Sljf, Engine::Ljf] {
        let r = run(engine, &seq, &options);
        assert_eq!(r.verdict, Verdict::Proved);
        assert_eq!(r.schema, SCHEMA);
        let back = round_trip(&r);
        check_report(&back).unwrap();
    }
    let r = run(Engine::Sljf, &seq, &options);
    assert!(r.reconstructed.is_some() && r.reconstruction_error.is_none());
    assert_eq!(r.sigma.as_deref(), Some("u(x)/u, u/x1, x1/x2"));
}

#[test]
fn corrupted_proof_is_reported_with_its_path() {
    let seq = corpus("ex1_focus_order.lin");
    let r = run(Engine::Ljf, &seq, &RunOptions::default());
    let mut json: serde_json::Value = serde_json::to_value(&r).unwrap();
    json["ljf_proof"]["premises"][0]["premises"] = serde_json::json!([]);
    let broken: RunReport = serde_json::from_value(json).unwrap();
    match check_report(&broken) {
        Err(ReportError::Invalid("ljf", e)) => assert!(!e.path.is_empty(), "{e}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn missing_proof_and_foreign_schema_are_rejected() {
    let seq = corpus("ex1_focus_order.lin");
    let mut r = run(Engine::Sljf, &seq, &RunOptions::default());
    r.sljf_proof = None;
    assert_eq!(check_report(&r), Err(ReportError::MissingProof("sljf")));
    r.schema = "other/0".into();
    assert!(matches!(check_report(&r), Err(ReportError::Schema(_))));
}

#[test]
fn comparison_of_the_examples() {
    let c = compare(&corpus("ex1_focus_order.lin"), &RunOptions::default());
    assert!(c.agreement);
    assert_eq!((c.sljf.verdict, c.ljf.verdict), (Verdict::Proved, Verdict::Proved));
    for name in ["ex2_tensor_cycle.lin", "ex3_bang_cycle.lin"] {
        let c = compare(&corpus(name), &RunOptions::default());
        assert!(c.agreement);
        assert_eq!((c.sljf.verdict, c.ljf.verdict), (Verdict::Unprovable, Verdict::Unprovable), "{name}");
    }
}
