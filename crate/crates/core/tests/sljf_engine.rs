use linskol::search::Verdict;
use linskol::skolem::skolemise_sequent;
use linskol::sljf::{check_sljf_for, prove, SljfOptions, SljfOutcome};
use linskol::syntax::{parse_sequent, Namer, ParseOptions};
use linskol::Violation;

fn corpus(name: &str) -> String {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

fn run(name: &str) -> (SljfOutcome, String) {
    let seq = parse_sequent(&corpus(name), ParseOptions::default()).unwrap();
    let sk = skolemise_sequent(&seq);
    let opts = SljfOptions { trace: true, ..SljfOptions::default() };
    let out = prove(&sk.sequent, &sk.sigma, &opts);
    if let Some(doc) = &out.proof {
        check_sljf_for(doc, &sk.sequent, &sk.sigma).unwrap();
    }
    let mut namer = Namer::default();
    let text = format!("{} ; {}", namer.ssequent(&sk.sequent), namer.subst(&sk.sigma));
    (out, text)
}

#[test]
fn focus_order_example_is_proved() {
    let (out, text) = run("ex1_focus_order.lin");
    assert_eq!(out.verdict, Verdict::Proved, "{text}\n{:#?}", out.trace);
    let doc = out.proof.unwrap();
    assert_eq!(Namer::default().subst(&doc.sigma), "u(x)/u, u/x1, x1/x2");
}

#[test]
fn tensor_example_fails_second_condition() {
    let (out, text) = run("ex2_tensor_cycle.lin");
    assert_eq!(out.verdict, Verdict::Unprovable, "{text}");
    let rejected = out.trace.rejections();
    assert_eq!(rejected.len(), 1, "{text}\n{:#?}", out.trace);
    assert!(matches!(rejected[0], Violation::BranchConflict { .. }));
}

#[test]
fn bang_example_fails_first_condition() {
    let (out, text) = run("ex3_bang_cycle.lin");
    assert_eq!(out.verdict, Verdict::Unprovable, "{text}");
    let rejected = out.trace.rejections();
    assert_eq!(rejected.len(), 1, "{text}\n{:#?}", out.trace);
    let Violation::Cycle { witness, .. } = rejected[0] else { panic!("{:?}", rejected[0]) };
    assert_eq!(witness.name, "b");
}
