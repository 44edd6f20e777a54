use linskol::ljf::{check_ljf, check_ljf_for, prove_ljf, LProof, LRule, LjfOptions};
use linskol::search::{FocusOrder, Verdict};
use linskol::syntax::{parse_sequent, Focus, Formula, ParseOptions, Polarity, Sequent, Term, Var, VarKind};

fn corpus(name: &str) -> Sequent {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_sequent(&std::fs::read_to_string(path).unwrap(), ParseOptions::default()).unwrap()
}

#[test]
fn focus_order_example_is_proved_after_term_backtracking() {
    let seq = corpus("ex1_focus_order.lin");
    let out = prove_ljf(&seq, &LjfOptions::default());
    assert_eq!(out.verdict, Verdict::Proved);
    assert!(out.stats.term_backtracks >= 1, "{:?}", out.stats);
    let proof = out.proof.unwrap();
    check_ljf_for(&proof, &seq).unwrap();
    assert_eq!(proof.count(LRule::ExistsL), 1);
    assert_eq!(proof.count(LRule::LolliL), 1);
}

#[test]
fn right_first_order_also_proves_it() {
    let seq = corpus("ex1_focus_order.lin");
    let opts = LjfOptions { order: FocusOrder::RightFirst, ..LjfOptions::default() };
    let out = prove_ljf(&seq, &opts);
    assert_eq!(out.verdict, Verdict::Proved);
    check_ljf_for(&out.proof.unwrap(), &seq).unwrap();
}

#[test]
fn cyclic_examples_are_unprovable() {
    for name in ["ex2_tensor_cycle.lin", "ex3_bang_cycle.lin"] {
        let out = prove_ljf(&corpus(name), &LjfOptions::default());
        assert_eq!(out.verdict, Verdict::Unprovable, "{name}");
    }
}

#[test]
fn stale_eigen_variable_is_rejected() {
    let x = Var::new("x", VarKind::Existential, 1);
    let u = Var::new("u", VarKind::Eigen, 2);
    let a = |t: &Var| Formula::atom("A", vec![Term::var(t)], Polarity::Negative);
    let leaf = LProof {
        rule: LRule::AxNeg,
        conclusion: Sequent { gamma: vec![], delta: vec![], focus: Focus::Left(a(&u)), goal: a(&u) },
        premises: vec![],
        witness: None,
        eigen: None,
    };
    let focus = LProof {
        rule: LRule::FocusL,
        conclusion: Sequent::new(vec![], vec![Formula::down(a(&u))], a(&u)),
        premises: vec![leaf],
        witness: None,
        eigen: None,
    };
    let root = LProof {
        rule: LRule::ForallR,
        conclusion: Sequent::new(vec![], vec![Formula::down(a(&u))], Formula::forall(x.clone(), a(&x))),
        premises: vec![focus],
        witness: None,
        eigen: Some(u),
    };
    let err = check_ljf(&root).unwrap_err();
    assert!(err.path.is_empty() && err.message.contains("not fresh"), "{err}");
}
