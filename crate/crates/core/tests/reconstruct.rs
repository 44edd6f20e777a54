use linskol::gen::{random_batch, GenConfig};
use linskol::ljf::{check_ljf, LProof, LRule};
use linskol::reconstruct::{check_schedule, reconstruct, Event, ReconstructError, Reconstruction};
use linskol::skolem::skolemise_sequent;
use linskol::sljf::{prove, SProof, SProofDoc, SljfOptions};
use linskol::syntax::{alpha_eq_sequent, parse_sequent, Namer, ParseOptions, Sequent, Term};

fn corpus(name: &str) -> Sequent {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_sequent(&std::fs::read_to_string(path).unwrap(), ParseOptions::default()).unwrap()
}

fn skolemised_proof(seq: &Sequent) -> Option<SProofDoc> {
    let sk = skolemise_sequent(seq);
    prove(&sk.sequent, &sk.sigma, &SljfOptions::default()).proof
}

fn rebuilt(seq: &Sequent) -> (SProofDoc, Reconstruction) {
    let doc = skolemised_proof(seq).expect("provable");
    let r = reconstruct(&doc, seq).unwrap();
    check_ljf(&r.proof).unwrap();
    assert!(alpha_eq_sequent(&r.proof.conclusion, seq));
    (doc, r)
}

fn lines(p: &LProof, namer: &mut Namer, depth: usize, out: &mut Vec<String>) {
    let witness = p.witness.as_ref().map(|t| format!(" <{}>", namer.term(t))).unwrap_or_default();
    out.push(format!("{}{}{witness}  {}", "  ".repeat(depth), p.rule, namer.sequent(&p.conclusion)));
    p.premises.iter().for_each(|q| lines(q, namer, depth + 1, out));
}

fn skeleton(p: &SProof, out: &mut Vec<&'static str>) {
    out.push(p.rule.name());
    p.premises.iter().for_each(|q| skeleton(q, out));
}

// The complete proof of the focus-order example: focus on the second
// assumption, open its existential, and only then use the implication.
const FIGURE: &str = "\
focusL  v (fa x. v A(x) -o B(x)), v (fa x1. ^(ex u. v A(u))) |- ^(ex x2. v B(x2))
  faL <t0>  v (fa x. v A(x) -o B(x)), [fa x1. ^(ex u. v A(u))] |- ^(ex x2. v B(x2))
    blurL  v (fa x. v A(x) -o B(x)), [^(ex u. v A(u))] |- ^(ex x2. v B(x2))
      exL  v (fa x. v A(x) -o B(x)), ex u. v A(u) |- ^(ex x2. v B(x2))
        focusR  v (fa x. v A(x) -o B(x)), v A(u) |- ^(ex x2. v B(x2))
          exR <u>  v (fa x. v A(x) -o B(x)), v A(u) |- [ex x2. v B(x2)]
            blurR  v (fa x. v A(x) -o B(x)), v A(u) |- [v B(u)]
              focusL  v (fa x. v A(x) -o B(x)), v A(u) |- B(u)
                faL <u>  v A(u), [fa x. v A(x) -o B(x)] |- B(u)
                  -oL  v A(u), [v A(u) -o B(u)] |- B(u)
                    blurR  v A(u) |- [v A(u)]
                      focusL  v A(u) |- A(u)
                        ax-  [A(u)] |- A(u)
                    ax-  [B(u)] |- B(u)";

#[test]
fn focus_order_example_rebuilds_the_complete_proof() {
    let (_, r) = rebuilt(&corpus("ex1_focus_order.lin"));
    let mut out = Vec::new();
    lines(&r.proof, &mut Namer::default(), 0, &mut out);
    assert_eq!(out.join("\n"), FIGURE);
}

#[test]
fn eigen_variable_is_introduced_before_its_use() {
    let (doc, r) = rebuilt(&corpus("ex1_focus_order.lin"));
    let intro = r.schedule.iter().position(|e| matches!(e, Event::IntroduceEigen { .. })).unwrap();
    let Event::IntroduceEigen { var: u } = &r.schedule[intro] else { unreachable!() };
    let uses: Vec<usize> = r
        .schedule
        .iter()
        .enumerate()
        .filter(|(_, e)| matches!(e, Event::Instantiate { term: Term::Var(v), .. } if v == u))
        .map(|(i, _)| i)
        .collect();
    assert_eq!(uses.len(), 2);
    assert!(uses.iter().all(|&i| i > intro));
    assert_eq!(r.schedule.last(), Some(&Event::Structural { rule: LRule::LolliL }));

    let mut swapped = r.schedule.clone();
    let first = uses[0];
    swapped.swap(intro, first);
    assert!(matches!(check_schedule(&swapped, &doc.sigma), Err(ReconstructError::Order { .. })));
}

#[test]
fn quantifier_free_proof_keeps_its_skeleton() {
    let seq = parse_sequent("%pos Q\n!(Q -o ^Q), Q |- ^(Q * !(Q -o ^Q))", ParseOptions::default()).unwrap();
    let (doc, r) = rebuilt(&seq);
    assert!(doc.sigma.iter().all(|(v, _)| v.is_special()));
    let mut want = Vec::new();
    skeleton(&doc.proof, &mut want);
    let got: Vec<&str> = r.proof.rules().iter().map(|rule| rule.name()).collect();
    assert_eq!(got, want);
    assert!(r.schedule.iter().all(|e| matches!(e, Event::Structural { .. })));
}

#[test]
fn random_provable_sequents_reconstruct() {
    let mut proved = 0;
    for seq in random_batch(11, 400, &GenConfig::default()) {
        let Some(doc) = skolemised_proof(&seq) else { continue };
        let r = reconstruct(&doc, &seq).unwrap_or_else(|e| panic!("{e}: {}", Namer::default().sequent(&seq)));
        check_ljf(&r.proof).unwrap();
        assert!(alpha_eq_sequent(&r.proof.conclusion, &seq));
        proved += 1;
    }
    assert!(proved > 100, "{proved}");
}

#[test]
fn proof_of_another_sequent_is_not_reconstructed() {
    let doc = skolemised_proof(&corpus("ex1_focus_order.lin")).unwrap();
    let other = parse_sequent("v A |- A", ParseOptions::default()).unwrap();
    assert!(matches!(reconstruct(&doc, &other), Err(ReconstructError::Precondition(_))));
}
