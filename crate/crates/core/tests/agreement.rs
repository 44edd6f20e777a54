use linskol::gen::{random_batch, GenConfig};
use linskol::ljf::{check_ljf_for, prove_ljf, LjfOptions};
use linskol::reconstruct::reconstruct;
use linskol::search::Verdict;
use linskol::skolem::skolemise_sequent;
use linskol::sljf::{check_sljf_for, prove, SljfOptions};
use linskol::syntax::{Namer, Sequent};

/// Run both engines on every sequent; panic on a proved/unprovable split.
fn agree_on(batch: &[Sequent]) -> (usize, usize, usize) {
    let (mut proved, mut unprovable, mut exhausted) = (0, 0, 0);
    for s in batch {
        let l = prove_ljf(s, &LjfOptions::default());
        let sk = skolemise_sequent(s);
        let r = prove(&sk.sequent, &sk.sigma, &SljfOptions::default());
        if let Some(p) = &l.proof {
            check_ljf_for(p, s).unwrap();
        }
        if let Some(d) = &r.proof {
            check_sljf_for(d, &sk.sequent, &sk.sigma).unwrap();
            reconstruct(d, s).unwrap_or_else(|e| panic!("{e}: {}", Namer::default().sequent(s)));
        }
        assert_eq!(r.stats.term_backtracks, 0);
        match (l.verdict, r.verdict) {
            (Verdict::BudgetExhausted, _) | (_, Verdict::BudgetExhausted) => exhausted += 1,
            (a, b) if a == b => {
                if a == Verdict::Proved {
                    proved += 1
                } else {
                    unprovable += 1
                }
            }
            (a, b) => panic!("ljf {a:?} vs sljf {b:?}: {}", Namer::default().sequent(s)),
        }
    }
    (proved, unprovable, exhausted)
}

#[test]
fn engines_agree_on_random_sequents() {
    let (p, u, e) = agree_on(&random_batch(1, 600, &GenConfig::default()));
    assert!(p > 150 && u > 150 && e == 0, "{p} {u} {e}");
}

#[test]
fn engines_agree_with_more_quantifiers_and_bangs() {
    let config = GenConfig { max_connectives: 8, max_quantifiers: 5, max_bangs: 2, max_delta: 3 };
    let (p, u, e) = agree_on(&random_batch(5, 400, &config));
    assert!(p > 100 && u > 100 && e < 20, "{p} {u} {e}");
}

#[test]
fn nested_bang_regressions() {
    use linskol::syntax::{parse_sequent, ParseOptions};
    let cases = [
        "%pos P Q\nQ, !(fa x. Q -o ^(Q * v B)) |- ^(Q * v B) ",
        "%pos P Q\n(ex x. !B) * !(Q -o B) |- ^((ex x. !B) * !(Q -o B))",
    ];
    for src in cases {
        let s = parse_sequent(src, ParseOptions::default()).unwrap();
        let (p, _, _) = agree_on(&[s]);
        assert_eq!(p, 1, "{src}");
    }
}
