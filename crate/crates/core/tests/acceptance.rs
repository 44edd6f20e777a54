//! Acceptance run: one line per criterion, non-zero exit if any fails.

mod common;

use linskol::gen::{random_batch, GenConfig};
use linskol::ljf::{check_ljf, prove_ljf, LjfOptions};
use linskol::report::{compare, Comparison, RunOptions};
use linskol::search::{Budget, FocusOrder, Verdict};
use linskol::skolem::{neg_adjust, skolemise_formula};
use linskol::syntax::{alpha_eq_sequent, parse_formula, parse_sequent, Namer, ParseOptions, Sequent, Term, Var};
use linskol::{Substitution, Violation};
use proptest::test_runner::{Config, TestRunner};
use std::time::{Duration, Instant};

const EXAMPLE_TIME: Duration = Duration::from_secs(1);
const RANDOM_COUNT: usize = 1000;
const RANDOM_SEED: u64 = 2024;
const RANDOM_TIME: Duration = Duration::from_secs(300);
const MAX_EXHAUSTED: f64 = 0.10;
const PROPERTY_CASES: u32 = 1000;

type Outcome = Result<String, String>;

fn corpus(name: &str) -> Sequent {
    let path = format!("{}/../../corpus/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_sequent(&std::fs::read_to_string(path).unwrap(), ParseOptions::default()).unwrap()
}

fn timed_compare(seq: &Sequent, options: &RunOptions) -> (Comparison, Duration) {
    let start = Instant::now();
    let c = compare(seq, options);
    (c, start.elapsed())
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    ok.then_some(()).ok_or_else(|| msg.into())
}

fn verdicts(c: &Comparison, want: Verdict) -> Result<(), String> {
    ensure(
        c.sljf.verdict == want && c.ljf.verdict == want,
        format!("sljf {} / ljf {}", c.sljf.verdict.as_str(), c.ljf.verdict.as_str()),
    )
}

/// `{u/x₁, x₁/x₃, u(x₂)/u}` up to renaming, ignoring special variables.
fn focus_order_sigma(sigma: &Substitution) -> bool {
    let entries: Vec<(&Var, &Term)> = sigma.iter().filter(|(v, _)| !v.is_special()).collect();
    if entries.len() != 3 {
        return false;
    }
    let Some((u, x2)) = entries.iter().find_map(|(v, t)| match t {
        Term::Skolem(head, args) if head == *v => match args.as_slice() {
            [Term::Var(x2)] if x2.is_existential() => Some((*v, x2)),
            _ => None,
        },
        _ => None,
    }) else {
        return false;
    };
    let Some(x1) = entries.iter().find_map(|(v, t)| (v.is_existential() && **t == Term::var(u)).then_some(*v)) else {
        return false;
    };
    let Some(x3) = entries.iter().find_map(|(v, t)| (v.is_existential() && **t == Term::var(x1)).then_some(*v)) else {
        return false;
    };
    x1 != x2 && x3 != x2 && x1 != x3
}

fn example_one(proved: &mut Vec<(Sequent, Comparison)>) -> Outcome {
    let seq = corpus("ex1_focus_order.lin");
    let (c, t) = timed_compare(&seq, &RunOptions { reconstruct: true, ..RunOptions::default() });
    verdicts(&c, Verdict::Proved)?;
    let doc = c.sljf.sljf_proof.as_ref().ok_or("no skolemised proof")?;
    let sigma = c.sljf.sigma.clone().unwrap_or_default();
    ensure(focus_order_sigma(&doc.sigma), format!("sigma {sigma}"))?;
    ensure(t < EXAMPLE_TIME, format!("took {t:?}"))?;
    proved.push((seq, c));
    Ok(format!("proved/proved, sigma {sigma}, {t:.2?}"))
}

fn rejections_of(name: &str) -> Result<(Vec<Violation>, Vec<String>, Duration), String> {
    let seq = corpus(name);
    let (c, t) = timed_compare(&seq, &RunOptions { trace: true, ..RunOptions::default() });
    verdicts(&c, Verdict::Unprovable)?;
    ensure(t < EXAMPLE_TIME, format!("took {t:?}"))?;
    let trace = c.sljf.trace.ok_or("no trace")?;
    let explanations = trace
        .events
        .iter()
        .filter_map(|e| match e {
            linskol::sljf::TraceEvent::Axiom {
                outcome: linskol::sljf::AxiomOutcome::Rejected { explanation, .. }, ..
            } => Some(explanation.clone()),
            _ => None,
        })
        .collect();
    Ok((trace.rejections().into_iter().cloned().collect(), explanations, t))
}

fn example_two() -> Outcome {
    let (rejected, explanations, t) = rejections_of("ex2_tensor_cycle.lin")?;
    let second: Vec<&String> = explanations.iter().filter(|e| e.starts_with("second condition")).collect();
    ensure(
        rejected.iter().filter(|v| v.condition() == 2).count() == 1 && second.len() == 1,
        format!("{} condition-2 rejections", second.len()),
    )?;
    Ok(format!("unprovable/unprovable, \"{}\", {t:.2?}", second[0]))
}

fn example_three() -> Outcome {
    let (rejected, explanations, t) = rejections_of("ex3_bang_cycle.lin")?;
    let through_b = rejected.iter().any(|v| matches!(v, Violation::Cycle { witness, .. } if witness.name == "b"));
    let text = explanations.iter().find(|e| e.ends_with("for the variable b"));
    ensure(through_b && text.is_some(), format!("rejections {explanations:?}"))?;
    Ok(format!("unprovable/unprovable, \"{}\", {t:.2?}", text.unwrap()))
}

fn skolemisation_golden() -> Outcome {
    let auto = ParseOptions { autoshift: true };
    let cases = [
        ("v (fa x. v A(x) -o B(x))", true, "v A(x)_(x,aL) -o B(x)_(x,aR)", "·"),
        ("v (fa x. ^ex u. v A(u))", true, "A(u)_(x,u)", "u(x)/u"),
        ("^(ex x. v B(x))", false, "B(x)_(x)", "·"),
    ];
    for (src, left, want, want_sigma) in cases {
        let r = skolemise_formula(&parse_formula(src, auto).unwrap(), left);
        let mut namer = Namer::default();
        let got = namer.sformula(&neg_adjust(r.formula));
        let sigma = namer.subst(&r.sigma);
        ensure(got == want && sigma == want_sigma, format!("{src}: {got} ; {sigma}"))?;
    }
    Ok("indices (x,aL) (x,aR) (x,u) (x), entry u(x)/u".into())
}

fn no_term_backtracking() -> Outcome {
    let names = ["ex1_focus_order.lin", "ex2_tensor_cycle.lin", "ex3_bang_cycle.lin"];
    for name in names {
        let (c, _) = timed_compare(&corpus(name), &RunOptions::default());
        ensure(c.sljf.stats.term_backtracks == 0, format!("{name}: sljf term_backtracks {}", c.sljf.stats.term_backtracks))?;
    }
    let options = LjfOptions { budget: Budget::default(), order: FocusOrder::LeftFirst };
    let out = prove_ljf(&corpus("ex1_focus_order.lin"), &options);
    ensure(out.stats.term_backtracks >= 1, "ljf left-first made no term backtracks")?;
    Ok(format!("sljf 0 on {} corpus files, ljf left-first {} on the focus-order example", names.len(), out.stats.term_backtracks))
}

fn oracle_equivalence(proved: &mut Vec<(Sequent, Comparison)>) -> Outcome {
    let batch = random_batch(RANDOM_SEED, RANDOM_COUNT, &GenConfig::default());
    let options = RunOptions { reconstruct: true, ..RunOptions::default() };
    let before = proved.len();
    let start = Instant::now();
    let (mut agree, mut disagree, mut exhausted) = (0, 0, 0);
    let mut first_split = None;
    for seq in batch {
        let c = compare(&seq, &options);
        match (c.sljf.verdict, c.ljf.verdict) {
            (Verdict::BudgetExhausted, _) | (_, Verdict::BudgetExhausted) => exhausted += 1,
            (a, b) if a == b => {
                agree += 1;
                if a == Verdict::Proved {
                    proved.push((seq, c));
                }
            }
            _ => {
                disagree += 1;
                first_split.get_or_insert_with(|| c.sljf.sequent_text.clone());
            }
        }
    }
    let t = start.elapsed();
    let ratio = exhausted as f64 / RANDOM_COUNT as f64;
    let summary = format!("{agree} agree ({} proved), {disagree} disagree, {exhausted} exhausted of {RANDOM_COUNT}, {t:.2?}", proved.len() - before);
    ensure(disagree == 0, format!("{summary}; first split: {}", first_split.unwrap_or_default()))?;
    ensure(ratio < MAX_EXHAUSTED && t < RANDOM_TIME, summary.clone())?;
    Ok(summary)
}

fn reconstruction(proved: &[(Sequent, Comparison)]) -> Outcome {
    for (seq, c) in proved {
        let text = &c.sljf.sequent_text;
        if let Some(e) = &c.sljf.reconstruction_error {
            return Err(format!("{text}: {e}"));
        }
        let r = c.sljf.reconstructed.as_ref().ok_or_else(|| format!("{text}: nothing reconstructed"))?;
        check_ljf(&r.proof).map_err(|e| format!("{text}: {e}"))?;
        ensure(alpha_eq_sequent(&r.proof.conclusion, seq), format!("{text}: wrong conclusion"))?;
    }
    Ok(format!("{} of {} proved instances", proved.len(), proved.len()))
}

fn substitution_properties() -> Outcome {
    use common::{context, extra_var, substitution};
    let runner = || TestRunner::new(Config { cases: PROPERTY_CASES, failure_persistence: None, ..Config::default() });
    let fail = |name: &str, e: String| format!("{name}: {e}");
    runner().run(&substitution(), |s| common::condition_one(&s)).map_err(|e| fail("condition 1", e.to_string()))?;
    runner().run(&(substitution(), context()), |(s, phi)| common::condition_two(&s, &phi)).map_err(|e| fail("condition 2", e.to_string()))?;
    runner().run(&(substitution(), context()), |(s, phi)| common::partition(&s, &phi)).map_err(|e| fail("partition", e.to_string()))?;
    runner()
        .run(&(substitution(), context(), context(), extra_var()), |(s, d, c, v)| common::monotone(&s, &d, &c, &v))
        .map_err(|e| fail("monotonicity", e.to_string()))?;
    Ok(format!("4 properties x {PROPERTY_CASES} cases"))
}

fn main() {
    let mut proved = Vec::new();
    let mut results = vec![
        ("1 focus-order example", example_one(&mut proved)),
        ("2 tensor example", example_two()),
        ("3 bang example", example_three()),
        ("4 skolemisation golden", skolemisation_golden()),
        ("5 no term backtracking", no_term_backtracking()),
    ];
    results.push(("6 oracle equivalence", oracle_equivalence(&mut proved)));
    results.push(("7 reconstruction", reconstruction(&proved)));
    results.push(("8 substitution properties", substitution_properties()));
    let mut failed = 0;
    for (name, r) in &results {
        match r {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
