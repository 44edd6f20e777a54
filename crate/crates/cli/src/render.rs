//! Plain-text output.

use linskol::ljf::LProof;
use linskol::reconstruct::Event;
use linskol::report::RunReport;
use linskol::skolem::neg_adjust;
use linskol::sljf::{SProof, TraceEvent};
use linskol::syntax::{Namer, SSequent};
use std::io::{self, Write};

/// One line per skolemised formula, in the per-formula presentation.
pub fn skolemised_formulas(s: &SSequent, namer: &mut Namer) -> Vec<String> {
    let mut out: Vec<String> = s.gamma.iter().map(|c| format!("unrestricted: {}", namer.closure(c))).collect();
    out.extend(s.delta.iter().map(|f| format!("linear: {}", namer.sformula(&neg_adjust(f.clone())))));
    out.push(format!("goal: {}", namer.sformula(&s.goal)));
    out
}

fn sproof(p: &SProof, namer: &mut Namer, depth: usize, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "{}{}  {}", "  ".repeat(depth + 1), p.rule, namer.ssequent(&p.conclusion))?;
    p.premises.iter().try_for_each(|q| sproof(q, namer, depth + 1, out))
}

fn lproof(p: &LProof, namer: &mut Namer, depth: usize, out: &mut dyn Write) -> io::Result<()> {
    let witness = p.witness.as_ref().map(|t| format!(" <{}>", namer.term(t))).unwrap_or_default();
    writeln!(out, "{}{}{witness}  {}", "  ".repeat(depth + 1), p.rule, namer.sequent(&p.conclusion))?;
    p.premises.iter().try_for_each(|q| lproof(q, namer, depth + 1, out))
}

fn event(e: &Event, namer: &mut Namer) -> String {
    match e {
        Event::Instantiate { var, term } => format!("{}:={}", namer.name(var), namer.term(term)),
        Event::IntroduceEigen { var } => format!("new {}", namer.name(var)),
        Event::Structural { rule } => rule.to_string(),
    }
}

pub fn report(r: &RunReport, stats: bool, out: &mut dyn Write) -> io::Result<()> {
    writeln!(out, "verdict: {}", r.verdict.as_str())?;
    writeln!(out, "engine: {}", r.engine.as_str())?;
    writeln!(out, "time: {:.3} ms", r.wall_time_ms)?;
    let mut namer = Namer::default();
    if let Some(s) = &r.sigma {
        writeln!(out, "sigma: {s}")?;
    }
    if let Some(doc) = &r.sljf_proof {
        writeln!(out, "proof:")?;
        sproof(&doc.proof, &mut namer, 0, out)?;
    }
    if let Some(p) = &r.ljf_proof {
        writeln!(out, "proof:")?;
        lproof(p, &mut namer, 0, out)?;
    }
    if let Some(rec) = &r.reconstructed {
        writeln!(out, "reconstructed:")?;
        lproof(&rec.proof, &mut namer, 0, out)?;
        let schedule: Vec<String> = rec.schedule.iter().map(|e| event(e, &mut namer)).collect();
        writeln!(out, "schedule: {}", schedule.join(", "))?;
    }
    if let Some(e) = &r.reconstruction_error {
        writeln!(out, "reconstruction failed: {e}")?;
    }
    if let Some(trace) = &r.trace {
        writeln!(out, "trace:")?;
        for e in &trace.events {
            writeln!(out, "  {}", trace_line(e))?;
        }
    }
    if stats {
        let s = &r.stats;
        writeln!(out, "node_expansions: {}", s.node_expansions)?;
        writeln!(out, "focus_backtracks: {}", s.focus_backtracks)?;
        writeln!(out, "term_backtracks: {}", s.term_backtracks)?;
        writeln!(out, "unifications: {}", s.unifications)?;
        writeln!(out, "admissibility_checks: {}", s.admissibility_checks)?;
        writeln!(out, "admissibility_failures: cond1={} cond2={}", s.admissibility_failures_cond1, s.admissibility_failures_cond2)?;
        writeln!(out, "copies: {}", s.copies)?;
        writeln!(out, "max_depth: {}", s.max_depth)?;
    }
    Ok(())
}

fn trace_line(e: &TraceEvent) -> String {
    use linskol::sljf::AxiomOutcome;
    match e {
        TraceEvent::Rule { rule, depth, sequent } => format!("{}{rule}  {sequent}", "  ".repeat(*depth)),
        TraceEvent::Bind { entries } => format!("bind {}", entries.join(", ")),
        TraceEvent::Axiom { rule, assumption, goal, outcome } => {
            let verdict = match outcome {
                AxiomOutcome::Accepted => "accepted".to_string(),
                AxiomOutcome::Clash => "clash".to_string(),
                AxiomOutcome::OccursCheck { var } => format!("occurs check on {var}"),
                AxiomOutcome::Rejected { explanation, .. } => format!("rejected: {explanation}"),
            };
            format!("{rule} {assumption} ~ {goal}: {verdict}")
        }
        TraceEvent::Copy { world, renamed } => format!("copy {world} [{}]", renamed.join(", ")),
        TraceEvent::Backtrack { rule, depth } => format!("{}backtrack {rule}", "  ".repeat(*depth)),
        TraceEvent::Cutoff { reason } => format!("cutoff: {reason}"),
    }
}
