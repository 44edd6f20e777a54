//! Single runs of either engine, packaged as versioned JSON documents.

use crate::ljf::{check_ljf, check_ljf_for, prove_ljf, LProof, LjfOptions};
use crate::reconstruct::{reconstruct, Event};
use crate::search::{Budget, FocusOrder, Stats, Verdict};
use crate::skolem::skolemise_sequent;
use crate::sljf::{check_sljf_for, prove, CheckError, SProofDoc, SljfOptions, Trace};
use crate::syntax::{alpha_eq_sequent, Namer, SNamer, Sequent};
use serde::{Deserialize, Serialize};
use std::time::Instant;

pub const SCHEMA: &str = "linskol/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Sljf,
    Ljf,
}

impl Engine {
    pub fn as_str(self) -> &'static str {
        match self {
            Engine::Sljf => "sljf",
            Engine::Ljf => "ljf",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunOptions {
    pub budget: Budget,
    /// Engine default when absent.
    pub order: Option<FocusOrder>,
    pub trace: bool,
    pub reconstruct: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Reconstructed {
    pub proof: LProof,
    pub schedule: Vec<Event>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub schema: String,
    pub engine: Engine,
    pub verdict: Verdict,
    pub wall_time_ms: f64,
    pub stats: Stats,
    pub sequent: Sequent,
    pub sequent_text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sljf_proof: Option<SProofDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ljf_proof: Option<LProof>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstructed: Option<Reconstructed>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reconstruction_error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Trace>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Comparison {
    pub schema: String,
    pub sljf: RunReport,
    pub ljf: RunReport,
    pub agreement: bool,
}

/// Verdicts conflict only when one engine proves what the other refutes.
pub fn agree(a: Verdict, b: Verdict) -> bool {
    a == b || a == Verdict::BudgetExhausted || b == Verdict::BudgetExhausted
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

pub fn run(engine: Engine, seq: &Sequent, options: &RunOptions) -> RunReport {
    match engine {
        Engine::Sljf => run_sljf(seq, options),
        Engine::Ljf => run_ljf(seq, options),
    }
}

pub fn run_sljf(seq: &Sequent, options: &RunOptions) -> RunReport {
    let start = Instant::now();
    let sk = skolemise_sequent(seq);
    let sljf_options =
        SljfOptions { budget: options.budget, order: options.order.unwrap_or_default(), trace: options.trace };
    let out = prove(&sk.sequent, &sk.sigma, &sljf_options);
    let wall_time_ms = millis(start);
    let sigma = out.proof.as_ref().map(|d| SNamer::default().subst(&d.sigma));
    let (reconstructed, reconstruction_error) = match (&out.proof, options.reconstruct) {
        (Some(doc), true) => match reconstruct(doc, seq) {
            Ok(r) => (Some(Reconstructed { proof: r.proof, schedule: r.schedule }), None),
            Err(e) => (None, Some(e.to_string())),
        },
        _ => (None, None),
    };
    RunReport {
        schema: SCHEMA.into(),
        engine: Engine::Sljf,
        verdict: out.verdict,
        wall_time_ms,
        stats: out.stats,
        sequent: seq.clone(),
        sequent_text: Namer::default().sequent(seq),
        sigma,
        sljf_proof: out.proof,
        ljf_proof: None,
        reconstructed,
        reconstruction_error,
        trace: options.trace.then_some(out.trace),
    }
}

pub fn run_ljf(seq: &Sequent, options: &RunOptions) -> RunReport {
    let start = Instant::now();
    let ljf_options = LjfOptions { budget: options.budget, order: options.order.unwrap_or(FocusOrder::LeftFirst) };
    let out = prove_ljf(seq, &ljf_options);
    RunReport {
        schema: SCHEMA.into(),
        engine: Engine::Ljf,
        verdict: out.verdict,
        wall_time_ms: millis(start),
        stats: out.stats,
        sequent: seq.clone(),
        sequent_text: Namer::default().sequent(seq),
        sigma: None,
        sljf_proof: None,
        ljf_proof: out.proof,
        reconstructed: None,
        reconstruction_error: None,
        trace: None,
    }
}

pub fn compare(seq: &Sequent, options: &RunOptions) -> Comparison {
    let sljf = run_sljf(seq, options);
    let ljf = run_ljf(seq, &RunOptions { trace: false, reconstruct: false, ..options.clone() });
    let agreement = agree(sljf.verdict, ljf.verdict);
    Comparison { schema: SCHEMA.into(), sljf, ljf, agreement }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("unsupported schema {0:?}")]
    Schema(String),
    #[error("verdict is proved but no {0} proof is embedded")]
    MissingProof(&'static str),
    #[error("{0} proof: {1}")]
    Invalid(&'static str, CheckError),
}

/// Re-check every proof embedded in `report` against its sequent.
pub fn check_report(report: &RunReport) -> Result<(), ReportError> {
    if report.schema != SCHEMA {
        return Err(ReportError::Schema(report.schema.clone()));
    }
    if let Some(doc) = &report.sljf_proof {
        let sk = skolemise_sequent(&report.sequent);
        check_sljf_for(doc, &sk.sequent, &sk.sigma).map_err(|e| ReportError::Invalid("sljf", e))?;
    }
    if let Some(p) = &report.ljf_proof {
        check_ljf_for(p, &report.sequent).map_err(|e| ReportError::Invalid("ljf", e))?;
    }
    if let Some(r) = &report.reconstructed {
        check_ljf(&r.proof).map_err(|e| ReportError::Invalid("reconstructed", e))?;
        if !alpha_eq_sequent(&r.proof.conclusion, &report.sequent) {
            let e = CheckError { path: Vec::new(), message: "proof does not conclude the given sequent".into() };
            return Err(ReportError::Invalid("reconstructed", e));
        }
    }
    if report.verdict == Verdict::Proved {
        match report.engine {
            Engine::Sljf if report.sljf_proof.is_none() => return Err(ReportError::MissingProof("sljf")),
            Engine::Ljf if report.ljf_proof.is_none() => return Err(ReportError::MissingProof("ljf")),
            _ => {}
        }
    }
    Ok(())
}
