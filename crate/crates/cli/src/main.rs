mod render;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use linskol::gen::{random_batch, GenConfig};
use linskol::report::{self, check_report, Comparison, Engine, RunOptions, RunReport, SCHEMA};
use linskol::search::{Budget, FocusOrder, Verdict};
use linskol::skolem::skolemise_sequent;
use linskol::syntax::{parse_problem, Namer, ParseOptions, Sequent};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const INPUT_ERROR: u8 = 3;
const DISAGREEMENT: u8 = 4;

#[derive(Parser)]
#[command(name = "linskol", version, about = "Skolemised proof search for focused intuitionistic linear logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the skolemised sequent and its substitution.
    Skolemise {
        file: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Search for a proof with one engine.
    Prove {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Sljf)]
        engine: EngineArg,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: Output,
        /// Print the search trace (skolemised engine only).
        #[arg(long)]
        trace: bool,
        /// Rebuild a proof in the quantified calculus from the skolemised proof.
        #[arg(long)]
        reconstruct: bool,
        /// Print search counters.
        #[arg(long)]
        stats: bool,
    },
    /// Run both engines with the same budget and compare verdicts.
    Compare {
        file: PathBuf,
        #[command(flatten)]
        search: SearchArgs,
        #[command(flatten)]
        output: Output,
    },
    /// Re-check the proofs in a JSON report written by `prove` or `compare`.
    Check { file: PathBuf },
    /// Run both engines over a corpus directory or random sequents and emit CSV.
    Bench {
        /// Directory of `.lin` files.
        #[arg(long, conflicts_with = "random")]
        dir: Option<PathBuf>,
        /// Number of random sequents.
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the CSV here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Sljf,
    Ljf,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Left,
    Right,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, default_value_t = Budget::default().copy_bound)]
    copy_bound: u32,
    #[arg(long, default_value_t = Budget::default().depth)]
    depth: usize,
    #[arg(long, default_value_t = Budget::default().max_nodes)]
    max_nodes: u64,
    /// Stable-sequent choice order; each engine has its own default.
    #[arg(long, value_enum)]
    order: Option<OrderArg>,
}

impl SearchArgs {
    fn options(&self) -> RunOptions {
        RunOptions {
            budget: Budget { copy_bound: self.copy_bound, depth: self.depth, max_nodes: self.max_nodes },
            order: self.order.map(|o| match o {
                OrderArg::Left => FocusOrder::LeftFirst,
                OrderArg::Right => FocusOrder::RightFirst,
            }),
            trace: false,
            reconstruct: false,
        }
    }
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Same as `--format json`.
    #[arg(long)]
    json: bool,
}

impl Output {
    fn json(&self) -> bool {
        self.json || self.format == Format::Json
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn load(path: &Path) -> Result<Sequent> {
    let src = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let problem = parse_problem(&src, ParseOptions::default()).with_context(|| format!("{}", path.display()))?;
    for w in &problem.warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(problem.sequent)
}

fn print_json(value: &impl serde::Serialize) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn verdict_code(v: Verdict) -> u8 {
    v.exit_code() as u8
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Skolemise { file, output } => {
            let seq = load(&file)?;
            let sk = skolemise_sequent(&seq);
            let mut namer = Namer::default();
            let text = namer.ssequent(&sk.sequent);
            let sigma = namer.subst(&sk.sigma);
            if output.json() {
                print_json(&json!({
                    "schema": SCHEMA,
                    "sequent": sk.sequent,
                    "sigma": sk.sigma,
                    "text": text,
                    "sigma_text": sigma,
                }))?;
            } else {
                for f in render::skolemised_formulas(&sk.sequent, &mut namer) {
                    println!("{f}");
                }
                println!("sequent: {text}");
                println!("sigma: {sigma}");
            }
            Ok(0)
        }
        Command::Prove { file, engine, search, output, trace, reconstruct, stats } => {
            let seq = load(&file)?;
            let options = RunOptions { trace, reconstruct, ..search.options() };
            let engine = match engine {
                EngineArg::Sljf => Engine::Sljf,
                EngineArg::Ljf => Engine::Ljf,
            };
            let r = report::run(engine, &seq, &options);
            if output.json() {
                print_json(&r)?;
            } else {
                render::report(&r, stats, &mut std::io::stdout())?;
            }
            Ok(verdict_code(r.verdict))
        }
        Command::Compare { file, search, output } => {
            let seq = load(&file)?;
            let c = report::compare(&seq, &search.options());
            if output.json() {
                print_json(&c)?;
            } else {
                println!("sljf: {} ({:.1} ms)", c.sljf.verdict.as_str(), c.sljf.wall_time_ms);
                println!("ljf: {} ({:.1} ms)", c.ljf.verdict.as_str(), c.ljf.wall_time_ms);
                println!("agreement: {}", c.agreement);
                if let Some(s) = &c.sljf.sigma {
                    println!("sigma: {s}");
                }
            }
            Ok(comparison_code(&c))
        }
        Command::Check { file } => {
            let src = std::fs::read_to_string(&file).with_context(|| format!("cannot read {}", file.display()))?;
            let value: serde_json::Value = serde_json::from_str(&src).context("not a JSON document")?;
            let reports: Vec<RunReport> = if value.get("agreement").is_some() {
                let c: Comparison = serde_json::from_value(value).context("not a comparison report")?;
                vec![c.sljf, c.ljf]
            } else {
                vec![serde_json::from_value(value).context("not a run report")?]
            };
            for r in &reports {
                if let Err(e) = check_report(r) {
                    println!("invalid: {e}");
                    return Ok(1);
                }
            }
            println!("valid");
            Ok(0)
        }
        Command::Bench { dir, random, seed, search, out } => {
            let cases: Vec<(String, Sequent)> = match (dir, random) {
                (Some(dir), _) => corpus(&dir)?,
                (None, Some(n)) => random_batch(seed, n, &GenConfig::default())
                    .into_iter()
                    .enumerate()
                    .map(|(i, s)| (format!("random-{seed}-{i}"), s))
                    .collect(),
                (None, None) => anyhow::bail!("bench needs --dir or --random"),
            };
            let sink: Box<dyn std::io::Write> = match &out {
                Some(p) => Box::new(std::fs::File::create(p).with_context(|| format!("cannot write {}", p.display()))?),
                None => Box::new(std::io::stdout()),
            };
            bench(&cases, &search.options(), sink)
        }
    }
}

fn comparison_code(c: &Comparison) -> u8 {
    if !c.agreement {
        DISAGREEMENT
    } else {
        verdict_code(c.sljf.verdict.max(c.ljf.verdict))
    }
}

fn corpus(dir: &Path) -> Result<Vec<(String, Sequent)>> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("cannot list {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "lin"))
        .collect();
    paths.sort();
    paths.into_iter().map(|p| Ok((p.file_name().unwrap().to_string_lossy().into_owned(), load(&p)?))).collect()
}

fn bench(cases: &[(String, Sequent)], options: &RunOptions, sink: Box<dyn std::io::Write>) -> Result<u8> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record([
        "name",
        "sequent",
        "sljf_verdict",
        "ljf_verdict",
        "agreement",
        "sljf_ms",
        "ljf_ms",
        "sljf_focus_backtracks",
        "ljf_focus_backtracks",
        "sljf_term_backtracks",
        "ljf_term_backtracks",
    ])?;
    let mut disagreements = 0;
    let mut tally = std::collections::BTreeMap::new();
    for (name, seq) in cases {
        let c = report::compare(seq, options);
        disagreements += usize::from(!c.agreement);
        *tally.entry((c.sljf.verdict.as_str(), c.ljf.verdict.as_str())).or_insert(0usize) += 1;
        w.write_record([
            name.clone(),
            c.sljf.sequent_text.clone(),
            c.sljf.verdict.as_str().into(),
            c.ljf.verdict.as_str().into(),
            c.agreement.to_string(),
            format!("{:.3}", c.sljf.wall_time_ms),
            format!("{:.3}", c.ljf.wall_time_ms),
            c.sljf.stats.focus_backtracks.to_string(),
            c.ljf.stats.focus_backtracks.to_string(),
            c.sljf.stats.term_backtracks.to_string(),
            c.ljf.stats.term_backtracks.to_string(),
        ])?;
    }
    w.flush()?;
    for ((s, l), n) in tally {
        eprintln!("sljf={s} ljf={l}: {n}");
    }
    eprintln!("{} sequents, {disagreements} disagreements", cases.len());
    Ok(if disagreements > 0 { DISAGREEMENT } else { 0 })
}
