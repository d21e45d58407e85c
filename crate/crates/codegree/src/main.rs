use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use codegree::campaign::{self, Budgets};
use codegree::format::{parse_hypergraph, write_hypergraph};
use codegree::json::{labels, HypergraphJson, SearchResultJson, SunflowerJson, WitnessJson};
use codegree::report::{Report, Verdict};
use codegree::suite::parse_suite;
use codegree::{run_checks, with_workers};
use codegree_core::badtriple::{check_conditions, check_less_s_and_t_int, search_bad_triple};
use codegree_core::extremal::{enumerate_feasible, max_feasible, subset_of_kernel_check, EnumerateOptions};
use codegree_core::kernels::{build_kernel, kernel_codegree_check, kernel_edge_count, punctured_kernel, KernelSpec};
use codegree_core::shadow::{shadow, verify_kk_special_case, KkOutcome, SetFamily, DEFAULT_KK_BUDGET};
use codegree_core::sunflower::{check_core_lower_bound, find_bounded_core_sunflower, find_sunflower};
use codegree_core::{Error, Hypergraph, Params, SearchLimits, VertexSet};

#[derive(Parser)]
#[command(name = "codegree", version, about = "Exact checks for intersecting hypergraphs with large positive codegree")]
struct Cli {
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for campaign cells.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Kernel systems.
    #[command(subcommand)]
    Kernel(KernelCmd),
    /// Sunflower finders.
    #[command(subcommand)]
    Sunflower(SunflowerCmd),
    /// Shadows and the Kruskal–Katona check.
    #[command(subcommand)]
    Shadow(ShadowCmd),
    /// Bad-triple search and lemma probes.
    #[command(subcommand)]
    Badtriple(BadtripleCmd),
    /// Exact extremal searches.
    #[command(subcommand)]
    Extremal(ExtremalCmd),
    /// Per-cell theorem checks over a parameter grid.
    VerifyTheorem(VerifyArgs),
    /// Claims about the punctured kernel system.
    CounterexampleAudit {
        #[arg(long, default_value_t = 4)]
        r: u32,
        #[arg(long, default_value_t = 12)]
        n: u32,
    },
    /// Runs a campaign config file.
    RunSuite { config: PathBuf },
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: u32,
}

#[derive(Args, Clone, Copy)]
struct FullParams {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    r: u32,
    #[arg(long)]
    s: u32,
    #[arg(long)]
    t: u32,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    #[arg(long, default_value_t = 100_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 10_000_000)]
    budget_pairs: u64,
    /// Petal-family cap per side in the bad-triple search (default r + 2).
    #[arg(long)]
    max_petals: Option<usize>,
    /// Wall-clock limit in milliseconds.
    #[arg(long)]
    time_limit_ms: Option<u64>,
}

#[derive(Subcommand)]
enum KernelCmd {
    /// Print an (a, b)-kernel system in the text format.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
        /// Kernel set as comma-separated labels (default 0..a-1).
        #[arg(long, value_delimiter = ',')]
        kernel: Option<Vec<u32>>,
    },
    /// Closed-form edge count.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u32,
    },
    /// Codegree and intersection of the extremal kernel system.
    CheckCodegree {
        #[command(flatten)]
        params: FullParams,
        #[arg(long)]
        n: u32,
    },
    /// Print the punctured kernel system.
    Counterexample {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand)]
enum SunflowerCmd {
    /// Erdős–Rado recursion.
    Find {
        graph: PathBuf,
        #[arg(long)]
        p: u32,
    },
    /// Exhaustive scan over cores of bounded size.
    Bounded {
        graph: PathBuf,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        max_core: u32,
    },
    /// Sunflower with r + 1 petals and core below k - s + t, if any.
    CheckCoreBound {
        graph: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Subcommand)]
enum ShadowCmd {
    /// i-shadow of a family given in the hypergraph text format.
    Compute {
        family: PathBuf,
        #[arg(long)]
        i: u32,
    },
    /// Exhaustive Kruskal–Katona check.
    VerifyKk {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = DEFAULT_KK_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum BadtripleCmd {
    /// Bounded search; prints a witness or null.
    Search {
        graph: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Recheck the five conditions of a witness file.
    Check {
        graph: PathBuf,
        witness: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Probe the intersection lemmas on every near miss.
    Lemmas {
        graph: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Subcommand)]
enum ExtremalCmd {
    /// Maximum feasible edge count on [n].
    Max {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        params: FullParams,
        #[command(flatten)]
        limits: LimitArgs,
        /// Search without fixing the first two edges.
        #[arg(long)]
        no_symmetry: bool,
    },
    /// All feasible graphs on [n].
    Enumerate {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        params: FullParams,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        max_edges: Option<usize>,
        /// One representative per isomorphism class (n <= 9).
        #[arg(long)]
        up_to_isomorphism: bool,
        #[arg(long, default_value_t = 1_000_000)]
        max_results: u64,
    },
    /// Colex-least kernel set containing the graph, or null.
    CheckSubsetKernel {
        graph: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Explicit cell `k=..,s=..,t=..,r=..`; repeatable. Overrides the grid.
    #[arg(long)]
    cell: Vec<String>,
    #[arg(long, default_value_t = 2)]
    max_k: u32,
    #[arg(long, default_value_t = 2)]
    max_t: u32,
    #[arg(long, default_value_t = 3)]
    max_r: u32,
    #[arg(long, default_value_t = 1)]
    n_min: u32,
    #[arg(long, default_value_t = 7)]
    n_max: u32,
    #[arg(long, default_value_t = 100_000_000)]
    budget_nodes: u64,
    #[arg(long, default_value_t = 10_000_000)]
    budget_pairs: u64,
}

/// What a command produced, and whether it counts as a failure.
enum Outcome {
    Text(String),
    Json(Value),
    Report(Report),
    Failed(Value),
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Incomplete(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded(limit) => CliError::Incomplete(format!("search stopped: {limit}")),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| CliError::Usage(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Hypergraph, CliError> {
    parse_hypergraph(&read_input(path)?).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn params_for(h: &Hypergraph, p: ParamArgs) -> Result<Params, CliError> {
    Ok(Params::new(p.k, h.r(), p.s, p.t)?)
}

fn full(p: FullParams) -> Result<Params, CliError> {
    Ok(Params::new(p.k, p.r, p.s, p.t)?)
}

fn json_of<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn with_limits<T>(args: LimitArgs, f: impl FnOnce(&SearchLimits<'_>) -> T) -> T {
    let deadline = args.time_limit_ms.map(|ms| Instant::now() + Duration::from_millis(ms));
    let stop = move || deadline.is_some_and(|d| Instant::now() >= d);
    let limits = SearchLimits {
        max_nodes: args.budget_nodes,
        max_pairs: args.budget_pairs,
        max_petals: args.max_petals,
        interrupt: deadline.map(|_| &stop as &(dyn Fn() -> bool + Sync)),
    };
    f(&limits)
}

fn parse_cell(text: &str) -> Result<(u32, u32, u32, u32), String> {
    let mut vals = [None; 4];
    for part in text.split(',') {
        let (key, value) = part.split_once('=').ok_or_else(|| format!("`{part}` is not key=value"))?;
        let slot = match key.trim() {
            "k" => 0,
            "s" => 1,
            "t" => 2,
            "r" => 3,
            other => return Err(format!("unknown cell key `{other}`")),
        };
        vals[slot] = Some(value.trim().parse::<u32>().map_err(|_| format!("`{value}` is not an integer"))?);
    }
    match vals {
        [Some(k), Some(s), Some(t), Some(r)] => Ok((k, s, t, r)),
        _ => Err(format!("cell `{text}` needs k, s, t and r")),
    }
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Kernel(cmd) => kernel(cmd),
        Command::Sunflower(cmd) => sunflower(cmd),
        Command::Shadow(cmd) => shadow_cmd(cmd),
        Command::Badtriple(cmd) => badtriple(cmd),
        Command::Extremal(cmd) => extremal(cmd),
        Command::VerifyTheorem(args) => verify_theorem(args, cli.workers),
        Command::CounterexampleAudit { r, n } => {
            punctured_kernel(*r, *n)?;
            let start = Instant::now();
            let mut report = Report::new("counterexample-audit", json!({"r": r, "n": n}));
            report.verdicts = campaign::counterexample_audit(*r, *n);
            report.timing_ms = start.elapsed().as_millis() as u64;
            Ok(Outcome::Report(report))
        }
        Command::RunSuite { config } => {
            let text = read_input(config)?;
            let mut cfg =
                parse_suite(&text).map_err(|e| CliError::Usage(format!("{}: {e}", config.display())))?;
            if cli.seed != 0 {
                cfg.campaign.seed = cli.seed;
            }
            let report = run_checks("run-suite", &cfg.name, &cfg.checks, &cfg.campaign, cli.workers);
            if cli.output.is_none() {
                if let Some(path) = &cfg.output {
                    write_out(path, &report.to_json())?;
                    return Ok(Outcome::Json(report_summary(&report, path)));
                }
            }
            Ok(Outcome::Report(report))
        }
    }
}

fn report_summary(report: &Report, path: &Path) -> Value {
    json!({"report": path.display().to_string(), "summary": report.summary(), "exit": report.exit_code()})
}

fn kernel(cmd: &KernelCmd) -> Result<Outcome, CliError> {
    match cmd {
        KernelCmd::Build { n, r, a, b, kernel } => {
            let spec = match kernel {
                Some(labels) => {
                    let set = VertexSet::from_vertices(*n, labels.iter().copied())?;
                    KernelSpec::new(*n, *r, *a, *b, set)?
                }
                None => KernelSpec::initial(*n, *r, *a, *b)?,
            };
            Ok(Outcome::Text(write_hypergraph(&build_kernel(&spec)?)))
        }
        KernelCmd::Count { n, r, a, b } => {
            Ok(Outcome::Json(json!({"n": n, "r": r, "a": a, "b": b, "count": kernel_edge_count(*n, *r, *a, *b)})))
        }
        KernelCmd::CheckCodegree { params, n } => {
            let p = full(*params)?;
            let start = Instant::now();
            let rep = kernel_codegree_check(&p, *n)?;
            let mut report = Report::new("kernel check-codegree", json!({"k": p.k, "s": p.s, "t": p.t, "r": p.r, "n": n}));
            let delta = rep.delta.finite().map_or(json!("infinity"), |d| json!(d));
            report.verdicts.push(Verdict::new(
                "kernel-codegree",
                rep.holds(),
                json!({"delta": delta, "expected": rep.expected, "tIntersecting": rep.t_intersecting, "edges": rep.edges}),
            ));
            report.timing_ms = start.elapsed().as_millis() as u64;
            Ok(Outcome::Report(report))
        }
        KernelCmd::Counterexample { r, n } => Ok(Outcome::Text(write_hypergraph(&punctured_kernel(*r, *n)?))),
    }
}

fn sunflower_json(sf: Option<codegree_core::Sunflower>) -> Value {
    sf.map_or(Value::Null, |sf| json_of(&SunflowerJson::from(&sf)))
}

fn sunflower(cmd: &SunflowerCmd) -> Result<Outcome, CliError> {
    match cmd {
        SunflowerCmd::Find { graph, p } => Ok(Outcome::Json(sunflower_json(find_sunflower(&read_graph(graph)?, *p)))),
        SunflowerCmd::Bounded { graph, p, max_core } => {
            Ok(Outcome::Json(sunflower_json(find_bounded_core_sunflower(&read_graph(graph)?, *p, *max_core))))
        }
        SunflowerCmd::CheckCoreBound { graph, params } => {
            let h = read_graph(graph)?;
            let p = params_for(&h, *params)?;
            Ok(Outcome::Json(sunflower_json(check_core_lower_bound(&h, &p)?)))
        }
    }
}

fn shadow_cmd(cmd: &ShadowCmd) -> Result<Outcome, CliError> {
    match cmd {
        ShadowCmd::Compute { family, i } => {
            let h = read_graph(family)?;
            let fam = SetFamily::new(h.n(), h.r(), h.edges().iter().copied())?;
            let sh = shadow(&fam, *i)?;
            let out = Hypergraph::new(sh.ground(), sh.member_size(), sh.members().iter().copied())?;
            Ok(Outcome::Text(write_hypergraph(&out)))
        }
        ShadowCmd::VerifyKk { k, s, i, m, budget } => {
            let start = Instant::now();
            let mut report = Report::new("shadow verify-kk", json!({"k": k, "s": s, "i": i, "m": m, "budget": budget}));
            let verdict = match verify_kk_special_case(*k, *s, *i, *m, *budget)? {
                KkOutcome::Verified { families, min_shadow, bound } => Verdict::new(
                    "kruskal-katona",
                    min_shadow >= bound,
                    json!({"families": families, "minShadow": min_shadow, "bound": bound}),
                ),
                KkOutcome::Violated { family, shadow_size, bound } => Verdict::new(
                    "kruskal-katona",
                    false,
                    json!({"shadow": shadow_size, "bound": bound,
                           "family": family.members().iter().map(|x| labels(*x)).collect::<Vec<_>>()}),
                ),
                KkOutcome::OverBudget { required, budget } => Verdict::inconclusive(
                    "kruskal-katona",
                    format!("family budget {budget} below {required}"),
                    json!({"required": required}),
                ),
            };
            report.verdicts.push(verdict);
            report.timing_ms = start.elapsed().as_millis() as u64;
            Ok(Outcome::Report(report))
        }
    }
}

fn badtriple(cmd: &BadtripleCmd) -> Result<Outcome, CliError> {
    match cmd {
        BadtripleCmd::Search { graph, params, limits } => {
            let h = read_graph(graph)?;
            let p = params_for(&h, *params)?;
            let out = with_limits(*limits, |l| search_bad_triple(&h, &p, l))?;
            Ok(Outcome::Json(out.witness.map_or(Value::Null, |w| json_of(&WitnessJson::from(&w)))))
        }
        BadtripleCmd::Check { graph, witness, params } => {
            let h = read_graph(graph)?;
            let p = params_for(&h, *params)?;
            let text = read_input(witness)?;
            let parsed: WitnessJson = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", witness.display())))?;
            let checked = check_conditions(&h, &parsed.to_core(h.n())?, &p)?;
            let out = json_of(&WitnessJson::from(&checked));
            Ok(if checked.is_bad() { Outcome::Json(out) } else { Outcome::Failed(out) })
        }
        BadtripleCmd::Lemmas { graph, params, limits } => {
            let h = read_graph(graph)?;
            let p = params_for(&h, *params)?;
            let start = Instant::now();
            let rep = with_limits(*limits, |l| check_less_s_and_t_int(&h, &p, l))?;
            let mut report = Report::new("badtriple lemmas", json!({"k": p.k, "s": p.s, "t": p.t, "r": p.r}));
            report.verdicts.push(Verdict::new(
                "less-s",
                rep.less_s_violations == 0,
                json!({"candidates": rep.less_s_candidates, "exercised": rep.less_s_exercised,
                       "violations": rep.less_s_violations, "nearMissPairs": rep.near_miss_pairs,
                       "corePairs": rep.core_pairs}),
            ));
            report.verdicts.push(Verdict::new(
                "t-int",
                rep.t_int_violations == 0 && (rep.bad_triples == 0 || rep.t_int_form_found),
                json!({"checked": rep.t_int_checked, "violations": rep.t_int_violations,
                       "badTriples": rep.bad_triples, "formFound": rep.t_int_form_found}),
            ));
            report.timing_ms = start.elapsed().as_millis() as u64;
            Ok(Outcome::Report(report))
        }
    }
}

fn extremal(cmd: &ExtremalCmd) -> Result<Outcome, CliError> {
    match cmd {
        ExtremalCmd::Max { n, params, limits, no_symmetry } => {
            let p = full(*params)?;
            let res = with_limits(*limits, |l| max_feasible(*n, &p, l, !no_symmetry))?;
            Ok(Outcome::Json(json_of(&SearchResultJson::from(&res))))
        }
        ExtremalCmd::Enumerate { n, params, limits, max_edges, up_to_isomorphism, max_results } => {
            let p = full(*params)?;
            let opts =
                EnumerateOptions { max_edges: *max_edges, up_to_isomorphism: *up_to_isomorphism, max_results: *max_results };
            let all = with_limits(*limits, |l| enumerate_feasible(*n, &p, &opts, l))?;
            Ok(Outcome::Json(json_of(&all.iter().map(HypergraphJson::from).collect::<Vec<_>>())))
        }
        ExtremalCmd::CheckSubsetKernel { graph, params } => {
            let h = read_graph(graph)?;
            let p = params_for(&h, *params)?;
            Ok(Outcome::Json(subset_of_kernel_check(&h, &p).map_or(Value::Null, |w| json!(labels(w)))))
        }
    }
}

fn verify_theorem(args: &VerifyArgs, workers: usize) -> Result<Outcome, CliError> {
    use rayon::prelude::*;

    let start = Instant::now();
    let budgets = Budgets { nodes: args.budget_nodes, pairs: args.budget_pairs, ..Budgets::default() };
    let cells: Vec<Result<Params, String>> = if args.cell.is_empty() {
        campaign::params_grid(args.max_k, args.max_t, args.max_r).into_iter().map(Ok).collect()
    } else {
        let mut out = Vec::new();
        for text in &args.cell {
            let (k, s, t, r) = parse_cell(text).map_err(CliError::Usage)?;
            out.push(Params::new(k, r, s, t).map_err(|e| format!("k={k} s={s} t={t} r={r}: outside theorem regime ({e})")));
        }
        out
    };
    let jobs: Vec<(Result<Params, String>, u32)> = cells
        .iter()
        .flat_map(|c| (args.n_min..=args.n_max).map(move |n| (c.clone(), n)))
        .filter(|(c, n)| c.as_ref().map_or(true, |p| *n >= p.r))
        .collect();
    let verdicts = with_workers(workers, || {
        jobs.par_iter()
            .map(|(cell, n)| match cell {
                Ok(p) => campaign::theorem_cell(p, *n, &budgets),
                Err(why) => Verdict::failed("theorem", why, json!({"n": n})),
            })
            .collect::<Vec<_>>()
    });
    let mut report = Report::new(
        "verify-theorem",
        json!({"cells": args.cell, "maxK": args.max_k, "maxT": args.max_t, "maxR": args.max_r,
               "nMin": args.n_min, "nMax": args.n_max, "budgets": budgets}),
    );
    report.verdicts = verdicts;
    report.timing_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome::Report(report))
}

fn write_out(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), CliError> {
    match output {
        Some(path) => write_out(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        let output = cli.output.as_deref();
        match outcome {
            Outcome::Text(t) => emit(output, &t).map(|_| 0),
            Outcome::Json(v) => {
                let code = v.get("exit").and_then(Value::as_u64).unwrap_or(0) as u8;
                emit(output, &pretty(&v)).map(|_| code)
            }
            Outcome::Failed(v) => emit(output, &pretty(&v)).map(|_| 1),
            Outcome::Report(r) => emit(output, &r.to_json()).map(|_| r.exit_code() as u8),
        }
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Incomplete(msg)) => {
            eprintln!("incomplete: {msg}");
            ExitCode::from(1)
        }
    }
}

