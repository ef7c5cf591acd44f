//! Experiment CLI: generate instances, run seeded trials, audit and verify
//! single runs, and query the exact oracle.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use streammatch::generators;
use streammatch::graph::{ArrivalOrder, BipartiteGraph};
use streammatch::harness::{
    self, AlgoParams, ExperimentSpec, HarnessError, VerifyTarget,
};
use streammatch::io::{read_graph, read_order, write_graph};
use streammatch::oracle::max_matching;

const EXIT_USAGE: u8 = 1;
const EXIT_IO_PARSE: u8 = 2;
const EXIT_INVARIANT: u8 = 3;

#[derive(Parser)]
#[command(name = "streammatch", version, about = "Semi-streaming bipartite matching experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file (arrival order = file order).
    Gen(GenArgs),
    /// Run an experiment spec and write per-trial CSV rows plus an aggregate.
    Run(RunArgs),
    /// Run one algorithm under instrumentation and check its invariants.
    Verify(VerifyArgs),
    /// Print the exact maximum matching size of a graph file.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct GenArgs {
    /// Instance family: half_trap | random | perfect_noise.
    family: String,
    /// Side parameter for half_trap (sides 2n) and perfect_noise.
    #[arg(long)]
    n: Option<usize>,
    /// A-side size for the random family.
    #[arg(long)]
    n_a: Option<usize>,
    /// B-side size for the random family.
    #[arg(long)]
    n_b: Option<usize>,
    /// Edge count for the random family.
    #[arg(long)]
    m: Option<usize>,
    /// Noise edges per diagonal vertex for perfect_noise.
    #[arg(long)]
    d: Option<usize>,
    /// Generator seed.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output graph file.
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Args)]
struct RunArgs {
    /// Experiment spec (JSON).
    #[arg(short = 'c', long = "config")]
    config: PathBuf,
    /// CSV output path; overrides the spec's `output` field.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Graph file.
    #[arg(short, long)]
    graph: PathBuf,
    /// Shuffle the arrival order with this seed.
    #[arg(long, conflicts_with = "order_file")]
    order_seed: Option<u64>,
    /// Load the arrival order from a file (one edge index per line).
    #[arg(long)]
    order_file: Option<PathBuf>,
    /// Algorithm: greedy | one_pass | subset_greedy | two_pass_rand | semi |
    /// two_pass_det | store_all (negative control).
    #[arg(short, long)]
    algorithm: String,
    #[arg(long)]
    lambda: Option<usize>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    #[arg(long)]
    p: Option<f64>,
    /// Seed for the A-side sample of the randomized algorithms.
    #[arg(long, default_value_t = 0)]
    sample_seed: u64,
}

#[derive(Args)]
struct OracleArgs {
    /// Graph file.
    #[arg(short, long)]
    graph: PathBuf,
}

enum CliError {
    Usage(String),
    IoParse(String),
    Invariant(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::IoParse(_) => EXIT_IO_PARSE,
            CliError::Invariant(_) => EXIT_INVARIANT,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::IoParse(m) | CliError::Invariant(m) => m,
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Spec(_) | HarnessError::Param(_) => CliError::Usage(e.to_string()),
            HarnessError::Parse(_) | HarnessError::Io { .. } | HarnessError::Gen(_) => {
                CliError::IoParse(e.to_string())
            }
            HarnessError::Stream(_) | HarnessError::Audit(_) => {
                CliError::Invariant(e.to_string())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help/--version are not failures.
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_USAGE)
            };
        }
    };
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args),
        Command::Run(args) => cmd_run(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required parameter {what}")))
}

fn cmd_gen(args: GenArgs) -> Result<(), CliError> {
    let (graph, order) = match args.family.as_str() {
        "half_trap" => {
            let n = require(args.n, "--n")?;
            if n == 0 {
                return Err(CliError::Usage("half_trap requires --n >= 1".into()));
            }
            generators::half_trap(n)
        }
        "random" => {
            let n_a = require(args.n_a, "--n-a")?;
            let n_b = require(args.n_b, "--n-b")?;
            let m = require(args.m, "--m")?;
            let graph = generators::random_bipartite(n_a, n_b, m, args.seed)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let order = ArrivalOrder::identity(m);
            (graph, order)
        }
        "perfect_noise" => {
            let n = require(args.n, "--n")?;
            let d = require(args.d, "--d")?;
            let graph = generators::perfect_plus_noise(n, d, args.seed)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let order = ArrivalOrder::identity(graph.m());
            (graph, order)
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown family {other:?} (expected half_trap, random, or perfect_noise)"
            )))
        }
    };
    let text = write_graph(&graph, &order);
    std::fs::write(&args.output, text)
        .map_err(|e| CliError::IoParse(format!("{}: {e}", args.output.display())))?;
    println!(
        "wrote {} ({} x {}, {} edges)",
        args.output.display(),
        graph.n_a(),
        graph.n_b(),
        graph.m()
    );
    Ok(())
}

fn cmd_run(args: RunArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| CliError::IoParse(format!("{}: {e}", args.config.display())))?;
    let spec: ExperimentSpec = serde_json::from_str(&text)
        .map_err(|e| CliError::IoParse(format!("{}: {e}", args.config.display())))?;
    let output = args
        .output
        .or_else(|| spec.output.clone().map(PathBuf::from))
        .ok_or_else(|| CliError::Usage("no output path: pass -o or set \"output\"".into()))?;
    let result = harness::run_to_csv(&spec, &output)?;
    let a = &result.aggregate;
    println!(
        "{} trials of {} on {}: mean ratio {:.4} (sd {:.4}, min {:.4}, max {:.4}) -> {}",
        a.trials,
        spec.algorithm.as_str(),
        result.records.first().map(|r| r.graph_id.as_str()).unwrap_or("?"),
        a.mean_ratio,
        a.stddev_ratio,
        a.min_ratio,
        a.max_ratio,
        output.display()
    );
    Ok(())
}

fn load_graph(path: &PathBuf) -> Result<(BipartiteGraph, ArrivalOrder), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::IoParse(format!("{}: {e}", path.display())))?;
    read_graph(&text).map_err(|e| CliError::IoParse(format!("{}: {e}", path.display())))
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let (graph, file_order) = load_graph(&args.graph)?;
    let order = if let Some(seed) = args.order_seed {
        generators::uniform_order(graph.m(), seed)
    } else if let Some(path) = &args.order_file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::IoParse(format!("{}: {e}", path.display())))?;
        read_order(&text, graph.m())
            .map_err(|e| CliError::IoParse(format!("{}: {e}", path.display())))?
    } else {
        file_order
    };
    let target: VerifyTarget = args
        .algorithm
        .parse()
        .map_err(|e: String| CliError::Usage(e))?;

    let defaults = AlgoParams::default();
    let split = streammatch::algo::PhaseSplit::new(
        args.alpha.unwrap_or(streammatch::algo::DEFAULT_ALPHA),
        args.beta.unwrap_or(streammatch::algo::DEFAULT_BETA),
    )
    .map_err(|e| CliError::Usage(e.to_string()))?;
    let params = AlgoParams {
        split,
        p: args.p.unwrap_or(defaults.p),
        lambda: args.lambda.unwrap_or(defaults.lambda),
    };

    let outcome = harness::verify(&graph, &order, target, &params, args.sample_seed)?;
    println!(
        "graph {} ({} x {}, {} edges), algorithm {}",
        args.graph.display(),
        graph.n_a(),
        graph.n_b(),
        graph.m(),
        outcome.target
    );
    println!("matched {} of optimum {}", outcome.matched, outcome.opt);
    println!(
        "passes {} | peak retained edges {} | per-edge work ok: {}",
        outcome.audit.passes_used,
        outcome.audit.peak_retained_edges,
        outcome.audit.per_edge_work_bound_ok
    );
    for check in &outcome.checks {
        let status = if check.passed { "ok" } else { "FAIL" };
        println!("check {:<28} {:>4}  {}", check.name, status, check.detail);
    }
    if outcome.all_passed() {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL");
        Err(CliError::Invariant("one or more checks failed".into()))
    }
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let (graph, _) = load_graph(&args.graph)?;
    println!("{}", max_matching(&graph).len());
    Ok(())
}
