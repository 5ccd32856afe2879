//! `gpcops`: cop numbers, the four-cop table, strategy simulations and
//! bounds for generalized Petersen graphs and I-graphs.

mod spec;
mod table;

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gpcops::solver::{self, SolveOptions, SolveStats, DEFAULT_BUDGET_STATES};
use gpcops::strategies::{
    force_right_controller, four_cop_controller, gp_n3_controller, igraph_five_cop_controller,
    simulate, tree_guard_controller, verify_trace, weak_cop_controller, Controller, GameTrace,
    Outcome, RobberPolicy,
};
use gpcops::{
    build_gp, build_igraph, BoundReport, Family, Graph, SolveError, StrategyError, Subgraph,
};
use serde::Serialize;

/// Failure classes, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Precondition(String),
    Budget(String),
    Strategy(String),
    ExceedsMax(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Strategy(_) => 5,
            CliError::ExceedsMax(_) => 6,
            CliError::Io(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Parse(m)
            | CliError::Precondition(m)
            | CliError::Budget(m)
            | CliError::Strategy(m)
            | CliError::ExceedsMax(m)
            | CliError::Io(m) => m,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            SolveError::ExceedsMax(_) => CliError::ExceedsMax(e.to_string()),
            _ => CliError::Precondition(e.to_string()),
        }
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Precondition(_) | StrategyError::Graph(_) => {
                CliError::Precondition(e.to_string())
            }
            StrategyError::Solve(s) => s.into(),
            _ => CliError::Strategy(e.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "gpcops",
    version,
    about = "Cops and robbers on generalized Petersen graphs and I-graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct SolveArgs {
    /// Largest cop count tried.
    #[arg(long, default_value_t = 4)]
    cmax: usize,
    /// Refuse to solve state spaces larger than this.
    #[arg(long, default_value_t = DEFAULT_BUDGET_STATES)]
    budget_states: u128,
}

impl SolveArgs {
    fn options(&self) -> SolveOptions {
        SolveOptions {
            budget_states: self.budget_states,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact cop number of one graph.
    Copnumber {
        /// gp N K | igraph N J K | edge-list file
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[command(flatten)]
        solve: SolveArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cop numbers of every GP(n,k) with n in a range, as CSV.
    Table {
        n_min: usize,
        n_max: usize,
        /// Keep only rows with this cop number.
        #[arg(long)]
        copnum: Option<usize>,
        #[command(flatten)]
        solve: SolveArgs,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the CSV here (plus PATH.stats.json) instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Play a cop strategy against a robber policy.
    Simulate {
        #[arg(value_enum)]
        strategy: Strategy,
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        /// optimal | greedy | random | scripted:V0,V1,...
        #[arg(long, default_value = "greedy")]
        robber: String,
        /// Seed for the random robber.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Turn limit; defaults to 50 times the rim length.
        #[arg(long)]
        max_turns: Option<usize>,
        /// Write the JSON trace here.
        #[arg(long)]
        trace_out: Option<PathBuf>,
        /// Guarded tree vertices for the guard strategy.
        #[arg(long)]
        tree: Option<String>,
        /// Guard start vertex; the first tree vertex by default.
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_BUDGET_STATES)]
        budget_states: u128,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Replay a trace and recompute its outcome.
    Verify {
        trace: PathBuf,
        /// Graph spec, needed only for traces of generic graphs.
        graph: Vec<String>,
    },
    /// Degree, girth and cop-number bounds of a graph.
    Bounds {
        #[arg(required = true, num_args = 1..)]
        graph: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Weak2,
    Forceright,
    Four,
    Gpn3,
    Igraph5,
    Guard,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}

fn run(cmd: Command) -> Result<u8, CliError> {
    match cmd {
        Command::Copnumber {
            graph,
            solve,
            format,
        } => copnumber(&graph, &solve, format),
        Command::Table {
            n_min,
            n_max,
            copnum,
            solve,
            jobs,
            out,
        } => table::run(
            n_min,
            n_max,
            copnum,
            solve.cmax,
            solve.options(),
            jobs,
            out.as_deref(),
        ),
        Command::Simulate {
            strategy,
            graph,
            robber,
            seed,
            max_turns,
            trace_out,
            tree,
            start,
            budget_states,
            format,
        } => {
            let g = spec::parse_graph(&graph)?;
            let sim = SimArgs {
                robber,
                seed,
                max_turns,
                tree,
                start,
                budget_states,
            };
            simulate_cmd(strategy, g, &sim, trace_out, format)
        }
        Command::Verify { trace, graph } => verify(&trace, &graph),
        Command::Bounds { graph, format } => bounds(&graph, format),
    }
}

fn graph_name(g: &Graph) -> String {
    match g.family() {
        Family::Gp(p) => p.to_string(),
        Family::IGraph(p) => p.to_string(),
        _ => format!("graph({} vertices, {} edges)", g.n_vertices(), g.n_edges()),
    }
}

#[derive(Serialize)]
struct CopNumberRow {
    graph: String,
    n_vertices: usize,
    cop_number: usize,
    lower_bound: u32,
    upper_bound: Option<u32>,
    girth: String,
    witness_placement: Vec<usize>,
    solve_stats: Vec<SolveStats>,
}

fn copnumber(tokens: &[String], solve: &SolveArgs, format: Format) -> Result<u8, CliError> {
    let g = spec::parse_graph(tokens)?;
    let bounds = g.lower_bounds();
    let res = solver::cop_number_with(&g, solve.cmax, solve.options())?;
    let row = CopNumberRow {
        graph: graph_name(&g),
        n_vertices: g.n_vertices(),
        cop_number: res.cop_number,
        lower_bound: bounds.lower_bound(),
        upper_bound: bounds.upper_bound,
        girth: bounds.girth.to_string(),
        witness_placement: res.witness_placement,
        solve_stats: res.solve_stats,
    };
    let states: u128 = row.solve_stats.iter().map(|s| s.states).sum();
    let millis: u128 = row.solve_stats.iter().map(|s| s.millis).sum();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&row).expect("row serializes")
        ),
        Format::Csv => {
            println!("graph,copnumber,girth,lowerbound,states,millis");
            println!(
                "\"{}\",{},{},{},{states},{millis}",
                row.graph, row.cop_number, row.girth, row.lower_bound
            );
        }
        Format::Text => {
            println!("graph        {}", row.graph);
            println!("vertices     {}", row.n_vertices);
            println!("cop number   {}", row.cop_number);
            println!("lower bound  {}", row.lower_bound);
            println!("girth        {}", row.girth);
            println!("witness      {:?}", row.witness_placement);
            println!("states       {states}");
            println!("millis       {millis}");
        }
    }
    Ok(0)
}

struct SimArgs {
    robber: String,
    seed: u64,
    max_turns: Option<usize>,
    tree: Option<String>,
    start: Option<usize>,
    budget_states: u128,
}

fn controller(
    strategy: Strategy,
    g: &Graph,
    sim: &SimArgs,
) -> Result<Box<dyn Controller>, CliError> {
    let gp = || match g.family() {
        Family::Gp(p) => Ok(*p),
        _ => Err(CliError::Precondition(
            "this strategy needs a generalized Petersen graph (gp n k)".into(),
        )),
    };
    Ok(match strategy {
        Strategy::Weak2 => Box::new(weak_cop_controller(gp()?)?),
        Strategy::Forceright => Box::new(force_right_controller(gp()?)?),
        Strategy::Four => Box::new(four_cop_controller(gp()?)?),
        Strategy::Gpn3 => {
            let p = gp()?;
            if p.k != 3 {
                return Err(CliError::Precondition(format!("gpn3 needs k = 3, got {p}")));
            }
            Box::new(gp_n3_controller(p.n)?)
        }
        Strategy::Igraph5 => match g.family() {
            Family::IGraph(p) => Box::new(igraph_five_cop_controller(*p)?),
            Family::Gp(p) => Box::new(igraph_five_cop_controller((*p).into())?),
            _ => {
                return Err(CliError::Precondition(
                    "igraph5 needs an I-graph (igraph n j k)".into(),
                ))
            }
        },
        Strategy::Guard => {
            let tree = sim
                .tree
                .as_deref()
                .ok_or_else(|| CliError::Parse("guard needs --tree V0,V1,...".into()))?;
            let vertices = spec::parse_vertices(tree)?;
            for &v in &vertices {
                g.check_vertex(v)
                    .map_err(|e| CliError::Precondition(e.to_string()))?;
            }
            let start = sim.start.unwrap_or(vertices[0]);
            let sub = Subgraph::induced(g, vertices);
            Box::new(tree_guard_controller(g.clone(), sub, start)?)
        }
    })
}

fn policy(sim: &SimArgs, g: &Graph, cops: usize) -> Result<RobberPolicy, CliError> {
    match sim.robber.as_str() {
        "greedy" => Ok(RobberPolicy::Greedy),
        "random" => Ok(RobberPolicy::Random(sim.seed)),
        "optimal" => {
            let table = solver::solve_with(
                g,
                cops,
                SolveOptions {
                    budget_states: sim.budget_states,
                },
            )?;
            Ok(RobberPolicy::Optimal(Arc::new(table)))
        }
        s => match s.strip_prefix("scripted:") {
            Some(list) => Ok(RobberPolicy::Scripted(spec::parse_vertices(list)?)),
            None => Err(CliError::Parse(format!(
                "unknown robber policy '{s}' (optimal | greedy | random | scripted:V0,V1,...)"
            ))),
        },
    }
}

fn rim_length(g: &Graph) -> usize {
    match g.family() {
        Family::Gp(p) => p.n,
        Family::IGraph(p) => p.n,
        _ => g.n_vertices(),
    }
}

#[derive(Serialize)]
struct SimSummary {
    strategy: String,
    graph: String,
    policy: String,
    outcome: Outcome,
    cop_turns: usize,
    flags: usize,
}

fn simulate_cmd(
    strategy: Strategy,
    g: Graph,
    sim: &SimArgs,
    trace_out: Option<PathBuf>,
    format: Format,
) -> Result<u8, CliError> {
    let mut ctl = controller(strategy, &g, sim)?;
    let robber = policy(sim, &g, ctl.cop_count())?;
    let max_turns = sim.max_turns.unwrap_or(50 * rim_length(&g));
    let (trace, failure) = match simulate(ctl.as_mut(), &robber, max_turns) {
        Ok(t) => (t, None),
        Err(e) => (*e.trace, Some(CliError::from(e.error))),
    };
    if let Some(path) = &trace_out {
        fs::write(path, trace.to_json())
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    if let Some(e) = failure {
        return Err(e);
    }
    let summary = SimSummary {
        strategy: trace.params.strategy.clone(),
        graph: trace.graph.clone(),
        policy: trace.params.policy.clone(),
        outcome: trace.outcome,
        cop_turns: trace.cop_turns(),
        flags: trace.flags().count(),
    };
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&summary).expect("summary serializes")
        ),
        Format::Csv => {
            println!("strategy,graph,policy,outcome,cop_turns,flags");
            println!(
                "{},\"{}\",\"{}\",{},{},{}",
                summary.strategy,
                summary.graph,
                summary.policy,
                outcome_name(summary.outcome),
                summary.cop_turns,
                summary.flags
            );
        }
        Format::Text => println!(
            "{} vs {} on {}: {} after {} cop turns",
            summary.strategy,
            summary.policy,
            summary.graph,
            outcome_name(summary.outcome),
            summary.cop_turns
        ),
    }
    let window_strategy = matches!(strategy, Strategy::Weak2 | Strategy::Forceright);
    Ok(match trace.outcome {
        Outcome::Capture => 0,
        Outcome::PushedOut if window_strategy => 0,
        _ => 5,
    })
}

fn outcome_name(o: Outcome) -> String {
    serde_json::to_value(o)
        .ok()
        .and_then(|v| v.as_str().map(String::from))
        .unwrap_or_default()
}

fn verify(path: &std::path::Path, tokens: &[String]) -> Result<u8, CliError> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let trace = GameTrace::from_json(&text)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let g = match (&trace.params.family, tokens.is_empty()) {
        (_, false) => spec::parse_graph(tokens)?,
        (Family::Gp(p), true) => build_gp(*p).map_err(|e| CliError::Parse(e.to_string()))?,
        (Family::IGraph(p), true) => {
            build_igraph(*p).map_err(|e| CliError::Parse(e.to_string()))?
        }
        _ => {
            return Err(CliError::Parse(
                "trace is for a generic graph; pass its edge-list file".into(),
            ))
        }
    };
    let outcome =
        verify_trace(&g, &trace).map_err(|e| CliError::Strategy(format!("replay failed: {e}")))?;
    if outcome != trace.outcome {
        return Err(CliError::Strategy(format!(
            "recorded outcome {} but replay gives {}",
            outcome_name(trace.outcome),
            outcome_name(outcome)
        )));
    }
    println!(
        "{} verified: {} after {} cop turns",
        trace.graph,
        outcome_name(outcome),
        trace.cop_turns()
    );
    Ok(0)
}

fn bounds(tokens: &[String], format: Format) -> Result<u8, CliError> {
    let g = spec::parse_graph(tokens)?;
    let b: BoundReport = g.lower_bounds();
    let ub = b.upper_bound.map_or("-".to_string(), |u| u.to_string());
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&b).expect("bounds serialize")
        ),
        Format::Csv => {
            println!("min_degree,girth,aigner_fromme_lb,frankl_lb,lower_bound,upper_bound");
            println!(
                "{},{},{},{},{},{ub}",
                b.min_degree,
                b.girth,
                b.aigner_fromme_lb,
                b.frankl_lb,
                b.lower_bound()
            );
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "graph             {}", graph_name(&g));
            let _ = writeln!(s, "min degree        {}", b.min_degree);
            let _ = writeln!(s, "girth             {}", b.girth);
            let _ = writeln!(s, "Aigner-Fromme lb  {}", b.aigner_fromme_lb);
            let _ = writeln!(s, "Frankl lb         {}", b.frankl_lb);
            let _ = writeln!(s, "lower bound       {}", b.lower_bound());
            let _ = write!(s, "upper bound       {ub}");
            println!("{s}");
        }
    }
    Ok(0)
}
