//! Command-line front end. Exit status is 0 on success, 1 on runtime errors
//! and 2 on usage errors.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use super::{run_experiment, write_report_csv, Algorithm, ExperimentPlan, GraphSource};
use crate::baselines::{run_ga, GaConfig};
use crate::cascade::{fitness, simulate_threshold};
use crate::error::{Error, Result};
use crate::generators::{Family, GeneratorSpec};
use crate::hypergraph::{parse_hyperedge_file, summary_stats, to_hyperedge_string, StatsReport};
use crate::swarm::{run_optimizer, OptimizerConfig, Variant};

#[derive(Debug, Parser)]
#[command(name = "hyperseed", version, about = "Influence maximization on hypergraphs")]
#[command(subcommand_required = true, arg_required_else_help = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every (algorithm, k) cell several times and report spreads.
    Run(RunArgs),
    /// Optimize one seed set and print the result as JSON.
    Optimize(OptimizeArgs),
    /// Generate a synthetic hypergraph.
    Gen(GenArgs),
    /// Print structural statistics of the largest component as CSV.
    Stats(StatsArgs),
    /// Simulate the threshold cascade from a seed set.
    Cascade(CascadeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Er,
    Sf,
    Kuf,
}

impl FamilyArg {
    fn name(self) -> &'static str {
        match self {
            FamilyArg::Er => "er",
            FamilyArg::Sf => "sf",
            FamilyArg::Kuf => "kuf",
        }
    }
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Hyperedge-list file.
    #[arg(long, value_name = "PATH", conflicts_with = "gen", required_unless_present = "gen")]
    pub graph: Option<PathBuf>,
    /// Generate the graph instead of loading it.
    #[arg(long, value_name = "FAMILY", requires_all = ["n", "m", "feature"])]
    pub gen: Option<FamilyArg>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Mean edge size (er), degree exponent (sf) or edge size (kuf).
    #[arg(long, allow_negative_numbers = true)]
    pub feature: Option<f64>,
}

impl GraphArgs {
    fn source(&self, seed: u64) -> Result<GraphSource> {
        match (&self.graph, self.gen) {
            (Some(path), _) => Ok(GraphSource::File(path.clone())),
            (None, Some(family)) => {
                let family = Family::from_feature(family.name(), self.feature.unwrap())?;
                let spec = GeneratorSpec::new(family, self.n.unwrap(), self.m.unwrap(), seed);
                spec.validate()?;
                Ok(GraphSource::Generated(spec))
            }
            (None, None) => unreachable!("clap enforces a graph source"),
        }
    }
}

/// Swarm coefficients and budget shared by `run` and `optimize`.
#[derive(Debug, Args)]
pub struct SwarmArgs {
    /// Population size.
    #[arg(long, default_value_t = 256)]
    pub pop: usize,
    /// Generations.
    #[arg(long, default_value_t = 50)]
    pub gens: usize,
    /// Cognitive coefficient.
    #[arg(long, default_value_t = 1.2)]
    pub c1: f64,
    /// Social coefficient.
    #[arg(long, default_value_t = 1.2)]
    pub c2: f64,
    /// Inertia weight.
    #[arg(long, default_value_t = 0.7)]
    pub w: f64,
    /// Velocity threshold.
    #[arg(long, default_value_t = 1.5)]
    pub tau: f64,
    /// Fraction of particles refined by local search each generation.
    #[arg(long, default_value_t = 0.1)]
    pub pl: f64,
    /// Worker threads (defaults to all cores). Results do not depend on it.
    #[arg(long)]
    pub threads: Option<usize>,
}

impl SwarmArgs {
    fn optimizer(&self, k: usize, p: f64, seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            k,
            p,
            max_generations: self.gens,
            population: self.pop,
            c1: self.c1,
            c2: self.c2,
            inertia: self.w,
            tau: self.tau,
            local_search_fraction: self.pl,
            rng_master_seed: seed,
            ..OptimizerConfig::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Comma-separated algorithms.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "hdpso,pso,pso-init,ga,hhd,random,np,pagerank,hci1,hci2"
    )]
    pub algo: Vec<Algorithm>,
    /// Comma-separated seed-set sizes.
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 30)]
    pub runs: usize,
    /// Master seed; the only source of randomness.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub swarm: SwarmArgs,
    /// Output prefix for `<PATH>.runs.csv` and `<PATH>.summary.csv`. Without
    /// it the summary CSV goes to stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Reference algorithm for significance marks.
    #[arg(long = "ref", default_value = "hdpso")]
    pub reference: Algorithm,
    /// Significance level of the rank-sum test.
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Record wall-clock runtime per run (makes output non-reproducible).
    #[arg(long)]
    pub timing: bool,
}

impl RunArgs {
    pub fn plan(&self) -> Result<ExperimentPlan> {
        let mut plan = ExperimentPlan::new(self.graph.source(self.seed)?, self.algo.clone(), self.k.clone());
        plan.p = self.p;
        plan.runs = self.runs;
        plan.rng_master_seed = self.seed;
        plan.optimizer = self.swarm.optimizer(0, self.p, self.seed);
        plan.ga = GaConfig::default();
        plan.reference = self.reference;
        plan.alpha = self.alpha;
        plan.timing = self.timing;
        Ok(plan)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptimizerArg {
    Hdpso,
    Pso,
    PsoInit,
    Ga,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    #[arg(long, value_enum, default_value = "hdpso")]
    pub algo: OptimizerArg,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub swarm: SwarmArgs,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, alias = "gen", value_name = "FAMILY")]
    pub family: FamilyArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, allow_negative_numbers = true)]
    pub feature: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct StatsArgs {
    #[arg(long, value_name = "PATH")]
    pub graph: PathBuf,
}

#[derive(Debug, Args)]
pub struct CascadeArgs {
    #[arg(long, value_name = "PATH")]
    pub graph: PathBuf,
    /// Comma-separated node ids as they appear in the file.
    #[arg(long, value_delimiter = ',', required = true)]
    pub seeds: Vec<u64>,
    #[arg(long, default_value_t = 0.5)]
    pub p: f64,
    /// Also print the activation trace as `round,node` CSV.
    #[arg(long)]
    pub trace: bool,
}

fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::Config(e.to_string()))?;
            Ok(pool.install(f))
        }
    }
}

fn stdout_err(e: io::Error) -> Error {
    Error::io("<stdout>", e)
}

fn cmd_run(args: &RunArgs, out: &mut dyn Write) -> Result<()> {
    let plan = args.plan()?;
    let report = with_threads(args.swarm.threads, || run_experiment(&plan))??;
    match &args.out {
        Some(path) => {
            write_report_csv(&report, path)?;
            out.write_all(report.display_table().as_bytes()).map_err(stdout_err)
        }
        None => out.write_all(report.summary_csv().as_bytes()).map_err(stdout_err),
    }
}

fn cmd_optimize(args: &OptimizeArgs, out: &mut dyn Write) -> Result<()> {
    let (_, h) = args.graph.source(args.seed)?.load()?;
    let mut cfg = args.swarm.optimizer(args.k, args.p, args.seed);
    let result = with_threads(args.swarm.threads, || match args.algo {
        OptimizerArg::Ga => run_ga(&h, &cfg, &GaConfig::default()),
        other => {
            cfg.variant = match other {
                OptimizerArg::Pso => Variant::Pso,
                OptimizerArg::PsoInit => Variant::PsoInit,
                _ => Variant::Hdpso,
            };
            run_optimizer(&h, &cfg)
        }
    })??;
    writeln!(out, "{}", result.to_json()).map_err(stdout_err)
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let spec = GeneratorSpec::new(
        Family::from_feature(args.family.name(), args.feature)?,
        args.n,
        args.m,
        args.seed,
    );
    let h = spec.generate()?;
    let text = to_hyperedge_string(&h, Some(&spec.provenance()));
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::io(path.clone(), e)),
        None => out.write_all(text.as_bytes()).map_err(stdout_err),
    }
}

fn cmd_stats(args: &StatsArgs, out: &mut dyn Write) -> Result<()> {
    let h = parse_hyperedge_file(&args.graph)?;
    let lcc = h.largest_connected_component();
    if lcc.node_count() < h.node_count() {
        eprintln!(
            "note: statistics cover the largest component ({} of {} nodes)",
            lcc.node_count(),
            h.node_count()
        );
    }
    let report = summary_stats(&lcc)?;
    writeln!(out, "{}\n{}", StatsReport::CSV_HEADER, report.csv_row()).map_err(stdout_err)
}

fn cmd_cascade(args: &CascadeArgs, out: &mut dyn Write) -> Result<()> {
    let h = parse_hyperedge_file(&args.graph)?;
    let seeds = args
        .seeds
        .iter()
        .map(|&id| {
            h.compact_id(id).ok_or_else(|| Error::Config(format!("seed {id} does not occur in the graph")))
        })
        .collect::<Result<Vec<usize>>>()?;
    let result = simulate_threshold(&h, &seeds, args.p)?;
    let approx = fitness(&h, &seeds, args.p)?;
    let mut text = format!(
        "spread {}\nrounds {}\napprox_fitness {}\n",
        result.spread(),
        result.rounds.len().saturating_sub(1),
        approx
    );
    if args.trace {
        text.push_str("round,node\n");
        for (r, nodes) in result.rounds.iter().enumerate() {
            let mut ids = h.to_original(nodes);
            ids.sort_unstable();
            for id in ids {
                text.push_str(&format!("{r},{id}\n"));
            }
        }
    }
    out.write_all(text.as_bytes()).map_err(stdout_err)
}

/// Runs an already parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Run(a) => cmd_run(a, out),
        Command::Optimize(a) => cmd_optimize(a, out),
        Command::Gen(a) => cmd_gen(a, out),
        Command::Stats(a) => cmd_stats(a, out),
        Command::Cascade(a) => cmd_cascade(a, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn main_from<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let stdout = io::stdout();
    match execute(&cli, &mut stdout.lock()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
