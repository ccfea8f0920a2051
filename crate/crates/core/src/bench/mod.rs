//! Multi-run experiments over every (algorithm, k) cell, with aggregation,
//! significance marks and CSV output.

pub mod cli;
mod report;
pub mod wilcoxon;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::baselines::{
    run_ga, select_hci, select_hhd, select_np, select_pagerank, select_random, GaConfig,
    PageRankConfig, SeedSelection,
};
use crate::error::{Error, Result};
use crate::generators::GeneratorSpec;
use crate::hypergraph::{parse_hyperedge_file, Hypergraph};
use crate::rng::{self, tag};
use crate::swarm::{run_optimizer, OptimizerConfig, Variant};

pub use report::{
    write_report_csv, CellSummary, ExperimentReport, RankSummary, RunRecord, RUNS_HEADER,
    SUMMARY_HEADER,
};
pub use wilcoxon::{wilcoxon_rank_sum, Mark, RankSumTest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Hdpso,
    Pso,
    PsoInit,
    Ga,
    Hhd,
    Random,
    Np,
    PageRank,
    Hci1,
    Hci2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::Hdpso,
        Algorithm::Pso,
        Algorithm::PsoInit,
        Algorithm::Ga,
        Algorithm::Hhd,
        Algorithm::Random,
        Algorithm::Np,
        Algorithm::PageRank,
        Algorithm::Hci1,
        Algorithm::Hci2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Hdpso => "hdpso",
            Algorithm::Pso => "pso",
            Algorithm::PsoInit => "pso-init",
            Algorithm::Ga => "ga",
            Algorithm::Hhd => "hhd",
            Algorithm::Random => "random",
            Algorithm::Np => "np",
            Algorithm::PageRank => "pagerank",
            Algorithm::Hci1 => "hci1",
            Algorithm::Hci2 => "hci2",
        }
    }

    /// Selectors whose output does not depend on the run seed.
    pub fn is_deterministic(self) -> bool {
        matches!(
            self,
            Algorithm::Hhd | Algorithm::Np | Algorithm::PageRank | Algorithm::Hci1 | Algorithm::Hci2
        )
    }

    fn variant(self) -> Option<Variant> {
        match self {
            Algorithm::Hdpso => Some(Variant::Hdpso),
            Algorithm::Pso => Some(Variant::Pso),
            Algorithm::PsoInit => Some(Variant::PsoInit),
            _ => None,
        }
    }

    /// Stable per-algorithm stream index, independent of list order.
    fn stream_id(self) -> u64 {
        Algorithm::ALL.iter().position(|&a| a == self).unwrap() as u64
    }

    /// Parses a comma-separated list such as `hdpso,ga,hhd`.
    pub fn parse_list(s: &str) -> Result<Vec<Algorithm>> {
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let key = match lower.as_str() {
            "pso_init" | "psoinit" => "pso-init",
            "pr" => "pagerank",
            other => other,
        };
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    File(PathBuf),
    Generated(GeneratorSpec),
}

impl GraphSource {
    /// Loads or generates the graph and keeps its largest component. Returns
    /// the graph id used in report rows alongside it.
    pub fn load(&self) -> Result<(String, Hypergraph)> {
        match self {
            GraphSource::File(path) => {
                let h = parse_hyperedge_file(path)?;
                let id = path
                    .file_stem()
                    .map(|s| s.to_string_lossy().replace(',', "_"))
                    .unwrap_or_else(|| path.display().to_string());
                Ok((id, h.largest_connected_component()))
            }
            GraphSource::Generated(spec) => Ok((spec.label(), spec.generate()?.largest_connected_component())),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentPlan {
    pub graph: GraphSource,
    pub algorithms: Vec<Algorithm>,
    pub seed_sizes: Vec<usize>,
    pub p: f64,
    pub runs: usize,
    pub rng_master_seed: u64,
    /// Swarm and GA budget plus swarm coefficients. `k`, `p`, `variant` and
    /// the seed are filled in per cell.
    pub optimizer: OptimizerConfig,
    pub ga: GaConfig,
    pub pagerank: PageRankConfig,
    pub reference: Algorithm,
    pub alpha: f64,
    /// Record wall-clock time per run. Off by default so that reports are
    /// byte-identical across repeated runs.
    pub timing: bool,
    pub parallel: bool,
}

impl ExperimentPlan {
    pub fn new(graph: GraphSource, algorithms: Vec<Algorithm>, seed_sizes: Vec<usize>) -> Self {
        ExperimentPlan {
            graph,
            algorithms,
            seed_sizes,
            p: 0.5,
            runs: 30,
            rng_master_seed: 0,
            optimizer: OptimizerConfig::default(),
            ga: GaConfig::default(),
            pagerank: PageRankConfig::default(),
            reference: Algorithm::Hdpso,
            alpha: 0.05,
            timing: false,
            parallel: true,
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if self.runs == 0 {
            return Err(Error::Config("runs must be at least 1".into()));
        }
        crate::cascade::check_threshold(self.p)?;
        if self.algorithms.is_empty() {
            return Err(Error::Config("no algorithms selected".into()));
        }
        for (i, a) in self.algorithms.iter().enumerate() {
            if self.algorithms[..i].contains(a) {
                return Err(Error::Config(format!("algorithm {a} listed twice")));
            }
        }
        if self.seed_sizes.is_empty() {
            return Err(Error::Config("no seed-set sizes given".into()));
        }
        if let Some(&k) = self.seed_sizes.iter().find(|&&k| k == 0 || k > n) {
            return Err(Error::SeedSetSize { k, n });
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha must lie in (0, 1), got {}", self.alpha)));
        }
        Ok(())
    }

    fn cell_seed(&self, algorithm: Algorithm, k: usize, run: usize) -> u64 {
        rng::derive_seed(
            self.rng_master_seed,
            tag::BENCH,
            algorithm.stream_id(),
            ((k as u64) << 32) | run as u64,
        )
    }
}

/// Runs one algorithm once and scores its seed set.
pub fn run_algorithm(
    h: &Hypergraph,
    plan: &ExperimentPlan,
    algorithm: Algorithm,
    k: usize,
    seed: u64,
) -> Result<SeedSelection> {
    let mut cfg = plan.optimizer.clone();
    cfg.k = k;
    cfg.p = plan.p;
    cfg.rng_master_seed = seed;
    let nodes = match algorithm {
        Algorithm::Hdpso | Algorithm::Pso | Algorithm::PsoInit => {
            cfg.variant = algorithm.variant().unwrap();
            run_optimizer(h, &cfg)?.nodes
        }
        Algorithm::Ga => run_ga(h, &cfg, &plan.ga)?.nodes,
        Algorithm::Hhd => select_hhd(h, k)?,
        Algorithm::Np => select_np(h, k)?,
        Algorithm::Random => select_random(h, k, &mut rng::stream(seed, tag::BENCH, 0, 0))?,
        Algorithm::PageRank => select_pagerank(h, k, &plan.pagerank)?,
        Algorithm::Hci1 => select_hci(h, k, 1)?,
        Algorithm::Hci2 => select_hci(h, k, 2)?,
    };
    SeedSelection::evaluate(h, algorithm.name(), nodes, plan.p)
}

/// Executes every (algorithm, k, run) cell of the plan on an already loaded
/// graph. Rows come back ordered by algorithm (plan order), k, then run.
pub fn run_experiment_on(h: &Hypergraph, graph_id: &str, plan: &ExperimentPlan) -> Result<ExperimentReport> {
    plan.validate(h.node_count())?;
    let cells: Vec<(Algorithm, usize, usize)> = plan
        .algorithms
        .iter()
        .flat_map(|&a| {
            plan.seed_sizes
                .iter()
                .flat_map(move |&k| (0..plan.runs).map(move |r| (a, k, r)))
        })
        .collect();

    let execute = |&(algorithm, k, run): &(Algorithm, usize, usize)| -> Result<RunRecord> {
        let start = Instant::now();
        let sel = run_algorithm(h, plan, algorithm, k, plan.cell_seed(algorithm, k, run))?;
        let runtime_ms = if plan.timing {
            start.elapsed().as_secs_f64() * 1e3
        } else {
            0.0
        };
        Ok(RunRecord {
            algorithm,
            graph: graph_id.to_string(),
            k,
            p: plan.p,
            run,
            exact_spread: sel.exact_spread,
            approx_fitness: sel.approx_fitness,
            runtime_ms,
        })
    };
    // timed runs go one at a time so they do not compete for cores
    let rows: Vec<RunRecord> = if plan.parallel && !plan.timing {
        cells.par_iter().map(execute).collect::<Result<_>>()?
    } else {
        cells.iter().map(execute).collect::<Result<_>>()?
    };
    ExperimentReport::from_rows(rows, plan.reference, plan.alpha)
}

/// Loads the plan's graph (largest component only) and runs every cell.
pub fn run_experiment(plan: &ExperimentPlan) -> Result<ExperimentReport> {
    let (id, h) = plan.graph.load()?;
    run_experiment_on(&h, &id, plan)
}
