use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use super::wilcoxon::{wilcoxon_rank_sum, Mark};
use super::Algorithm;
use crate::error::{Error, Result};

pub const RUNS_HEADER: &str = "algorithm,graph,k,p,run,exact_spread,approx_fitness,runtime_ms";
pub const SUMMARY_HEADER: &str = "algorithm,graph,k,mean,std,mark,mean_rank";

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub algorithm: Algorithm,
    pub graph: String,
    pub k: usize,
    pub p: f64,
    pub run: usize,
    pub exact_spread: usize,
    pub approx_fitness: usize,
    pub runtime_ms: f64,
}

/// Aggregate of all runs of one algorithm in one (graph, k) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub algorithm: Algorithm,
    pub graph: String,
    pub k: usize,
    pub runs: usize,
    pub mean: f64,
    /// Sample standard deviation; zero for a single run.
    pub std: f64,
    pub best: usize,
    /// Reference versus this algorithm. `None` for the reference itself, when
    /// the reference is absent, or when either side has fewer than two runs.
    pub mark: Option<Mark>,
    pub mean_rank: f64,
    pub best_rank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankSummary {
    pub algorithm: Algorithm,
    pub avg_mean_rank: f64,
    pub avg_best_rank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub reference: Algorithm,
    pub alpha: f64,
    pub rows: Vec<RunRecord>,
    pub cells: Vec<CellSummary>,
    pub ranks: Vec<RankSummary>,
}

/// Rank of each value when sorted descending; ties share the average rank.
fn descending_ranks(values: &[f64]) -> Vec<f64> {
    values
        .iter()
        .map(|&v| {
            let above = values.iter().filter(|&&w| w > v).count();
            let tied = values.iter().filter(|&&w| w == v).count();
            above as f64 + (tied as f64 + 1.0) / 2.0
        })
        .collect()
}

impl ExperimentReport {
    /// Aggregates raw rows. Cells keep the order in which they first appear.
    pub fn from_rows(rows: Vec<RunRecord>, reference: Algorithm, alpha: f64) -> Result<Self> {
        let mut keys: Vec<(Algorithm, String, usize)> = Vec::new();
        let mut samples: Vec<Vec<f64>> = Vec::new();
        for r in &rows {
            let key = (r.algorithm, r.graph.clone(), r.k);
            match keys.iter().position(|x| *x == key) {
                Some(i) => samples[i].push(r.exact_spread as f64),
                None => {
                    keys.push(key);
                    samples.push(vec![r.exact_spread as f64]);
                }
            }
        }

        let mut cells: Vec<CellSummary> = keys
            .iter()
            .zip(&samples)
            .map(|((algorithm, graph, k), xs)| {
                let n = xs.len() as f64;
                let mean = xs.iter().sum::<f64>() / n;
                let std = if xs.len() > 1 {
                    (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
                } else {
                    0.0
                };
                CellSummary {
                    algorithm: *algorithm,
                    graph: graph.clone(),
                    k: *k,
                    runs: xs.len(),
                    mean,
                    std,
                    best: xs.iter().fold(0.0f64, |a, &b| a.max(b)) as usize,
                    mark: None,
                    mean_rank: 0.0,
                    best_rank: 0.0,
                }
            })
            .collect();

        for i in 0..cells.len() {
            let (graph, k) = (&keys[i].1, keys[i].2);
            let group: Vec<usize> = (0..cells.len())
                .filter(|&j| keys[j].1 == *graph && keys[j].2 == k)
                .collect();
            let means: Vec<f64> = group.iter().map(|&j| cells[j].mean).collect();
            let bests: Vec<f64> = group.iter().map(|&j| cells[j].best as f64).collect();
            let at = group.iter().position(|&j| j == i).unwrap();
            cells[i].mean_rank = descending_ranks(&means)[at];
            cells[i].best_rank = descending_ranks(&bests)[at];

            if keys[i].0 == reference {
                continue;
            }
            let reference_cell = group.iter().find(|&&j| keys[j].0 == reference);
            if let Some(&j) = reference_cell {
                if samples[i].len() >= 2 && samples[j].len() >= 2 {
                    cells[i].mark = Some(wilcoxon_rank_sum(&samples[j], &samples[i], alpha)?.mark);
                }
            }
        }

        let mut algorithms: Vec<Algorithm> = Vec::new();
        for c in &cells {
            if !algorithms.contains(&c.algorithm) {
                algorithms.push(c.algorithm);
            }
        }
        let ranks = algorithms
            .into_iter()
            .map(|algorithm| {
                let own: Vec<&CellSummary> = cells.iter().filter(|c| c.algorithm == algorithm).collect();
                let n = own.len() as f64;
                RankSummary {
                    algorithm,
                    avg_mean_rank: own.iter().map(|c| c.mean_rank).sum::<f64>() / n,
                    avg_best_rank: own.iter().map(|c| c.best_rank).sum::<f64>() / n,
                }
            })
            .collect();

        Ok(ExperimentReport {
            reference,
            alpha,
            rows,
            cells,
            ranks,
        })
    }

    pub fn runs_csv(&self) -> String {
        let mut out = format!("{RUNS_HEADER}\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{:.3},{},{},{},{:.3}",
                r.algorithm, r.graph, r.k, r.p, r.run, r.exact_spread, r.approx_fitness, r.runtime_ms
            )
            .unwrap();
        }
        out
    }

    pub fn summary_csv(&self) -> String {
        let mut out = format!("{SUMMARY_HEADER}\n");
        for c in &self.cells {
            writeln!(
                out,
                "{},{},{},{:.3},{:.3},{},{:.3}",
                c.algorithm,
                c.graph,
                c.k,
                c.mean,
                c.std,
                c.mark.map_or("", Mark::symbol),
                c.mean_rank
            )
            .unwrap();
        }
        out
    }

    /// Plain-text overview: mean ± std per cell and the rank summary.
    pub fn display_table(&self) -> String {
        let mut out = String::new();
        for c in &self.cells {
            writeln!(
                out,
                "{:<9} {:<16} k={:<4} {:>10.3} ± {:<8.3} {}",
                c.algorithm.name(),
                c.graph,
                c.k,
                c.mean,
                c.std,
                c.mark.map_or(" ", Mark::symbol)
            )
            .unwrap();
        }
        if !self.ranks.is_empty() {
            writeln!(out, "\n{:<9} {:>14} {:>14}", "algorithm", "avg mean rank", "avg best rank").unwrap();
            for r in &self.ranks {
                writeln!(out, "{:<9} {:>14.3} {:>14.3}", r.algorithm.name(), r.avg_mean_rank, r.avg_best_rank)
                    .unwrap();
            }
        }
        out
    }
}

fn with_suffix(path: &Path, suffix: &str) -> PathBuf {
    let mut s = OsString::from(path.as_os_str());
    s.push(suffix);
    PathBuf::from(s)
}

/// Writes `<path>.runs.csv` and `<path>.summary.csv`.
pub fn write_report_csv(report: &ExperimentReport, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    for (suffix, body) in [(".runs.csv", report.runs_csv()), (".summary.csv", report.summary_csv())] {
        let target = with_suffix(path, suffix);
        std::fs::write(&target, body).map_err(|e| Error::io(target.clone(), e))?;
    }
    Ok(())
}
