//! Topological summary statistics.
//!
//! Clustering, path lengths, diameter and density are measured on the clique
//! expansion (an ordinary graph linking every pair of co-members).

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::Hypergraph;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsReport {
    pub n: usize,
    pub m: usize,
    pub avg_degree: f64,
    pub avg_hyperdegree: f64,
    pub avg_edge_size: f64,
    pub clustering: f64,
    pub avg_path: f64,
    pub diameter: usize,
    pub density: f64,
}

impl StatsReport {
    pub const CSV_HEADER: &'static str =
        "n,m,avg_deg,avg_hyperdeg,avg_edge_size,clustering,avg_path,diameter,density";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{:.3},{:.3},{:.3},{:.3},{:.3},{},{:.3}",
            self.n,
            self.m,
            self.avg_degree,
            self.avg_hyperdegree,
            self.avg_edge_size,
            self.clustering,
            self.avg_path,
            self.diameter,
            self.density
        )
    }
}

pub fn summary_stats(h: &Hypergraph) -> Result<StatsReport> {
    let n = h.node_count();
    if n < 2 {
        return Err(Error::TooFewNodes { needed: 2, found: n });
    }
    let (_, components) = h.components();
    if components != 1 {
        return Err(Error::Disconnected { components });
    }
    let m = h.edge_count();

    let degree_sum: usize = (0..n).map(|v| h.nbrs(v).len()).sum();
    let incidence_sum: usize = h.edges().map(<[usize]>::len).sum();
    let (path_total, diameter) = all_pairs_bfs(h);
    let pairs = n as f64 * (n as f64 - 1.0);

    Ok(StatsReport {
        n,
        m,
        avg_degree: degree_sum as f64 / n as f64,
        avg_hyperdegree: incidence_sum as f64 / n as f64,
        avg_edge_size: incidence_sum as f64 / m as f64,
        clustering: mean_local_clustering(h),
        avg_path: path_total as f64 / pairs,
        diameter,
        density: degree_sum as f64 / pairs,
    })
}

/// Mean over nodes of the local clustering coefficient; nodes with fewer
/// than two neighbors contribute 0.
fn mean_local_clustering(h: &Hypergraph) -> f64 {
    let n = h.node_count();
    let mut mark = vec![usize::MAX; n];
    let mut sum = 0.0;
    for v in 0..n {
        let nb = h.nbrs(v);
        let d = nb.len();
        if d < 2 {
            continue;
        }
        for &u in nb {
            mark[u] = v;
        }
        let mut links = 0usize;
        for &u in nb {
            links += h.nbrs(u).iter().filter(|&&w| mark[w] == v).count();
        }
        // every link among neighbors was counted from both ends
        sum += links as f64 / (d * (d - 1)) as f64;
    }
    sum / n as f64
}

/// Sum of distances over ordered pairs and the eccentricity maximum.
fn all_pairs_bfs(h: &Hypergraph) -> (u64, usize) {
    let n = h.node_count();
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::with_capacity(n);
    let mut total = 0u64;
    let mut diameter = 0;
    for s in 0..n {
        dist.fill(usize::MAX);
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v];
            total += dv as u64;
            diameter = diameter.max(dv);
            for &u in h.nbrs(v) {
                if dist[u] == usize::MAX {
                    dist[u] = dv + 1;
                    queue.push_back(u);
                }
            }
        }
    }
    (total, diameter)
}
