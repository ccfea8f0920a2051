//! Centrality rankings computed on the clique expansion.

use std::collections::VecDeque;

use super::{check_k, top_k_by_score};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageRankConfig {
    pub damping: f64,
    pub max_iterations: usize,
    /// Stop once the L1 change between iterates drops below this.
    pub tolerance: f64,
    /// Weight expansion links by the number of shared hyperedges.
    pub weighted: bool,
}

impl Default for PageRankConfig {
    fn default() -> Self {
        PageRankConfig {
            damping: 0.85,
            max_iterations: 100,
            tolerance: 1e-10,
            weighted: false,
        }
    }
}

/// Neighbor lists of the expansion with link weights.
fn expansion_links(h: &Hypergraph, weighted: bool) -> Vec<Vec<(usize, f64)>> {
    (0..h.node_count())
        .map(|v| {
            h.nbrs(v)
                .iter()
                .map(|&u| {
                    let w = if weighted {
                        h.adjacency_count(u, v).expect("distinct neighbors") as f64
                    } else {
                        1.0
                    };
                    (u, w)
                })
                .collect()
        })
        .collect()
}

/// Power iteration with uniform teleportation. Scores sum to one.
pub fn pagerank_scores(h: &Hypergraph, cfg: &PageRankConfig) -> Result<Vec<f64>> {
    if !(cfg.damping > 0.0 && cfg.damping < 1.0) {
        return Err(Error::Config(format!("damping must lie in (0, 1), got {}", cfg.damping)));
    }
    if cfg.max_iterations == 0 {
        return Err(Error::Config("pagerank needs at least one iteration".into()));
    }
    let n = h.node_count();
    let links = expansion_links(h, cfg.weighted);
    let out_weight: Vec<f64> = links.iter().map(|l| l.iter().map(|x| x.1).sum()).collect();
    let teleport = (1.0 - cfg.damping) / n as f64;

    let mut x = vec![1.0 / n as f64; n];
    let mut next = vec![0.0; n];
    for _ in 0..cfg.max_iterations {
        let dangling: f64 = (0..n).filter(|&v| out_weight[v] == 0.0).map(|v| x[v]).sum();
        let base = teleport + cfg.damping * dangling / n as f64;
        for v in 0..n {
            let inflow: f64 = links[v].iter().map(|&(u, w)| x[u] * w / out_weight[u]).sum();
            next[v] = base + cfg.damping * inflow;
        }
        let change: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        std::mem::swap(&mut x, &mut next);
        if change < cfg.tolerance {
            break;
        }
    }
    Ok(x)
}

pub fn select_pagerank(h: &Hypergraph, k: usize, cfg: &PageRankConfig) -> Result<Vec<usize>> {
    check_k(h, k)?;
    Ok(top_k_by_score(&pagerank_scores(h, cfg)?, k))
}

/// Collective influence `(deg(v) - 1) · Σ (deg(u) - 1)` over nodes `u` at
/// expansion distance exactly `radius` from `v`.
pub fn collective_influence(h: &Hypergraph, radius: usize) -> Result<Vec<u64>> {
    if radius == 0 {
        return Err(Error::Config("collective influence radius must be at least 1".into()));
    }
    let n = h.node_count();
    let reduced: Vec<u64> = (0..n).map(|v| h.nbrs(v).len().saturating_sub(1) as u64).collect();
    let mut dist = vec![usize::MAX; n];
    let mut seen = Vec::new();
    let mut queue = VecDeque::new();
    let mut scores = vec![0u64; n];
    for v in 0..n {
        if reduced[v] == 0 {
            continue;
        }
        dist[v] = 0;
        seen.push(v);
        queue.push_back(v);
        let mut frontier_sum = 0u64;
        while let Some(x) = queue.pop_front() {
            let d = dist[x];
            if d == radius {
                frontier_sum += reduced[x];
                continue;
            }
            for &u in h.nbrs(x) {
                if dist[u] == usize::MAX {
                    dist[u] = d + 1;
                    seen.push(u);
                    queue.push_back(u);
                }
            }
        }
        scores[v] = reduced[v] * frontier_sum;
        for &u in &seen {
            dist[u] = usize::MAX;
        }
        seen.clear();
    }
    Ok(scores)
}

/// Top-`k` nodes by collective influence of the given order (1 or 2 in the
/// benchmark suite).
pub fn select_hci(h: &Hypergraph, k: usize, order: usize) -> Result<Vec<usize>> {
    check_k(h, k)?;
    Ok(top_k_by_score(&collective_influence(h, order)?, k))
}
