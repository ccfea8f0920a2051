//! Immutable hypergraph with cached incidence and neighbor indexes.
//!
//! Node ids are compacted to `0..n` in ascending order of the ids supplied at
//! construction; the original ids are kept as labels so results can be
//! reported in the caller's numbering.

mod io;
mod stats;

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub use io::{parse_hyperedge_file, parse_hyperedge_str, serialize_hyperedge_file, to_hyperedge_string};
pub use stats::{summary_stats, StatsReport};

/// A hypergraph `H = (V, E)`.
///
/// Every hyperedge holds at least two distinct members, stored sorted.
/// Identical member sets are kept as separate hyperedges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    edges: Vec<Vec<usize>>,
    node_edges: Vec<Vec<usize>>,
    neighbors: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

impl Hypergraph {
    /// Builds a hypergraph from raw member lists.
    ///
    /// Duplicate ids inside a hyperedge collapse, hyperedges left with fewer
    /// than two members are dropped, and the surviving ids are renumbered
    /// `0..n` in ascending order.
    pub fn from_hyperedges<I, E>(edge_list: I) -> Result<Self>
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = u64>,
    {
        let mut raw: Vec<Vec<u64>> = Vec::new();
        for e in edge_list {
            let mut members: Vec<u64> = e.into_iter().collect();
            members.sort_unstable();
            members.dedup();
            if members.len() >= 2 {
                raw.push(members);
            }
        }
        if raw.is_empty() {
            return Err(Error::EmptyHypergraph);
        }

        let mut labels: Vec<u64> = raw.iter().flatten().copied().collect();
        labels.sort_unstable();
        labels.dedup();

        let edges = raw
            .into_iter()
            .map(|members| {
                // members are sorted and labels ascending, so the compact ids stay sorted
                members
                    .iter()
                    .map(|id| labels.binary_search(id).expect("label present"))
                    .collect()
            })
            .collect();
        Ok(Self::from_compact(edges, labels))
    }

    /// `edges` must already be sorted, deduplicated and use ids `< labels.len()`.
    fn from_compact(edges: Vec<Vec<usize>>, labels: Vec<u64>) -> Self {
        let n = labels.len();
        let mut node_edges = vec![Vec::new(); n];
        for (e, members) in edges.iter().enumerate() {
            for &v in members {
                node_edges[v].push(e);
            }
        }

        let mut neighbors = vec![Vec::new(); n];
        let mut mark = vec![usize::MAX; n];
        for v in 0..n {
            let list: &mut Vec<usize> = &mut neighbors[v];
            mark[v] = v;
            for &e in &node_edges[v] {
                for &u in &edges[e] {
                    if mark[u] != v {
                        mark[u] = v;
                        list.push(u);
                    }
                }
            }
            list.sort_unstable();
        }

        Hypergraph {
            edges,
            node_edges,
            neighbors,
            labels,
        }
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Members of hyperedge `e`, sorted ascending.
    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    pub fn edges(&self) -> impl ExactSizeIterator<Item = &[usize]> + '_ {
        self.edges.iter().map(Vec::as_slice)
    }

    fn check(&self, v: usize) -> Result<()> {
        if v < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v,
                n: self.node_count(),
            })
        }
    }

    /// Number of distinct nodes sharing at least one hyperedge with `v`.
    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.neighbors[v].len())
    }

    /// Number of hyperedges containing `v`.
    pub fn hyperdegree(&self, v: usize) -> Result<usize> {
        self.check(v)?;
        Ok(self.node_edges[v].len())
    }

    /// Off-diagonal entry of `C Cᵀ`: the number of hyperedges holding both `u` and `v`.
    pub fn adjacency_count(&self, u: usize, v: usize) -> Result<usize> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(Error::DiagonalAdjacency(u));
        }
        // both lists are sorted by edge id
        let (a, b) = (&self.node_edges[u], &self.node_edges[v]);
        let (mut i, mut j, mut shared) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    shared += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(shared)
    }

    /// Distinct neighbors of `v` in ascending order, excluding `v`.
    pub fn neighbors(&self, v: usize) -> Result<&[usize]> {
        self.check(v)?;
        Ok(&self.neighbors[v])
    }

    /// Hyperedges incident to `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> Result<&[usize]> {
        self.check(v)?;
        Ok(&self.node_edges[v])
    }

    // Unchecked accessors for hot loops inside the crate.
    pub(crate) fn nbrs(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub(crate) fn incident(&self, v: usize) -> &[usize] {
        &self.node_edges[v]
    }

    pub(crate) fn degrees(&self) -> Vec<usize> {
        self.neighbors.iter().map(Vec::len).collect()
    }

    pub(crate) fn hyperdegrees(&self) -> Vec<usize> {
        self.node_edges.iter().map(Vec::len).collect()
    }

    /// Id the caller used for compact node `v`.
    pub fn original_id(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Compact id of an original id, if the node survived construction.
    pub fn compact_id(&self, original: u64) -> Option<usize> {
        self.labels.binary_search(&original).ok()
    }

    pub fn to_original(&self, nodes: &[usize]) -> Vec<u64> {
        nodes.iter().map(|&v| self.labels[v]).collect()
    }

    /// Component id per node in the neighbor relation, plus the component count.
    /// Components are numbered in order of their smallest node.
    pub fn components(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        let mut queue = VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &u in &self.neighbors[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = count;
                        queue.push_back(u);
                    }
                }
            }
            count += 1;
        }
        (comp, count)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 == 1
    }

    /// Sub-hypergraph induced by the largest connected component.
    ///
    /// Ties go to the component holding the smallest original id. Labels of
    /// the retained nodes are preserved.
    pub fn largest_connected_component(&self) -> Hypergraph {
        let (comp, count) = self.components();
        if count == 1 {
            return self.clone();
        }
        let mut sizes = vec![0usize; count];
        for &c in &comp {
            sizes[c] += 1;
        }
        // components are numbered by smallest member, so the first maximum wins ties
        let mut best = 0;
        for c in 1..count {
            if sizes[c] > sizes[best] {
                best = c;
            }
        }

        let mut remap = vec![usize::MAX; self.node_count()];
        let mut labels = Vec::with_capacity(sizes[best]);
        for v in 0..self.node_count() {
            if comp[v] == best {
                remap[v] = labels.len();
                labels.push(self.labels[v]);
            }
        }
        let edges = self
            .edges
            .iter()
            .filter(|members| comp[members[0]] == best)
            .map(|members| members.iter().map(|&v| remap[v]).collect())
            .collect();
        Self::from_compact(edges, labels)
    }
}
