//! Threshold propagation on hypergraphs.
//!
//! A hyperedge fires once the fraction of its active members reaches `p`;
//! firing activates every member. [`simulate_threshold`] runs this to the
//! fixpoint in synchronous rounds. [`SpreadEvaluator`] computes the cheap
//! two-layer estimate used as optimizer fitness.

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

/// Outcome of a full threshold cascade.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeResult {
    /// All active nodes at the fixpoint, ascending.
    pub activated_nodes: Vec<usize>,
    /// Hyperedges that fired, ascending.
    pub activated_edges: Vec<usize>,
    /// Newly activated nodes per round, each ascending. `rounds[0]` holds the
    /// seeds; empty when no round was recorded.
    pub rounds: Vec<Vec<usize>>,
}

impl CascadeResult {
    pub fn spread(&self) -> usize {
        self.activated_nodes.len()
    }
}

/// The firing rule: `active / size >= p`.
#[inline]
pub fn reaches_threshold(active: usize, size: usize, p: f64) -> bool {
    active as f64 / size as f64 >= p
}

pub(crate) fn check_threshold(p: f64) -> Result<()> {
    if p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(Error::Threshold(p))
    }
}

fn check_seeds(h: &Hypergraph, seeds: &[usize]) -> Result<()> {
    let n = h.node_count();
    match seeds.iter().find(|&&s| s >= n) {
        Some(&node) => Err(Error::NodeOutOfRange { node, n }),
        None => Ok(()),
    }
}

/// Runs the threshold model from `seeds` until no hyperedge can fire.
pub fn simulate_threshold(h: &Hypergraph, seeds: &[usize], p: f64) -> Result<CascadeResult> {
    check_threshold(p)?;
    check_seeds(h, seeds)?;
    Ok(run_cascade(h, seeds, p, true))
}

/// Size of the cascade fixpoint, without keeping the round trace.
pub fn exact_spread(h: &Hypergraph, seeds: &[usize], p: f64) -> Result<usize> {
    check_threshold(p)?;
    check_seeds(h, seeds)?;
    Ok(run_cascade(h, seeds, p, false).activated_nodes.len())
}

fn run_cascade(h: &Hypergraph, seeds: &[usize], p: f64, keep_trace: bool) -> CascadeResult {
    let n = h.node_count();
    let m = h.edge_count();
    let mut active = vec![false; n];
    let mut fired = vec![false; m];
    let mut queued = vec![false; m];
    let mut hits = vec![0usize; m];

    let mut frontier: Vec<usize> = Vec::with_capacity(seeds.len());
    for &s in seeds {
        if !active[s] {
            active[s] = true;
            frontier.push(s);
        }
    }
    frontier.sort_unstable();
    let mut activated_nodes = frontier.clone();
    let mut activated_edges = Vec::new();
    let mut rounds = Vec::new();
    if keep_trace && !frontier.is_empty() {
        rounds.push(frontier.clone());
    }

    let mut candidates = Vec::new();
    let mut fresh = Vec::new();
    while !frontier.is_empty() {
        // only hyperedges touched by last round's activations can change status
        for &v in &frontier {
            for &e in h.incident(v) {
                hits[e] += 1;
                if !fired[e] && !queued[e] {
                    queued[e] = true;
                    candidates.push(e);
                }
            }
        }
        fresh.clear();
        for &e in &candidates {
            queued[e] = false;
            let members = h.edge(e);
            if reaches_threshold(hits[e], members.len(), p) {
                fired[e] = true;
                activated_edges.push(e);
                for &u in members {
                    if !active[u] {
                        active[u] = true;
                        fresh.push(u);
                    }
                }
            }
        }
        candidates.clear();
        fresh.sort_unstable();
        activated_nodes.extend_from_slice(&fresh);
        if keep_trace && !fresh.is_empty() {
            rounds.push(fresh.clone());
        }
        std::mem::swap(&mut frontier, &mut fresh);
    }

    activated_nodes.sort_unstable();
    activated_edges.sort_unstable();
    CascadeResult {
        activated_nodes,
        activated_edges,
        rounds,
    }
}

/// Which active set the second layer is tested against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SecondLayer {
    /// Seeds plus first-layer nodes. Equals the exact cascade after two rounds.
    #[default]
    Cumulative,
    /// First-layer nodes only.
    FirstLayerOnly,
}

/// Two-layer spread estimate `S ∪ σ1(S) ∪ σ2(S)` with reusable scratch space.
///
/// Only hyperedges incident to active nodes are inspected, so one evaluation
/// costs the summed size of those hyperedges rather than `O(m)`.
#[derive(Debug, Clone)]
pub struct SpreadEvaluator<'h> {
    h: &'h Hypergraph,
    p: f64,
    layer: SecondLayer,
    epoch: u32,
    // epoch stamps
    in_first: Vec<u32>,
    in_spread: Vec<u32>,
    hits: Vec<u32>,
    touched: Vec<usize>,
    first: Vec<usize>,
    spread: Vec<usize>,
    scratch: Vec<usize>,
}

impl<'h> SpreadEvaluator<'h> {
    pub fn new(h: &'h Hypergraph, p: f64) -> Result<Self> {
        Self::with_layer(h, p, SecondLayer::default())
    }

    pub fn with_layer(h: &'h Hypergraph, p: f64, layer: SecondLayer) -> Result<Self> {
        check_threshold(p)?;
        let n = h.node_count();
        Ok(SpreadEvaluator {
            h,
            p,
            layer,
            epoch: 0,
            in_first: vec![0; n],
            in_spread: vec![0; n],
            hits: vec![0; h.edge_count()],
            touched: Vec::new(),
            first: Vec::new(),
            spread: Vec::new(),
            scratch: Vec::new(),
        })
    }

    pub fn hypergraph(&self) -> &'h Hypergraph {
        self.h
    }

    pub fn threshold(&self) -> f64 {
        self.p
    }

    fn next_epoch(&mut self) -> u32 {
        if self.epoch == u32::MAX {
            self.in_first.fill(0);
            self.in_spread.fill(0);
            self.epoch = 0;
        }
        self.epoch += 1;
        self.epoch
    }

    /// Fitness `f(S) = |S ∪ σ1(S) ∪ σ2(S)|`. Seed ids must be `< n`.
    pub fn fitness(&mut self, seeds: &[usize]) -> usize {
        self.evaluate(seeds);
        self.spread.len()
    }

    /// The estimated spread set, ascending.
    pub fn spread(&mut self, seeds: &[usize]) -> Vec<usize> {
        self.evaluate(seeds);
        let mut out = self.spread.clone();
        out.sort_unstable();
        out
    }

    fn evaluate(&mut self, seeds: &[usize]) {
        let epoch = self.next_epoch();
        self.spread.clear();
        self.first.clear();
        for &s in seeds {
            if self.in_spread[s] != epoch {
                self.in_spread[s] = epoch;
                self.spread.push(s);
            }
        }

        let mut active = std::mem::take(&mut self.scratch);
        active.clear();
        active.extend_from_slice(&self.spread);
        self.fire(&active, epoch, true);

        active.clear();
        match self.layer {
            // spread now holds S ∪ σ1(S)
            SecondLayer::Cumulative => active.extend_from_slice(&self.spread),
            SecondLayer::FirstLayerOnly => active.extend_from_slice(&self.first),
        }
        self.fire(&active, epoch, false);
        self.scratch = active;
    }

    /// Counts `active` members per incident hyperedge and activates the
    /// members of every hyperedge meeting the threshold.
    fn fire(&mut self, active: &[usize], epoch: u32, first_layer: bool) {
        let h = self.h;
        for &v in active {
            for &e in h.incident(v) {
                if self.hits[e] == 0 {
                    self.touched.push(e);
                }
                self.hits[e] += 1;
            }
        }
        for i in 0..self.touched.len() {
            let e = self.touched[i];
            let members = h.edge(e);
            if reaches_threshold(self.hits[e] as usize, members.len(), self.p) {
                for &u in members {
                    if first_layer && self.in_first[u] != epoch {
                        self.in_first[u] = epoch;
                        self.first.push(u);
                    }
                    if self.in_spread[u] != epoch {
                        self.in_spread[u] = epoch;
                        self.spread.push(u);
                    }
                }
            }
            self.hits[e] = 0;
        }
        self.touched.clear();
    }
}

/// Two-layer spread set for `seeds`, ascending.
pub fn two_layer_spread(h: &Hypergraph, seeds: &[usize], p: f64) -> Result<Vec<usize>> {
    check_seeds(h, seeds)?;
    Ok(SpreadEvaluator::new(h, p)?.spread(seeds))
}

/// Two-layer fitness `|S ∪ σ1(S) ∪ σ2(S)|`.
pub fn fitness(h: &Hypergraph, seeds: &[usize], p: f64) -> Result<usize> {
    check_seeds(h, seeds)?;
    Ok(SpreadEvaluator::new(h, p)?.fitness(seeds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::{chain4, h0, node};

    fn ids(h: &Hypergraph, orig: &[u64]) -> Vec<usize> {
        orig.iter().map(|&o| node(h, o)).collect()
    }

    #[test]
    fn h0_cascade_trace() {
        let h = h0();
        let r = simulate_threshold(&h, &ids(&h, &[1, 2]), 0.5).unwrap();
        assert_eq!(h.to_original(&r.activated_nodes), vec![1, 2, 3, 4]);
        assert_eq!(r.activated_edges, vec![0, 1]);
        let trace: Vec<Vec<u64>> = r.rounds.iter().map(|x| h.to_original(x)).collect();
        assert_eq!(trace, vec![vec![1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn chain_cascade_runs_to_the_end() {
        let h = chain4();
        let r = simulate_threshold(&h, &ids(&h, &[1]), 0.5).unwrap();
        assert_eq!(h.to_original(&r.activated_nodes), vec![1, 2, 3, 4, 5]);
        assert_eq!(r.rounds.len(), 5);
        assert_eq!(exact_spread(&h, &ids(&h, &[1]), 0.5).unwrap(), 5);
    }

    #[test]
    fn cascade_endpoints() {
        let h = h0();
        let r = simulate_threshold(&h, &[], 0.3).unwrap();
        assert!(r.activated_nodes.is_empty() && r.rounds.is_empty());
        let all: Vec<usize> = (0..6).collect();
        let r = simulate_threshold(&h, &all, 1.0).unwrap();
        assert_eq!(r.activated_nodes, all);
        assert_eq!(r.activated_edges, vec![0, 1, 2]);
        assert_eq!(r.rounds.len(), 1);
    }

    #[test]
    fn cascade_rejects_bad_input() {
        let h = h0();
        assert!(matches!(simulate_threshold(&h, &[0], 0.0), Err(Error::Threshold(_))));
        assert!(matches!(simulate_threshold(&h, &[0], 1.5), Err(Error::Threshold(_))));
        assert!(matches!(
            simulate_threshold(&h, &[6], 0.5),
            Err(Error::NodeOutOfRange { node: 6, .. })
        ));
        assert!(fitness(&h, &[0], f64::NAN).is_err());
        assert!(two_layer_spread(&h, &[42], 0.5).is_err());
    }

    #[test]
    fn two_layer_examples() {
        let h = h0();
        let s = two_layer_spread(&h, &ids(&h, &[1, 2]), 0.5).unwrap();
        assert_eq!(h.to_original(&s), vec![1, 2, 3, 4]);
        assert_eq!(fitness(&h, &ids(&h, &[1, 2]), 0.5).unwrap(), 4);
        assert_eq!(fitness(&h, &ids(&h, &[5, 6]), 0.5).unwrap(), 4);

        let c = chain4();
        let s = two_layer_spread(&c, &ids(&c, &[1]), 0.5).unwrap();
        assert_eq!(c.to_original(&s), vec![1, 2, 3]);
        assert_eq!(fitness(&c, &ids(&c, &[1]), 0.5).unwrap(), 3);

        assert!(two_layer_spread(&h, &[], 0.5).unwrap().is_empty());
        assert_eq!(fitness(&h, &(0..6).collect::<Vec<_>>(), 0.9).unwrap(), 6);
    }

    #[test]
    fn single_seeds_on_h0() {
        let h = h0();
        // {1}: 1/3 of e1 misses the threshold
        assert_eq!(fitness(&h, &ids(&h, &[1]), 0.5).unwrap(), 1);
        // {3}: e2 fires, then only e2 again
        assert_eq!(fitness(&h, &ids(&h, &[3]), 0.5).unwrap(), 2);
    }

    #[test]
    fn second_layer_readings_differ_when_a_seed_stays_outside_layer_one() {
        // seed 1 sits alone in {1,3,4,5}; seed 2 fires {2,3}
        let h = Hypergraph::from_hyperedges([vec![2, 3], vec![1, 3, 4, 5]]).unwrap();
        let seeds = ids(&h, &[1, 2]);
        let mut cumulative = SpreadEvaluator::with_layer(&h, 0.5, SecondLayer::Cumulative).unwrap();
        let mut literal = SpreadEvaluator::with_layer(&h, 0.5, SecondLayer::FirstLayerOnly).unwrap();
        assert_eq!(h.to_original(&cumulative.spread(&seeds)), vec![1, 2, 3, 4, 5]);
        assert_eq!(h.to_original(&literal.spread(&seeds)), vec![1, 2, 3]);
        assert_eq!(exact_spread(&h, &seeds, 0.5).unwrap(), 5);
    }

    #[test]
    fn evaluator_reuse_is_stateless() {
        let h = h0();
        let mut ev = SpreadEvaluator::new(&h, 0.5).unwrap();
        let a = ev.fitness(&ids(&h, &[1, 2]));
        let _ = ev.fitness(&ids(&h, &[4]));
        let _ = ev.fitness(&[0, 0, 0]);
        assert_eq!(ev.fitness(&ids(&h, &[1, 2])), a);
        ev.epoch = u32::MAX - 1;
        for _ in 0..3 {
            assert_eq!(ev.fitness(&ids(&h, &[1, 2])), a);
        }
    }

    #[test]
    fn one_more_round_changes_nothing() {
        let h = chain4();
        let r = simulate_threshold(&h, &[1, 3], 0.5).unwrap();
        let mut active = vec![false; h.node_count()];
        for &v in &r.activated_nodes {
            active[v] = true;
        }
        for members in h.edges() {
            let k = members.iter().filter(|&&v| active[v]).count();
            if reaches_threshold(k, members.len(), 0.5) {
                assert!(members.iter().all(|&v| active[v]));
            }
        }
    }
}
