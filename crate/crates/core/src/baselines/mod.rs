//! Comparison methods: a genetic algorithm and six node-ranking heuristics.

mod centrality;
mod ga;

use std::cmp::Ordering;

use rand::Rng;
use serde::Serialize;

use crate::cascade::{exact_spread, fitness};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;

pub use centrality::{collective_influence, pagerank_scores, select_hci, select_pagerank, PageRankConfig};
pub use ga::{run_ga, GaConfig};

/// A seed set produced by one method, with its quality measured both ways.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeedSelection {
    pub method: String,
    /// Compact node ids, ascending.
    pub seeds: Vec<usize>,
    pub exact_spread: usize,
    pub approx_fitness: usize,
}

impl SeedSelection {
    pub fn evaluate(h: &Hypergraph, method: &str, mut seeds: Vec<usize>, p: f64) -> Result<Self> {
        seeds.sort_unstable();
        Ok(SeedSelection {
            method: method.to_string(),
            exact_spread: exact_spread(h, &seeds, p)?,
            approx_fitness: fitness(h, &seeds, p)?,
            seeds,
        })
    }
}

pub(crate) fn check_k(h: &Hypergraph, k: usize) -> Result<()> {
    if k == 0 || k > h.node_count() {
        Err(Error::SeedSetSize {
            k,
            n: h.node_count(),
        })
    } else {
        Ok(())
    }
}

/// Indices of the `k` largest scores; ties go to the smaller index.
pub fn top_k_by_score<T: PartialOrd>(scores: &[T], k: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| {
        scores[b]
            .partial_cmp(&scores[a])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(&b))
    });
    order.truncate(k);
    order
}

/// High hyperdegree: the `k` nodes in the most hyperedges.
pub fn select_hhd(h: &Hypergraph, k: usize) -> Result<Vec<usize>> {
    check_k(h, k)?;
    Ok(top_k_by_score(&h.hyperdegrees(), k))
}

/// Neighbor priority: the `k` nodes with the most distinct neighbors.
pub fn select_np(h: &Hypergraph, k: usize) -> Result<Vec<usize>> {
    check_k(h, k)?;
    Ok(top_k_by_score(&h.degrees(), k))
}

/// `k` distinct nodes drawn uniformly.
pub fn select_random<R: Rng + ?Sized>(h: &Hypergraph, k: usize, rng: &mut R) -> Result<Vec<usize>> {
    check_k(h, k)?;
    Ok(rand::seq::index::sample(rng, h.node_count(), k).into_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::{h0, node};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn orig(h: &Hypergraph, mut v: Vec<usize>) -> Vec<u64> {
        v.sort_unstable();
        h.to_original(&v)
    }

    #[test]
    fn hhd_and_np_on_h0() {
        let h = h0();
        assert_eq!(orig(&h, select_hhd(&h, 2).unwrap()), vec![3, 4]);
        assert_eq!(orig(&h, select_np(&h, 2).unwrap()), vec![3, 4]);
        assert_eq!(select_hhd(&h, 6).unwrap().len(), 6);
        assert_eq!(select_hhd(&h, 2).unwrap(), select_hhd(&h, 2).unwrap());
        assert!(select_np(&h, 7).is_err());
        assert!(select_hhd(&h, 0).is_err());
    }

    #[test]
    fn ties_resolve_to_smallest_ids() {
        // a 4-cycle of pairs: every degree is 2
        let h = Hypergraph::from_hyperedges([vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]).unwrap();
        assert_eq!(select_np(&h, 2).unwrap(), vec![0, 1]);
        assert_eq!(select_hhd(&h, 3).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn random_is_uniform_on_h0() {
        let h = h0();
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let draws = 10_000;
        let mut counts = [0usize; 6];
        for _ in 0..draws {
            counts[select_random(&h, 1, &mut rng).unwrap()[0]] += 1;
        }
        let q = 1.0 / 6.0;
        let sigma = (draws as f64 * q * (1.0 - q)).sqrt();
        for c in counts {
            assert!((c as f64 - draws as f64 * q).abs() < 5.0 * sigma, "{counts:?}");
        }
        let all = select_random(&h, 6, &mut rng).unwrap();
        assert_eq!(orig(&h, all), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn random_is_reproducible() {
        let h = h0();
        let a = select_random(&h, 3, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        let b = select_random(&h, 3, &mut ChaCha8Rng::seed_from_u64(5)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn selection_reports_both_measures() {
        let h = h0();
        let s = SeedSelection::evaluate(&h, "hhd", vec![node(&h, 4), node(&h, 3)], 0.5).unwrap();
        assert_eq!(s.seeds, vec![2, 3]);
        // {3,4}: e2 fires and nothing else reaches one half
        assert_eq!((s.exact_spread, s.approx_fitness), (2, 2));
    }

    #[test]
    fn top_k_is_scale_invariant() {
        let scores = [3.0, 9.5, 9.5, 0.1, 7.0];
        let scaled: Vec<f64> = scores.iter().map(|s| s * 1e-3).collect();
        assert_eq!(top_k_by_score(&scores, 3), vec![1, 2, 4]);
        assert_eq!(top_k_by_score(&scaled, 3), top_k_by_score(&scores, 3));
    }
}
