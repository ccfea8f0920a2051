use std::cmp::Ordering;

use rand::seq::index;
use rand::Rng;

use super::{OptimizerConfig, Particle};
use crate::cascade::SpreadEvaluator;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::{self, tag};

/// Top-`k` nodes by `weight[v] · ξ_v` with `ξ_v ~ U(0.5, 1.0]` drawn fresh
/// for every node; ties go to the smaller id. Returned in descending score order.
pub fn degree_biased_position<R: Rng + ?Sized>(weights: &[f64], k: usize, rng: &mut R) -> Vec<usize> {
    let scored: Vec<f64> = weights
        .iter()
        .map(|&w| {
            let xi = 1.0 - 0.5 * rng.random::<f64>();
            w * xi
        })
        .collect();
    let cmp = |a: &usize, b: &usize| -> Ordering {
        scored[*b]
            .partial_cmp(&scored[*a])
            .unwrap_or(Ordering::Equal)
            .then(a.cmp(b))
    };
    let mut order: Vec<usize> = (0..weights.len()).collect();
    if k < order.len() {
        order.select_nth_unstable_by(k, cmp);
        order.truncate(k);
    }
    order.sort_unstable_by(cmp);
    order
}

/// Degree-biased positions for a whole swarm; particle `i` draws from its own
/// stream of `master_seed`.
pub fn init_degree_biased(
    h: &Hypergraph,
    k: usize,
    population: usize,
    master_seed: u64,
) -> Result<Vec<Vec<usize>>> {
    let n = h.node_count();
    if k > n {
        return Err(Error::SeedSetSize { k, n });
    }
    let weights: Vec<f64> = h.degrees().into_iter().map(|d| d as f64).collect();
    Ok((0..population)
        .map(|i| {
            let mut rng = rng::stream(master_seed, tag::INIT, 0, i as u64);
            degree_biased_position(&weights, k, &mut rng)
        })
        .collect())
}

/// `k` distinct nodes drawn uniformly.
pub fn init_random<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    index::sample(rng, n, k).into_vec()
}

/// Bit `j` is 0 when `position[j]` also occurs in `best`, 1 otherwise.
pub fn guidance_mask(position: &[usize], best: &[usize]) -> Vec<u8> {
    position
        .iter()
        .map(|x| u8::from(!best.contains(x)))
        .collect()
}

/// `ω·V + c1r1·mask_pbest + c2r2·mask_gbest`, elementwise.
pub fn weighted_guidance(
    velocity: &[u8],
    mask_pbest: &[u8],
    mask_gbest: &[u8],
    inertia: f64,
    c1r1: f64,
    c2r2: f64,
) -> Vec<f64> {
    velocity
        .iter()
        .zip(mask_pbest)
        .zip(mask_gbest)
        .map(|((&v, &a), &b)| inertia * v as f64 + c1r1 * a as f64 + c2r2 * b as f64)
        .collect()
}

/// 1 where the guidance reaches `tau`, 0 elsewhere.
pub fn threshold_velocity(guidance: &[f64], tau: f64) -> Vec<u8> {
    guidance.iter().map(|&u| u8::from(u >= tau)).collect()
}

/// New binary velocity for `particle`. `r1` and `r2` are drawn once per call.
pub fn update_velocity<R: Rng + ?Sized>(
    particle: &Particle,
    gbest: &[usize],
    cfg: &OptimizerConfig,
    rng: &mut R,
) -> Vec<u8> {
    let r1: f64 = rng.random();
    let r2: f64 = rng.random();
    let guidance = weighted_guidance(
        &particle.velocity,
        &guidance_mask(&particle.position, &particle.pbest),
        &guidance_mask(&particle.position, gbest),
        cfg.inertia,
        cfg.c1 * r1,
        cfg.c2 * r2,
    );
    threshold_velocity(&guidance, cfg.tau)
}

/// Replaces every slot whose velocity bit is set, left to right, with a node
/// drawn uniformly from those not held by the other slots.
pub fn update_position<R: Rng + ?Sized>(position: &[usize], velocity: &[u8], n: usize, rng: &mut R) -> Vec<usize> {
    let mut out = position.to_vec();
    let k = out.len();
    let pool_size = n + 1 - k;
    for j in 0..k {
        if velocity[j] == 0 {
            continue;
        }
        let held_elsewhere =
            |out: &[usize], v: usize| out.iter().enumerate().any(|(i, &x)| i != j && x == v);
        out[j] = if pool_size * 8 >= n {
            loop {
                let v = rng.random_range(0..n);
                if !held_elsewhere(&out, v) {
                    break v;
                }
            }
        } else {
            let pool: Vec<usize> = (0..n).filter(|&v| !held_elsewhere(&out, v)).collect();
            pool[rng.random_range(0..pool.len())]
        };
    }
    out
}

/// Greedy neighbor substitution.
///
/// Each slot is explored with probability `element_prob`: the neighbors of
/// the node holding that slot on entry are tried in ascending order, and a
/// substitution is kept only if it strictly raises the fitness. Returns the
/// refined position and its fitness.
pub fn local_search<R: Rng + ?Sized>(
    position: &[usize],
    evaluator: &mut SpreadEvaluator<'_>,
    element_prob: f64,
    rng: &mut R,
) -> (Vec<usize>, usize) {
    let h = evaluator.hypergraph();
    let mut best = position.to_vec();
    let mut best_fitness = evaluator.fitness(&best);
    for i in 0..best.len() {
        if rng.random::<f64>() >= element_prob {
            continue;
        }
        let anchor = position[i];
        for &candidate in h.nbrs(anchor) {
            if best.contains(&candidate) {
                continue;
            }
            let previous = best[i];
            best[i] = candidate;
            let f = evaluator.fitness(&best);
            if f > best_fitness {
                best_fitness = f;
            } else {
                best[i] = previous;
            }
        }
    }
    (best, best_fitness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::{h0, node};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: [usize; 8] = [1, 4, 7, 9, 12, 18, 27, 43];
    const PBEST: [usize; 8] = [9, 2, 8, 91, 23, 125, 43, 7];
    const GBEST: [usize; 8] = [18, 3, 10, 21, 97, 4, 212, 7];

    #[test]
    fn worked_velocity_example() {
        let mp = guidance_mask(&X, &PBEST);
        let mg = guidance_mask(&X, &GBEST);
        assert_eq!(mp, vec![1, 1, 0, 0, 1, 1, 1, 0]);
        assert_eq!(mg, vec![1, 0, 0, 1, 1, 0, 1, 1]);
        let u = weighted_guidance(&[0; 8], &mp, &mg, 0.7, 0.6, 1.1);
        // 0.6·mp + 1.1·mg, entry by entry
        let expected = [1.7, 0.6, 0.0, 1.1, 1.7, 0.6, 1.7, 1.1];
        for (a, b) in u.iter().zip(expected) {
            assert!((a - b).abs() < 1e-12, "{u:?}");
        }
        assert_eq!(threshold_velocity(&u, 1.0), vec![1, 0, 0, 1, 1, 0, 1, 1]);
        assert_eq!(threshold_velocity(&u, 1.5), vec![1, 0, 0, 0, 1, 0, 1, 0]);
    }

    #[test]
    fn full_overlap_gives_zero_mask() {
        assert_eq!(guidance_mask(&X, &X), vec![0; 8]);
        let mut rev = X;
        rev.reverse();
        assert_eq!(guidance_mask(&X, &rev), vec![0; 8]);
    }

    #[test]
    fn velocity_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = Particle::new(X.to_vec(), 0);
        let cfg = OptimizerConfig {
            tau: 1.0,
            ..Default::default()
        };
        // both masks zero and V = 0
        assert_eq!(update_velocity(&p, &X, &cfg, &mut rng), vec![0; 8]);

        let mut moving = Particle::new(X.to_vec(), 0);
        moving.pbest = PBEST.to_vec();
        moving.velocity = vec![1; 8];
        let unreachable = OptimizerConfig {
            tau: 0.7 + 1.2 + 1.2 + 1e-9,
            ..Default::default()
        };
        for _ in 0..100 {
            assert_eq!(update_velocity(&moving, &GBEST, &unreachable, &mut rng), vec![0; 8]);
        }
    }

    #[test]
    fn position_update_keeps_distinct_ids() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        assert_eq!(update_position(&[0, 3, 5], &[0, 0, 0], 6, &mut rng), vec![0, 3, 5]);

        let all: Vec<usize> = (0..6).collect();
        let out = update_position(&all, &[1; 6], 6, &mut rng);
        let mut sorted = out.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, all);

        for n in [8, 40, 500] {
            for _ in 0..200 {
                let k = 7.min(n);
                let pos = init_random(n, k, &mut rng);
                let vel: Vec<u8> = (0..k).map(|_| rng.random_range(0..2)).collect();
                let out = update_position(&pos, &vel, n, &mut rng);
                let mut s = out.clone();
                s.sort_unstable();
                s.dedup();
                assert_eq!(s.len(), k);
                for j in 0..k {
                    if vel[j] == 0 {
                        assert_eq!(out[j], pos[j]);
                    }
                }
            }
        }
    }

    #[test]
    fn degree_biased_takes_everything_when_k_is_n() {
        let h = h0();
        for pos in init_degree_biased(&h, 6, 5, 1).unwrap() {
            let mut s = pos.clone();
            s.sort_unstable();
            assert_eq!(s, (0..6).collect::<Vec<_>>());
        }
        assert!(init_degree_biased(&h, 7, 1, 1).is_err());
    }

    #[test]
    fn dominant_hub_is_always_selected() {
        // hub 0 joins every edge: degree 20 against 1 elsewhere
        let edges: Vec<Vec<u64>> = (1..=20).map(|i| vec![0, i]).collect();
        let h = Hypergraph::from_hyperedges(edges).unwrap();
        for pos in init_degree_biased(&h, 1, 200, 4).unwrap() {
            assert_eq!(pos, vec![0]);
        }
    }

    #[test]
    fn degree_biased_is_deterministic() {
        let h = h0();
        assert_eq!(
            init_degree_biased(&h, 2, 8, 99).unwrap(),
            init_degree_biased(&h, 2, 8, 99).unwrap()
        );
    }

    #[test]
    fn local_search_on_h0_moves_to_neighbor() {
        let h = h0();
        let mut ev = SpreadEvaluator::new(&h, 0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let start = vec![node(&h, 1)];
        assert_eq!(ev.fitness(&start), 1);
        let (out, f) = local_search(&start, &mut ev, 1.0, &mut rng);
        // neighbor 2 does not help (f = 1); neighbor 3 fires {3,4} (f = 2)
        assert_eq!(h.to_original(&out), vec![3]);
        assert_eq!(f, 2);

        let (same, f0) = local_search(&start, &mut ev, 0.0, &mut rng);
        assert_eq!((same, f0), (start, 1));
    }
}
