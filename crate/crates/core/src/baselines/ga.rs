//! Generational genetic algorithm over `k`-subsets.
//!
//! Binary tournament selection, union crossover (the child samples `k`
//! distinct nodes from the union of both parents), per-gene reset mutation
//! and single elitism. Fitness is the same two-layer estimate the swarm uses.

use rand::Rng;
use rayon::prelude::*;

use crate::cascade::{exact_spread, SpreadEvaluator};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::{self, tag};
use crate::swarm::{OptimizationResult, OptimizerConfig};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaConfig {
    pub crossover_prob: f64,
    /// Probability that each gene is replaced by a random non-member.
    pub mutation_prob: f64,
    pub tournament_size: usize,
    pub elitism: usize,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            crossover_prob: 0.8,
            mutation_prob: 0.1,
            tournament_size: 2,
            elitism: 1,
        }
    }
}

impl GaConfig {
    fn validate(&self, population: usize) -> Result<()> {
        for (name, v) in [("crossover_prob", self.crossover_prob), ("mutation_prob", self.mutation_prob)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        if self.tournament_size == 0 {
            return Err(Error::Config("tournament size must be at least 1".into()));
        }
        if self.elitism == 0 || self.elitism > population {
            return Err(Error::Config(format!(
                "elitism must lie in [1, population = {population}], got {}",
                self.elitism
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
struct Individual {
    genes: Vec<usize>,
    fitness: usize,
}

fn tournament<'a, R: Rng + ?Sized>(pop: &'a [Individual], size: usize, rng: &mut R) -> &'a Individual {
    let mut best = &pop[rng.random_range(0..pop.len())];
    for _ in 1..size {
        let other = &pop[rng.random_range(0..pop.len())];
        if other.fitness > best.fitness {
            best = other;
        }
    }
    best
}

fn union_crossover<R: Rng + ?Sized>(a: &[usize], b: &[usize], rng: &mut R) -> Vec<usize> {
    let mut pool = a.to_vec();
    pool.extend(b.iter().copied().filter(|x| !a.contains(x)));
    rand::seq::index::sample(rng, pool.len(), a.len())
        .into_iter()
        .map(|i| pool[i])
        .collect()
}

fn mutate<R: Rng + ?Sized>(genes: &mut [usize], n: usize, prob: f64, rng: &mut R) {
    let k = genes.len();
    if k == n {
        return;
    }
    for j in 0..k {
        if rng.random::<f64>() < prob {
            genes[j] = loop {
                let v = rng.random_range(0..n);
                if !genes.contains(&v) {
                    break v;
                }
            };
        }
    }
}

/// Index of the fittest individual; the first one wins ties.
fn fittest(pop: &[Individual]) -> usize {
    let mut best = 0;
    for (i, ind) in pop.iter().enumerate() {
        if ind.fitness > pop[best].fitness {
            best = i;
        }
    }
    best
}

/// Evolves a seed set of size `cfg.k` with the population and generation
/// budget of `cfg`.
pub fn run_ga(h: &Hypergraph, cfg: &OptimizerConfig, ga: &GaConfig) -> Result<OptimizationResult> {
    cfg.validate(h.node_count())?;
    ga.validate(cfg.population)?;
    let n = h.node_count();
    let seed = cfg.rng_master_seed;

    let mut ev = SpreadEvaluator::new(h, cfg.p)?;
    let mut pop: Vec<Individual> = (0..cfg.population)
        .map(|i| {
            let mut rng = rng::stream(seed, tag::GA, 0, i as u64);
            let genes = rand::seq::index::sample(&mut rng, n, cfg.k).into_vec();
            let fitness = ev.fitness(&genes);
            Individual { genes, fitness }
        })
        .collect();
    let mut history = vec![pop[fittest(&pop)].fitness];

    for generation in 1..=cfg.max_generations as u64 {
        // elites are copied first, best to worst
        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|&a, &b| pop[b].fitness.cmp(&pop[a].fitness).then(a.cmp(&b)));
        let elites: Vec<Individual> = order[..ga.elitism].iter().map(|&i| pop[i].clone()).collect();

        let parents = &pop;
        let breed = |ev: &mut SpreadEvaluator<'_>, c: usize| {
            let mut rng = rng::stream(seed, tag::GA, generation, c as u64);
            let a = tournament(parents, ga.tournament_size, &mut rng);
            let b = tournament(parents, ga.tournament_size, &mut rng);
            let mut genes = if rng.random::<f64>() < ga.crossover_prob {
                union_crossover(&a.genes, &b.genes, &mut rng)
            } else {
                a.genes.clone()
            };
            mutate(&mut genes, n, ga.mutation_prob, &mut rng);
            let fitness = ev.fitness(&genes);
            Individual { genes, fitness }
        };
        let evaluator = || SpreadEvaluator::new(h, cfg.p).expect("threshold validated");
        let children: Vec<Individual> = if cfg.parallel {
            (ga.elitism..cfg.population)
                .into_par_iter()
                .map_init(evaluator, breed)
                .collect()
        } else {
            let mut ev = evaluator();
            (ga.elitism..cfg.population).map(|c| breed(&mut ev, c)).collect()
        };

        pop = elites;
        pop.extend(children);
        history.push(pop[fittest(&pop)].fitness);
    }

    let best = &pop[fittest(&pop)];
    let mut nodes = best.genes.clone();
    nodes.sort_unstable();
    Ok(OptimizationResult {
        seeds: h.to_original(&nodes),
        approx_fitness: best.fitness,
        exact_spread: exact_spread(h, &nodes, cfg.p)?,
        history,
        nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::fixtures::h0;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn cfg(seed: u64) -> OptimizerConfig {
        OptimizerConfig {
            k: 2,
            p: 0.5,
            max_generations: 10,
            population: 32,
            rng_master_seed: seed,
            ..Default::default()
        }
    }

    #[test]
    fn finds_h0_optimum_with_monotone_history() {
        for seed in 0..10 {
            let r = run_ga(&h0(), &cfg(seed), &GaConfig::default()).unwrap();
            assert_eq!(r.exact_spread, 4);
            assert_eq!(r.history.len(), 11);
            assert!(r.history.windows(2).all(|w| w[0] <= w[1]));
        }
    }

    #[test]
    fn reproducible_and_thread_independent() {
        let mut c = cfg(4);
        c.max_generations = 4;
        let a = run_ga(&h0(), &c, &GaConfig::default()).unwrap();
        c.parallel = false;
        let b = run_ga(&h0(), &c, &GaConfig::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn operators_preserve_distinctness() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..500 {
            let a = rand::seq::index::sample(&mut rng, 30, 5).into_vec();
            let b = rand::seq::index::sample(&mut rng, 30, 5).into_vec();
            let mut child = union_crossover(&a, &b, &mut rng);
            assert!(child.iter().all(|x| a.contains(x) || b.contains(x)));
            mutate(&mut child, 30, 0.5, &mut rng);
            let mut s = child.clone();
            s.sort_unstable();
            s.dedup();
            assert_eq!(s.len(), 5);
        }
    }

    #[test]
    fn rejects_bad_settings() {
        let mut c = cfg(0);
        c.k = 9;
        assert!(run_ga(&h0(), &c, &GaConfig::default()).is_err());
        let bad = GaConfig {
            elitism: 0,
            ..Default::default()
        };
        assert!(run_ga(&h0(), &cfg(0), &bad).is_err());
    }
}
