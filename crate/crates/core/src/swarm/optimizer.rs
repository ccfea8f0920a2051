use rand::seq::index;
use rayon::prelude::*;

use super::operators::{
    init_degree_biased, init_random, local_search, update_position, update_velocity,
};
use super::{LocalSearchTargets, OptimizationResult, OptimizerConfig, Particle, SwarmState};
use crate::cascade::{exact_spread, SpreadEvaluator};
use crate::error::Result;
use crate::hypergraph::Hypergraph;
use crate::rng::{self, tag};

/// A swarm that advances one generation per [`Swarm::step`].
///
/// All randomness for particle `i` in generation `g` comes from a stream keyed
/// by `(master seed, g, i)`, so sequential and parallel runs agree bit for bit.
pub struct Swarm<'h> {
    h: &'h Hypergraph,
    cfg: OptimizerConfig,
    state: SwarmState,
    history: Vec<usize>,
}

impl<'h> Swarm<'h> {
    pub fn new(h: &'h Hypergraph, cfg: OptimizerConfig) -> Result<Self> {
        cfg.validate(h.node_count())?;
        let n = h.node_count();
        let positions = if cfg.variant.degree_biased_init() {
            init_degree_biased(h, cfg.k, cfg.population, cfg.rng_master_seed)?
        } else {
            (0..cfg.population)
                .map(|i| {
                    let mut rng = rng::stream(cfg.rng_master_seed, tag::INIT, 0, i as u64);
                    init_random(n, cfg.k, &mut rng)
                })
                .collect()
        };

        let mut ev = SpreadEvaluator::new(h, cfg.p)?;
        let particles: Vec<Particle> = positions
            .into_iter()
            .map(|pos| {
                let f = ev.fitness(&pos);
                Particle::new(pos, f)
            })
            .collect();

        let mut state = SwarmState {
            gbest: particles[0].pbest.clone(),
            gbest_fitness: particles[0].pbest_fitness,
            particles,
            generation: 0,
        };
        refresh_gbest(&mut state);
        let history = vec![state.gbest_fitness];
        Ok(Swarm {
            h,
            cfg,
            state,
            history,
        })
    }

    pub fn state(&self) -> &SwarmState {
        &self.state
    }

    pub fn config(&self) -> &OptimizerConfig {
        &self.cfg
    }

    pub fn history(&self) -> &[usize] {
        &self.history
    }

    fn local_search_mask(&self, generation: usize) -> Vec<bool> {
        let pop = self.cfg.population;
        let count = self.cfg.local_search_count();
        let mut mask = vec![false; pop];
        if count == 0 {
            return mask;
        }
        match self.cfg.local_search_targets {
            LocalSearchTargets::Random => {
                let mut rng = rng::stream(
                    self.cfg.rng_master_seed,
                    tag::LOCAL_SEARCH_TARGETS,
                    generation as u64,
                    0,
                );
                for i in index::sample(&mut rng, pop, count) {
                    mask[i] = true;
                }
            }
            LocalSearchTargets::Fittest => {
                let mut order: Vec<usize> = (0..pop).collect();
                let ps = &self.state.particles;
                order.sort_by(|&a, &b| ps[b].pbest_fitness.cmp(&ps[a].pbest_fitness).then(a.cmp(&b)));
                for &i in &order[..count] {
                    mask[i] = true;
                }
            }
        }
        mask
    }

    /// Velocity and position update for every particle, local search on the
    /// selected subset, fitness evaluation, then pbest/gbest maintenance.
    pub fn step(&mut self) {
        let generation = self.state.generation + 1;
        let targets = self.local_search_mask(generation);
        let h = self.h;
        let cfg = &self.cfg;
        let gbest = self.state.gbest.clone();

        let advance = |ev: &mut SpreadEvaluator<'_>, (i, particle): (usize, &mut Particle)| {
            let mut rng = rng::stream(cfg.rng_master_seed, tag::PARTICLE, generation as u64, i as u64);
            particle.velocity = update_velocity(particle, &gbest, cfg, &mut rng);
            let moved = update_position(&particle.position, &particle.velocity, h.node_count(), &mut rng);
            let (position, fitness) = if targets[i] {
                local_search(&moved, ev, cfg.local_element_prob, &mut rng)
            } else {
                let f = ev.fitness(&moved);
                (moved, f)
            };
            particle.position = position;
            particle.fitness = fitness;
            if fitness > particle.pbest_fitness {
                particle.pbest.clone_from(&particle.position);
                particle.pbest_fitness = fitness;
            }
        };

        let evaluator = || SpreadEvaluator::new(h, cfg.p).expect("threshold validated");
        if cfg.parallel {
            self.state
                .particles
                .par_iter_mut()
                .enumerate()
                .for_each_init(evaluator, advance);
        } else {
            let mut ev = evaluator();
            self.state
                .particles
                .iter_mut()
                .enumerate()
                .for_each(|item| advance(&mut ev, item));
        }

        self.state.generation = generation;
        refresh_gbest(&mut self.state);
        self.history.push(self.state.gbest_fitness);
    }

    pub fn finish(self) -> Result<OptimizationResult> {
        let mut nodes = self.state.gbest.clone();
        nodes.sort_unstable();
        let exact = exact_spread(self.h, &nodes, self.cfg.p)?;
        Ok(OptimizationResult {
            seeds: self.h.to_original(&nodes),
            approx_fitness: self.state.gbest_fitness,
            exact_spread: exact,
            history: self.history,
            nodes,
        })
    }
}

/// gbest only moves on strict improvement; the first particle wins ties.
fn refresh_gbest(state: &mut SwarmState) {
    let mut best: Option<usize> = None;
    for (i, p) in state.particles.iter().enumerate() {
        let current = best.map_or(state.gbest_fitness, |b| state.particles[b].pbest_fitness);
        if p.pbest_fitness > current {
            best = Some(i);
        }
    }
    if let Some(i) = best {
        state.gbest.clone_from(&state.particles[i].pbest);
        state.gbest_fitness = state.particles[i].pbest_fitness;
    }
}

/// Runs the configured variant for `max_generations` generations.
pub fn run_optimizer(h: &Hypergraph, cfg: &OptimizerConfig) -> Result<OptimizationResult> {
    let mut swarm = Swarm::new(h, cfg.clone())?;
    for _ in 0..cfg.max_generations {
        swarm.step();
    }
    swarm.finish()
}
