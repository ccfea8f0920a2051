//! Discrete particle swarm optimizer for seed selection.
//!
//! A particle's position is a vector of `k` distinct node ids and its
//! velocity a vector of `k` bits (1 = replace the node in that slot,
//! 0 = keep it). The optimizer comes in three variants: the full method with
//! degree-biased initialization and neighborhood local search, and two
//! ablations without local search.

mod operators;
mod optimizer;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use operators::{
    degree_biased_position, guidance_mask, init_degree_biased, init_random, local_search,
    threshold_velocity, update_position, update_velocity, weighted_guidance,
};
pub use optimizer::{run_optimizer, Swarm};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// Degree-biased initialization plus local search.
    Hdpso,
    /// Uniform random initialization, no local search.
    Pso,
    /// Degree-biased initialization, no local search.
    PsoInit,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Hdpso => "hdpso",
            Variant::Pso => "pso",
            Variant::PsoInit => "pso-init",
        }
    }

    pub fn degree_biased_init(self) -> bool {
        matches!(self, Variant::Hdpso | Variant::PsoInit)
    }

    pub fn uses_local_search(self) -> bool {
        matches!(self, Variant::Hdpso)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hdpso" => Ok(Variant::Hdpso),
            "pso" => Ok(Variant::Pso),
            "pso-init" | "pso_init" => Ok(Variant::PsoInit),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

/// How the particles receiving local search are picked each generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum LocalSearchTargets {
    /// Uniformly at random without replacement.
    #[default]
    Random,
    /// The particles with the highest personal-best fitness (ties by index).
    Fittest,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerConfig {
    /// Seed-set size.
    pub k: usize,
    /// Activation threshold of the propagation model.
    pub p: f64,
    pub max_generations: usize,
    pub population: usize,
    /// Cognitive weight.
    pub c1: f64,
    /// Social weight.
    pub c2: f64,
    /// Inertia weight ω.
    pub inertia: f64,
    /// Replacement threshold τ applied to the weighted guidance.
    pub tau: f64,
    /// Fraction of the swarm refined by local search each generation.
    pub local_search_fraction: f64,
    /// Per-slot probability that local search explores that slot.
    pub local_element_prob: f64,
    pub local_search_targets: LocalSearchTargets,
    pub variant: Variant,
    pub rng_master_seed: u64,
    /// Evaluate particles on the rayon pool. Results do not depend on it.
    pub parallel: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            k: 10,
            p: 0.5,
            max_generations: 50,
            population: 256,
            c1: 1.2,
            c2: 1.2,
            inertia: 0.7,
            tau: 1.5,
            local_search_fraction: 0.1,
            local_element_prob: 0.2,
            local_search_targets: LocalSearchTargets::Random,
            variant: Variant::Hdpso,
            rng_master_seed: 0,
            parallel: true,
        }
    }
}

impl OptimizerConfig {
    pub fn new(k: usize, p: f64) -> Self {
        OptimizerConfig {
            k,
            p,
            ..Default::default()
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if self.k == 0 || self.k > n {
            return Err(Error::SeedSetSize { k: self.k, n });
        }
        crate::cascade::check_threshold(self.p)?;
        if self.population == 0 {
            return Err(Error::Config("population must be at least 1".into()));
        }
        for (name, v) in [
            ("c1", self.c1),
            ("c2", self.c2),
            ("inertia", self.inertia),
            ("tau", self.tau),
        ] {
            if !v.is_finite() {
                return Err(Error::Config(format!("{name} must be finite, got {v}")));
            }
        }
        for (name, v) in [
            ("local_search_fraction", self.local_search_fraction),
            ("local_element_prob", self.local_element_prob),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Config(format!("{name} must lie in [0, 1], got {v}")));
            }
        }
        Ok(())
    }

    /// Number of particles refined by local search per generation.
    pub fn local_search_count(&self) -> usize {
        if !self.variant.uses_local_search() {
            return 0;
        }
        ((self.local_search_fraction * self.population as f64).ceil() as usize).min(self.population)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Particle {
    pub position: Vec<usize>,
    pub velocity: Vec<u8>,
    pub pbest: Vec<usize>,
    pub pbest_fitness: usize,
    /// Fitness of the current position.
    pub fitness: usize,
}

impl Particle {
    pub fn new(position: Vec<usize>, fitness: usize) -> Self {
        Particle {
            velocity: vec![0; position.len()],
            pbest: position.clone(),
            pbest_fitness: fitness,
            fitness,
            position,
        }
    }

    /// Position and personal best hold `k` distinct ids below `n`, velocity is binary.
    pub fn is_valid(&self, k: usize, n: usize) -> bool {
        fn distinct(xs: &[usize], k: usize, n: usize) -> bool {
            let mut v = xs.to_vec();
            v.sort_unstable();
            v.dedup();
            v.len() == k && xs.len() == k && v.iter().all(|&x| x < n)
        }
        distinct(&self.position, k, n)
            && distinct(&self.pbest, k, n)
            && self.velocity.len() == k
            && self.velocity.iter().all(|&b| b <= 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwarmState {
    pub particles: Vec<Particle>,
    pub gbest: Vec<usize>,
    pub gbest_fitness: usize,
    pub generation: usize,
}

/// Outcome of an optimizer run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptimizationResult {
    /// Best seed set in original node ids, ascending.
    pub seeds: Vec<u64>,
    /// Two-layer fitness of the best seed set.
    pub approx_fitness: usize,
    /// Exact cascade size of the best seed set.
    pub exact_spread: usize,
    /// Best fitness after initialization and after each generation.
    pub history: Vec<usize>,
    /// Best seed set in compact ids, ascending.
    #[serde(skip)]
    pub nodes: Vec<usize>,
}

impl OptimizationResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }
}
