//! Synthetic hypergraph families: Erdős–Rényi, scale-free and k-uniform.

use std::fmt;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::rng::{self, tag};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "lowercase")]
pub enum Family {
    /// Edge sizes follow a Poisson law on `[2, n]` with the given mean.
    Er { mean_size: f64 },
    /// Node hyperdegrees follow `P(k) ∝ k^exponent`; `exponent < 0`.
    Sf { exponent: f64 },
    /// Every hyperedge has exactly `size` members.
    Kuf { size: usize },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Er { .. } => "er",
            Family::Sf { .. } => "sf",
            Family::Kuf { .. } => "kuf",
        }
    }

    pub fn feature(&self) -> f64 {
        match *self {
            Family::Er { mean_size } => mean_size,
            Family::Sf { exponent } => exponent,
            Family::Kuf { size } => size as f64,
        }
    }

    /// Builds a family from its CLI name and single numeric feature.
    pub fn from_feature(name: &str, feature: f64) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "er" => Ok(Family::Er { mean_size: feature }),
            "sf" => Ok(Family::Sf { exponent: feature }),
            "kuf" | "k-uf" | "uf" => {
                if feature.fract() != 0.0 || feature < 0.0 {
                    return Err(Error::Generator(format!(
                        "k-uniform edge size must be a whole number, got {feature}"
                    )));
                }
                Ok(Family::Kuf {
                    size: feature as usize,
                })
            }
            other => Err(Error::Generator(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub family: Family,
    pub n: usize,
    pub m: usize,
    pub rng_seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, m: usize, rng_seed: u64) -> Self {
        GeneratorSpec {
            family,
            n,
            m,
            rng_seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::Generator(format!("n must be at least 2, got {}", self.n)));
        }
        if self.m < 1 {
            return Err(Error::Generator("m must be at least 1".into()));
        }
        match self.family {
            Family::Er { mean_size } => {
                if !(mean_size >= 2.0 && mean_size <= self.n as f64) {
                    return Err(Error::Generator(format!(
                        "ER mean edge size must lie in [2, n = {}], got {mean_size}",
                        self.n
                    )));
                }
            }
            Family::Sf { exponent } => {
                if exponent >= 0.0 || !exponent.is_finite() {
                    return Err(Error::Generator(format!(
                        "SF exponent must be negative, got {exponent}"
                    )));
                }
            }
            Family::Kuf { size } => {
                if size < 2 || size > self.n {
                    return Err(Error::Generator(format!(
                        "k-uniform edge size must lie in [2, n = {}], got {size}",
                        self.n
                    )));
                }
            }
        }
        Ok(())
    }

    /// Short label in the style `ER-2000-1000-3`.
    pub fn label(&self) -> String {
        let family = match self.family {
            Family::Er { .. } => "ER",
            Family::Sf { .. } => "SF",
            Family::Kuf { .. } => "UF",
        };
        format!("{family}-{}-{}-{}", self.n, self.m, self.family.feature())
    }

    /// Provenance line written above generated hyperedge files.
    pub fn provenance(&self) -> String {
        format!(
            "spec: family={} n={} m={} feature={} seed={}",
            self.family.name(),
            self.n,
            self.m,
            self.family.feature(),
            self.rng_seed
        )
    }

    pub fn generate(&self) -> Result<Hypergraph> {
        self.validate()?;
        let mut rng = rng::stream(self.rng_seed, tag::GENERATOR, 0, 0);
        match self.family {
            Family::Er { mean_size } => gen_er(self.n, self.m, mean_size, &mut rng),
            Family::Sf { exponent } => gen_sf(self.n, self.m, exponent, &mut rng),
            Family::Kuf { size } => gen_kuniform(self.n, self.m, size, &mut rng),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// The twelve synthetic settings of the benchmark suite at `n = 2000`.
pub fn benchmark_suite(rng_seed: u64) -> Vec<GeneratorSpec> {
    let mut out = Vec::new();
    for m in [1000, 2000] {
        for mean_size in [3.0, 4.0] {
            out.push(GeneratorSpec::new(Family::Er { mean_size }, 2000, m, rng_seed));
        }
    }
    for m in [500, 1000] {
        for exponent in [-1.5, -2.0] {
            out.push(GeneratorSpec::new(Family::Sf { exponent }, 2000, m, rng_seed));
        }
    }
    for m in [1000, 2000] {
        for size in [3, 4] {
            out.push(GeneratorSpec::new(Family::Kuf { size }, 2000, m, rng_seed));
        }
    }
    out
}

fn to_hypergraph(edges: Vec<Vec<usize>>) -> Result<Hypergraph> {
    Hypergraph::from_hyperedges(
        edges
            .into_iter()
            .map(|e| e.into_iter().map(|v| v as u64)),
    )
}

/// Log-weights `k ln λ - ln k!` for `k = 2..=n`.
fn poisson_log_weights(n: usize, log_rate: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(n - 1);
    let mut log_fact = 0.0f64; // ln 1!
    for k in 2..=n {
        log_fact += (k as f64).ln();
        out.push(k as f64 * log_rate - log_fact);
    }
    out
}

fn normalized(log_w: &[f64]) -> Vec<f64> {
    let max = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = log_w.iter().map(|&l| (l - max).exp()).collect();
    let total: f64 = w.iter().sum();
    w.into_iter().map(|x| x / total).collect()
}

fn truncated_mean(probs: &[f64]) -> f64 {
    probs
        .iter()
        .enumerate()
        .map(|(i, &q)| (i + 2) as f64 * q)
        .sum()
}

/// Size distribution on `2..=n` (index 0 is size 2): a Poisson law truncated
/// to `[2, n]` whose rate is tuned so the truncated mean equals `mean_size`.
pub fn er_size_distribution(n: usize, mean_size: f64) -> Vec<f64> {
    let mut probs = vec![0.0; n - 1];
    if mean_size - 2.0 < 1e-9 {
        probs[0] = 1.0;
        return probs;
    }
    if n as f64 - mean_size < 1e-9 {
        probs[n - 2] = 1.0;
        return probs;
    }
    // truncated mean is increasing in the rate
    let (mut lo, mut hi) = (-40.0f64, (n as f64).ln() + 10.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let mean = truncated_mean(&normalized(&poisson_log_weights(n, mid)));
        if mean < mean_size {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    normalized(&poisson_log_weights(n, 0.5 * (lo + hi)))
}

/// `m` hyperedges with Poisson-distributed sizes, members drawn uniformly
/// without replacement.
pub fn gen_er<R: Rng + ?Sized>(n: usize, m: usize, mean_size: f64, rng: &mut R) -> Result<Hypergraph> {
    GeneratorSpec::new(Family::Er { mean_size }, n, m, 0).validate()?;
    let probs = er_size_distribution(n, mean_size);
    let sizes = WeightedIndex::new(&probs).map_err(|e| Error::Generator(e.to_string()))?;
    let edges = (0..m)
        .map(|_| {
            let size = sizes.sample(rng) + 2;
            index::sample(rng, n, size).into_vec()
        })
        .collect();
    to_hypergraph(edges)
}

/// Configuration-model scale-free hypergraph.
///
/// Each node draws a target hyperdegree from `P(k) ∝ k^exponent` on
/// `[1, min(n - 1, m)]`; the resulting membership stubs are matched into `m`
/// hyperedges of near-equal size. A stub that would repeat a member is
/// resampled from the remaining pool.
pub fn gen_sf<R: Rng + ?Sized>(n: usize, m: usize, exponent: f64, rng: &mut R) -> Result<Hypergraph> {
    GeneratorSpec::new(Family::Sf { exponent }, n, m, 0).validate()?;
    // a node cannot belong to more than m distinct hyperedges
    let k_max = (n - 1).min(m).max(1);
    let weights: Vec<f64> = (1..=k_max).map(|k| (k as f64).powf(exponent)).collect();
    let targets = WeightedIndex::new(&weights).map_err(|e| Error::Generator(e.to_string()))?;

    let mut stubs: Vec<usize> = Vec::new();
    for v in 0..n {
        let k = targets.sample(rng) + 1;
        stubs.extend(std::iter::repeat_n(v, k));
    }
    let total = stubs.len();
    if total < 2 * m {
        return Err(Error::Generator(format!(
            "only {total} membership stubs for {m} hyperedges of size >= 2"
        )));
    }
    let base = total / m;
    let extra = total % m;
    if base + usize::from(extra > 0) > n {
        return Err(Error::Generator(format!(
            "edge size {} would exceed n = {n}",
            base + 1
        )));
    }
    stubs.shuffle(rng);

    let mut edges = Vec::with_capacity(m);
    let mut in_edge = vec![false; n];
    for e in 0..m {
        let size = base + usize::from(e < extra);
        let mut members = Vec::with_capacity(size);
        for _ in 0..size {
            let node = take_stub(&mut stubs, &in_edge, rng).unwrap_or_else(|| {
                // pool exhausted of usable stubs: fall back to a uniform non-member
                loop {
                    let v = rng.random_range(0..n);
                    if !in_edge[v] {
                        break v;
                    }
                }
            });
            in_edge[node] = true;
            members.push(node);
        }
        for &v in &members {
            in_edge[v] = false;
        }
        edges.push(members);
    }
    to_hypergraph(edges)
}

fn take_stub<R: Rng + ?Sized>(stubs: &mut Vec<usize>, in_edge: &[bool], rng: &mut R) -> Option<usize> {
    if stubs.is_empty() {
        return None;
    }
    for _ in 0..64 {
        let i = rng.random_range(0..stubs.len());
        if !in_edge[stubs[i]] {
            return Some(stubs.swap_remove(i));
        }
    }
    let start = rng.random_range(0..stubs.len());
    let len = stubs.len();
    (0..len)
        .map(|off| (start + off) % len)
        .find(|&i| !in_edge[stubs[i]])
        .map(|i| stubs.swap_remove(i))
}

/// `m` hyperedges of exactly `size` members each.
pub fn gen_kuniform<R: Rng + ?Sized>(n: usize, m: usize, size: usize, rng: &mut R) -> Result<Hypergraph> {
    GeneratorSpec::new(Family::Kuf { size }, n, m, 0).validate()?;
    let edges = (0..m).map(|_| index::sample(rng, n, size).into_vec()).collect();
    to_hypergraph(edges)
}
