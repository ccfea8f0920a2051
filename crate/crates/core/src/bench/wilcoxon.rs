//! Two-sided Wilcoxon rank-sum (Mann–Whitney U) test.
//!
//! Small tie-free samples (`|a| + |b| <= 12`) use the exact null
//! distribution of U; everything else uses the normal approximation with tie
//! and continuity corrections.

use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::erf::erfc;

use crate::error::{Error, Result};

/// Largest combined sample size handled by exact enumeration.
pub const EXACT_MAX_TOTAL: usize = 12;

/// Outcome of comparing a reference sample against another.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mark {
    /// Reference significantly larger.
    Better,
    /// No significant difference.
    Same,
    /// Reference significantly smaller.
    Worse,
}

impl Mark {
    pub fn symbol(self) -> &'static str {
        match self {
            Mark::Better => "+",
            Mark::Same => "=",
            Mark::Worse => "-",
        }
    }

    pub fn flipped(self) -> Mark {
        match self {
            Mark::Better => Mark::Worse,
            Mark::Same => Mark::Same,
            Mark::Worse => Mark::Better,
        }
    }
}

impl fmt::Display for Mark {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankSumTest {
    /// U statistic of the first sample.
    pub u: f64,
    pub p_value: f64,
    pub mark: Mark,
    /// Whether the exact null distribution was used.
    pub exact: bool,
}

/// Midranks (1-based) of the pooled sample, ties sharing their average rank.
pub fn midranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = rank;
        }
        i = j + 1;
    }
    ranks
}

/// Number of ways to pick `na` of the ranks `1..=total` for every attainable
/// U value (index = U).
fn exact_u_counts(na: usize, total: usize) -> Vec<u64> {
    let max_sum = total * (total + 1) / 2;
    // ways[j][s]: subsets of size j with rank sum s
    let mut ways = vec![vec![0u64; max_sum + 1]; na + 1];
    ways[0][0] = 1;
    for rank in 1..=total {
        for j in (1..=na.min(rank)).rev() {
            for s in (rank..=max_sum).rev() {
                ways[j][s] += ways[j - 1][s - rank];
            }
        }
    }
    let offset = na * (na + 1) / 2;
    ways[na][offset..].to_vec()
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64], alpha: f64) -> Result<RankSumTest> {
    if a.len() < 2 || b.len() < 2 {
        return Err(Error::SampleTooSmall(a.len(), b.len()));
    }
    let (na, nb) = (a.len(), b.len());
    let total = na + nb;
    let pooled: Vec<f64> = a.iter().chain(b).copied().collect();
    let ranks = midranks(&pooled);
    let rank_sum_a: f64 = ranks[..na].iter().sum();
    let u = rank_sum_a - (na * (na + 1)) as f64 / 2.0;

    let mut sorted = pooled.clone();
    sorted.sort_by(f64::total_cmp);
    let has_ties = sorted.windows(2).any(|w| w[0] == w[1]);

    let (p_value, exact) = if total <= EXACT_MAX_TOTAL && !has_ties {
        let counts = exact_u_counts(na, total);
        let all: u64 = counts.iter().sum();
        let u_int = u.round() as usize;
        let lower: u64 = counts[..=u_int].iter().sum();
        let upper: u64 = counts[u_int..].iter().sum();
        let tail = lower.min(upper) as f64 / all as f64;
        ((2.0 * tail).min(1.0), true)
    } else {
        let mu = (na * nb) as f64 / 2.0;
        let mut tie_term = 0.0;
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
                j += 1;
            }
            let t = (j - i + 1) as f64;
            tie_term += t * t * t - t;
            i = j + 1;
        }
        let nt = total as f64;
        let var = (na * nb) as f64 / 12.0 * ((nt + 1.0) - tie_term / (nt * (nt - 1.0)));
        if var <= 0.0 {
            (1.0, false)
        } else {
            let z = ((u - mu).abs() - 0.5).max(0.0) / var.sqrt();
            (erfc(z / std::f64::consts::SQRT_2).min(1.0), false)
        }
    };

    let (ma, mb) = (mean(a), mean(b));
    let mark = if p_value < alpha && ma > mb {
        Mark::Better
    } else if p_value < alpha && ma < mb {
        Mark::Worse
    } else {
        Mark::Same
    };
    Ok(RankSumTest {
        u,
        p_value,
        mark,
        exact,
    })
}
