//! Cognitive-distance stochastic block model and the mapping from graph
//! homophily `β` to an effective transparency `p̂`.

use rand::Rng;
use rand_distr::{weighted::WeightedIndex, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{stream_rng, Stream};
use crate::beliefs::ln_belief_weights;
use crate::error::{domain, Error, Result};
use crate::prior::{TruePrior, DEFAULT_K_MAX};

/// Graph whose edge probability between levels `a` and `b` is
/// `δ · exp(-β |a - b|)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SbmGraph {
    pub n: usize,
    pub levels: Vec<usize>,
    /// Sorted neighbour lists; symmetric, no self-loops.
    pub neighbors: Vec<Vec<u32>>,
    pub beta: f64,
    pub delta: f64,
}

impl SbmGraph {
    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors[i].binary_search(&(j as u32)).is_ok()
    }
}

pub(crate) fn sample_levels(prior: &TruePrior, n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let dist = WeightedIndex::new(prior.population_weights()).expect("prior weights are positive");
    (0..n).map(|_| dist.sample(rng)).collect()
}

/// Levels iid from Poisson(`tau`) truncated at `k_max`; each unordered pair is
/// linked independently. Pair `(i, j)`, `i < j`, draws from row stream `i`,
/// so a fixed seed couples graphs across `β`: edge sets shrink as `β` grows.
pub fn generate_sbm(n: usize, tau: f64, beta: f64, delta: f64, k_max: usize, seed: u64) -> Result<SbmGraph> {
    if n < 2 {
        return Err(domain("SBM needs at least two agents"));
    }
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(domain(format!("beta must be non-negative, got {beta}")));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(domain(format!("delta must lie in (0,1], got {delta}")));
    }
    let prior = TruePrior::poisson(tau, k_max)?;
    let levels = sample_levels(&prior, n, &mut stream_rng(seed, Stream::SbmLevels, 0));

    let link_prob: Vec<f64> = (0..=k_max).map(|d| delta * (-beta * d as f64).exp()).collect();
    let upper: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = stream_rng(seed, Stream::SbmEdges, i as u64);
            ((i + 1)..n)
                .filter(|&j| rng.random::<f64>() < link_prob[levels[i].abs_diff(levels[j])])
                .map(|j| j as u32)
                .collect()
        })
        .collect();

    let mut neighbors = vec![Vec::new(); n];
    for (i, row) in upper.iter().enumerate() {
        for &j in row {
            neighbors[i].push(j);
            neighbors[j as usize].push(i as u32);
        }
    }
    for list in &mut neighbors {
        list.sort_unstable();
    }
    Ok(SbmGraph {
        n,
        levels,
        neighbors,
        beta,
        delta,
    })
}

/// Histogram of neighbour levels below the agent's own level, normalized.
/// Neighbours at or above the agent's level are censored.
pub fn empirical_neighbor_belief(g: &SbmGraph, agent: usize) -> Result<Vec<f64>> {
    let (hist, count) = censored_histogram(g, agent);
    if count == 0 {
        return Err(Error::InsufficientNeighborhood { agent });
    }
    Ok(hist.into_iter().map(|c| c as f64 / count as f64).collect())
}

fn censored_histogram(g: &SbmGraph, agent: usize) -> (Vec<usize>, usize) {
    let k = g.levels[agent];
    let mut hist = vec![0usize; k];
    let mut count = 0;
    for &j in &g.neighbors[agent] {
        let h = g.levels[j as usize];
        if h < k {
            hist[h] += 1;
            count += 1;
        }
    }
    (hist, count)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectivePFit {
    pub agent_level: usize,
    pub p_hat: f64,
    pub kl: f64,
}

/// `D_KL(ĝ ‖ g_k(·; p))` with `0 ln 0 = 0`.
pub fn kl_to_model(empirical: &[f64], prior: &TruePrior, level: usize, p: f64) -> Result<f64> {
    let ln_model = ln_belief_weights(prior, level, p)?;
    Ok(empirical
        .iter()
        .zip(&ln_model)
        .filter(|(e, _)| **e > 0.0)
        .map(|(e, lm)| e * (e.ln() - lm))
        .sum::<f64>()
        .max(0.0))
}

/// Grid search for the transparency whose belief is KL-closest to `empirical`.
/// Ties go to the larger `p`.
pub fn estimate_effective_p(
    empirical: &[f64],
    prior: &TruePrior,
    level: usize,
    p_search: &[f64],
) -> Result<EffectivePFit> {
    if empirical.len() != level || level == 0 {
        return Err(domain(format!(
            "empirical belief has {} entries, expected support 0..{level}",
            empirical.len()
        )));
    }
    let total: f64 = empirical.iter().sum();
    if empirical.iter().any(|e| *e < 0.0) || (total - 1.0).abs() > 1e-9 {
        return Err(domain("empirical belief is not a pmf"));
    }
    if p_search.is_empty() {
        return Err(domain("empty p search grid"));
    }
    let mut best: Option<EffectivePFit> = None;
    for &p in p_search {
        let kl = kl_to_model(empirical, prior, level, p)?;
        if best.is_none_or(|b| kl < b.kl || (kl == b.kl && p > b.p_hat)) {
            best = Some(EffectivePFit {
                agent_level: level,
                p_hat: p,
                kl,
            });
        }
    }
    Ok(best.expect("non-empty grid"))
}

/// `{0.01, 0.02, …, 1.00}`.
pub fn default_p_search() -> Vec<f64> {
    (1..=100).map(|i| i as f64 / 100.0).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TopologyConfig {
    pub n: usize,
    pub tau: f64,
    pub beta_grid: Vec<f64>,
    pub delta: f64,
    pub seed: u64,
    pub p_search: Vec<f64>,
    /// Agents need level >= 2 and at least this many censored neighbours.
    pub min_censored_neighbors: usize,
    pub k_max: usize,
}

impl Default for TopologyConfig {
    fn default() -> Self {
        Self {
            n: 2000,
            tau: 3.0,
            beta_grid: vec![0.0, 0.5, 1.0, 1.5, 2.0],
            delta: 0.05,
            seed: 0,
            p_search: default_p_search(),
            min_censored_neighbors: 3,
            k_max: DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopologyRow {
    pub beta: f64,
    pub mean_p_hat: f64,
    pub mean_kl: f64,
    pub n_eligible: usize,
    pub n_skipped: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EdgeDensityRow {
    pub beta: f64,
    pub level_a: usize,
    pub level_b: usize,
    pub pairs: u64,
    pub edges: u64,
    pub density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologyReport {
    pub config: TopologyConfig,
    pub rows: Vec<TopologyRow>,
    pub edge_densities: Vec<EdgeDensityRow>,
}

/// Realized edge density for every level pair `a <= b` present in the graph.
pub fn class_pair_densities(g: &SbmGraph) -> Vec<EdgeDensityRow> {
    let k_top = g.levels.iter().copied().max().unwrap_or(0);
    let mut sizes = vec![0u64; k_top + 1];
    for &k in &g.levels {
        sizes[k] += 1;
    }
    let mut edges = vec![vec![0u64; k_top + 1]; k_top + 1];
    for (i, list) in g.neighbors.iter().enumerate() {
        for &j in list {
            if (j as usize) > i {
                let (a, b) = {
                    let (x, y) = (g.levels[i], g.levels[j as usize]);
                    (x.min(y), x.max(y))
                };
                edges[a][b] += 1;
            }
        }
    }
    let mut rows = Vec::new();
    for a in 0..=k_top {
        for b in a..=k_top {
            let pairs = if a == b {
                sizes[a] * sizes[a].saturating_sub(1) / 2
            } else {
                sizes[a] * sizes[b]
            };
            if pairs == 0 {
                continue;
            }
            rows.push(EdgeDensityRow {
                beta: g.beta,
                level_a: a,
                level_b: b,
                pairs,
                edges: edges[a][b],
                density: edges[a][b] as f64 / pairs as f64,
            });
        }
    }
    rows
}

pub fn topology_mapping_experiment(config: &TopologyConfig) -> Result<TopologyReport> {
    if config.beta_grid.is_empty() {
        return Err(domain("empty beta grid"));
    }
    let prior = TruePrior::poisson(config.tau, config.k_max)?;
    let mut rows = Vec::with_capacity(config.beta_grid.len());
    let mut edge_densities = Vec::new();

    for &beta in &config.beta_grid {
        let g = generate_sbm(config.n, config.tau, beta, config.delta, config.k_max, config.seed)?;
        let fits: Vec<Option<EffectivePFit>> = (0..g.n)
            .into_par_iter()
            .map(|i| {
                let k = g.levels[i];
                if k < 2 {
                    return Ok(None);
                }
                let (hist, count) = censored_histogram(&g, i);
                if count < config.min_censored_neighbors.max(1) {
                    return Ok(None);
                }
                let empirical: Vec<f64> = hist.iter().map(|c| *c as f64 / count as f64).collect();
                estimate_effective_p(&empirical, &prior, k, &config.p_search).map(Some)
            })
            .collect::<Result<_>>()?;

        let eligible: Vec<EffectivePFit> = fits.iter().flatten().copied().collect();
        let n_eligible = eligible.len();
        let (mean_p_hat, mean_kl) = if n_eligible == 0 {
            (f64::NAN, f64::NAN)
        } else {
            (
                eligible.iter().map(|f| f.p_hat).sum::<f64>() / n_eligible as f64,
                eligible.iter().map(|f| f.kl).sum::<f64>() / n_eligible as f64,
            )
        };
        rows.push(TopologyRow {
            beta,
            mean_p_hat,
            mean_kl,
            n_eligible,
            n_skipped: g.n - n_eligible,
        });
        edge_densities.extend(class_pair_densities(&g));
    }
    Ok(TopologyReport {
        config: config.clone(),
        rows,
        edge_densities,
    })
}
