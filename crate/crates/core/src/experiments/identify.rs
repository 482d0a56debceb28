//! Likelihood-based identification of `(τ, p)` from observed actions: the
//! joint grid surface (which exhibits a ridge along `τ/p ≈ const`) and the
//! two-block Info-Shock estimator that breaks it.

use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::rng::{derive_seed, stream_rng, Stream};
use super::topology::sample_levels;
use crate::error::{domain, Result};
use crate::games::{action_profile, GameRule};
use crate::prior::{TruePrior, DEFAULT_K_MAX};

const LN_DENSITY_FLOOR: f64 = -690.775_527_898_213_7; // ln(1e-300)

/// `n` agents with levels drawn from `prior`, each playing `s_k(p)` plus
/// Gaussian noise of sd `sigma` (none when `sigma == 0`).
pub fn sample_population_actions(
    prior: &TruePrior,
    rule: GameRule,
    p: f64,
    n: usize,
    sigma: f64,
    seed: u64,
) -> Result<Vec<(usize, f64)>> {
    if n == 0 {
        return Err(domain("sample size must be at least 1"));
    }
    if !(sigma >= 0.0 && sigma.is_finite()) {
        return Err(domain(format!("noise sd must be non-negative, got {sigma}")));
    }
    let profile = action_profile(prior, rule, p)?;
    let mut rng = stream_rng(seed, Stream::Population, 0);
    let levels = sample_levels(prior, n, &mut rng);
    if sigma == 0.0 {
        return Ok(levels.into_iter().map(|k| (k, profile.actions[k])).collect());
    }
    let noise = Normal::new(0.0, sigma).expect("sigma checked");
    Ok(levels
        .into_iter()
        .map(|k| (k, profile.actions[k] + noise.sample(&mut rng)))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LikelihoodSurface {
    pub tau_grid: Vec<f64>,
    pub p_grid: Vec<f64>,
    /// `loglik[i][j]` at `(tau_grid[i], p_grid[j])`.
    pub loglik: Vec<Vec<f64>>,
    pub sigma: f64,
    pub argmax: (f64, f64),
}

/// Sum over observations of `ln Σ_k f(k; τ) φ((a - s_k(p)) / σ) / σ`.
pub fn log_likelihood(data: &[f64], tau: f64, p: f64, sigma: f64, rule: GameRule, k_max: usize) -> Result<f64> {
    let prior = TruePrior::poisson(tau, k_max)?;
    let actions = action_profile(&prior, rule, p)?.actions;
    let ln_f: Vec<f64> = prior.population_weights().iter().map(|w| w.ln()).collect();
    let ln_norm = sigma.ln() + 0.5 * (2.0 * std::f64::consts::PI).ln();
    let mut total = 0.0;
    let mut terms = vec![0.0; actions.len()];
    for &a in data {
        let mut top = f64::NEG_INFINITY;
        for ((t, s), lf) in terms.iter_mut().zip(&actions).zip(&ln_f) {
            let z = (a - s) / sigma;
            *t = lf - 0.5 * z * z;
            top = top.max(*t);
        }
        let lse = top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln();
        total += (lse - ln_norm).max(LN_DENSITY_FLOOR);
    }
    Ok(total)
}

pub fn loglik_surface(
    data: &[f64],
    tau_grid: &[f64],
    p_grid: &[f64],
    sigma: f64,
    rule: GameRule,
    k_max: usize,
) -> Result<LikelihoodSurface> {
    if data.is_empty() {
        return Err(domain("no observations"));
    }
    if !(sigma > 0.0 && sigma.is_finite()) {
        return Err(domain(format!("observation sd must be positive, got {sigma}")));
    }
    if tau_grid.is_empty() || p_grid.is_empty() {
        return Err(domain("empty parameter grid"));
    }
    let cells: Vec<(usize, usize)> = (0..tau_grid.len())
        .flat_map(|i| (0..p_grid.len()).map(move |j| (i, j)))
        .collect();
    let values: Vec<f64> = cells
        .par_iter()
        .map(|&(i, j)| log_likelihood(data, tau_grid[i], p_grid[j], sigma, rule, k_max))
        .collect::<Result<_>>()?;

    let mut loglik = vec![vec![0.0; p_grid.len()]; tau_grid.len()];
    let mut best = (f64::NEG_INFINITY, 0, 0);
    for (&(i, j), &v) in cells.iter().zip(&values) {
        loglik[i][j] = v;
        if v > best.0 {
            best = (v, i, j);
        }
    }
    Ok(LikelihoodSurface {
        tau_grid: tau_grid.to_vec(),
        p_grid: p_grid.to_vec(),
        loglik,
        sigma,
        argmax: (tau_grid[best.1], p_grid[best.2]),
    })
}

impl LikelihoodSurface {
    pub fn max_loglik(&self) -> f64 {
        self.loglik.iter().flatten().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Cells `(τ, p, loglik)` within `within` log-units of the maximum.
    pub fn near_max(&self, within: f64) -> Vec<(f64, f64, f64)> {
        let cutoff = self.max_loglik() - within;
        let mut out = Vec::new();
        for (i, row) in self.loglik.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= cutoff {
                    out.push((self.tau_grid[i], self.p_grid[j], v));
                }
            }
        }
        out
    }
}

/// Inclusive arithmetic grid `start, start+step, …, end`.
pub fn linspace_step(start: f64, end: f64, step: f64) -> Vec<f64> {
    let n = ((end - start) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| start + step * i as f64).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: &'static str,
    pub tau: f64,
    pub p: f64,
}

/// Echo-chambered, moderate and high-transparency populations.
pub const SCENARIOS: [Scenario; 3] = [
    Scenario {
        name: "echo_chambered",
        tau: 1.5,
        p: 0.4,
    },
    Scenario {
        name: "moderate",
        tau: 2.5,
        p: 0.7,
    },
    Scenario {
        name: "high_transparency",
        tau: 3.0,
        p: 0.8,
    },
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct IdentifyConfig {
    pub n: usize,
    pub sigma: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_step: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub p_step: f64,
    /// Log-likelihood band defining the ridge.
    pub ridge_band: f64,
    /// Relative tolerance on `τ/p` around the generator value.
    pub ratio_tolerance: f64,
    pub seed: u64,
    pub k_max: usize,
}

impl Default for IdentifyConfig {
    fn default() -> Self {
        Self {
            n: 1000,
            sigma: 2.0,
            tau_min: 0.5,
            tau_max: 5.0,
            tau_step: 0.05,
            p_min: 0.1,
            p_max: 1.0,
            p_step: 0.025,
            ridge_band: 2.0,
            ratio_tolerance: 0.15,
            seed: 0,
            k_max: DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RidgeSummary {
    pub scenario: String,
    pub tau_true: f64,
    pub p_true: f64,
    pub argmax_tau: f64,
    pub argmax_p: f64,
    pub max_loglik: f64,
    /// Cells within the band.
    pub ridge_cells: usize,
    /// Ridge cells whose `τ/p` lies within tolerance of the generator's.
    pub ridge_cells_on_ratio: usize,
    /// Extremes of `(τ/p) / (τ_true/p_true)` over the ridge.
    pub ratio_min: f64,
    pub ratio_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentifyReport {
    pub config: IdentifyConfig,
    pub summaries: Vec<RidgeSummary>,
    pub surfaces: Vec<LikelihoodSurface>,
}

pub fn summarize_ridge(surface: &LikelihoodSurface, scenario: &Scenario, band: f64, tolerance: f64) -> RidgeSummary {
    let target = scenario.tau / scenario.p;
    let ridge = surface.near_max(band);
    let rel: Vec<f64> = ridge.iter().map(|(t, p, _)| (t / p) / target).collect();
    RidgeSummary {
        scenario: scenario.name.to_string(),
        tau_true: scenario.tau,
        p_true: scenario.p,
        argmax_tau: surface.argmax.0,
        argmax_p: surface.argmax.1,
        max_loglik: surface.max_loglik(),
        ridge_cells: ridge.len(),
        ridge_cells_on_ratio: rel.iter().filter(|r| (*r - 1.0).abs() <= tolerance + 1e-12).count(),
        ratio_min: rel.iter().copied().fold(f64::INFINITY, f64::min),
        ratio_max: rel.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// One scenario: synthesize `n` noisy beauty-contest actions and scan the grid.
pub fn identify_scenario(
    config: &IdentifyConfig,
    scenario: &Scenario,
    index: u64,
) -> Result<(RidgeSummary, LikelihoodSurface)> {
    let rule = GameRule::default();
    let prior = TruePrior::poisson(scenario.tau, config.k_max)?;
    let seed = derive_seed(config.seed, Stream::Identify, index);
    let data: Vec<f64> = sample_population_actions(&prior, rule, scenario.p, config.n, config.sigma, seed)?
        .into_iter()
        .map(|(_, a)| a)
        .collect();
    let tau_grid = linspace_step(config.tau_min, config.tau_max, config.tau_step);
    let p_grid = linspace_step(config.p_min, config.p_max, config.p_step);
    let surface = loglik_surface(&data, &tau_grid, &p_grid, config.sigma, rule, config.k_max)?;
    let summary = summarize_ridge(&surface, scenario, config.ridge_band, config.ratio_tolerance);
    Ok((summary, surface))
}

pub fn identifiability_experiment(config: &IdentifyConfig) -> Result<IdentifyReport> {
    let mut summaries = Vec::new();
    let mut surfaces = Vec::new();
    for (i, sc) in SCENARIOS.iter().enumerate() {
        let (summary, surface) = identify_scenario(config, sc, i as u64)?;
        summaries.push(summary);
        surfaces.push(surface);
    }
    Ok(IdentifyReport {
        config: config.clone(),
        summaries,
        surfaces,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InfoShockEstimate {
    pub tau_a: f64,
    pub tau_b: f64,
    /// `τ̂_A / τ̂_B` before clipping.
    pub p_endo_raw: f64,
    /// Clipped to `(0, 1]`.
    pub p_endo: f64,
}

fn fit_tau_standard_ch(data: &[f64], tau_grid: &[f64], sigma: f64, rule: GameRule, k_max: usize) -> Result<f64> {
    let surface = loglik_surface(data, tau_grid, &[1.0], sigma, rule, k_max)?;
    Ok(surface.argmax.0)
}

/// Fits a standard cognitive hierarchy (`p = 1`) to each block and returns
/// the ratio of the fitted sophistications.
pub fn info_shock_estimate(
    data_a: &[f64],
    data_b: &[f64],
    tau_grid: &[f64],
    sigma: f64,
    rule: GameRule,
    k_max: usize,
) -> Result<InfoShockEstimate> {
    if data_a.is_empty() || data_b.is_empty() {
        return Err(domain("both Info-Shock blocks need observations"));
    }
    if tau_grid.iter().any(|t| *t <= 0.0) {
        return Err(domain("tau grid must be positive"));
    }
    let tau_a = fit_tau_standard_ch(data_a, tau_grid, sigma, rule, k_max)?;
    let tau_b = fit_tau_standard_ch(data_b, tau_grid, sigma, rule, k_max)?;
    let p_endo_raw = tau_a / tau_b;
    Ok(InfoShockEstimate {
        tau_a,
        tau_b,
        p_endo_raw,
        p_endo: p_endo_raw.min(1.0),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct InfoShockConfig {
    pub tau: f64,
    pub p_true: f64,
    pub n: usize,
    pub sigma: f64,
    pub tau_min: f64,
    pub tau_max: f64,
    pub tau_step: f64,
    pub replications: usize,
    pub seed: u64,
    pub k_max: usize,
}

impl Default for InfoShockConfig {
    fn default() -> Self {
        Self {
            tau: 1.5,
            p_true: 0.5,
            n: 5000,
            sigma: 0.5,
            tau_min: 0.05,
            tau_max: 8.0,
            tau_step: 0.05,
            replications: 1,
            seed: 0,
            k_max: DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InfoShockReport {
    pub config: InfoShockConfig,
    pub estimates: Vec<InfoShockEstimate>,
}

/// Block A at `p = 1`, block B at `p_true`, same population parameters,
/// independent samples per replication.
pub fn info_shock_experiment(config: &InfoShockConfig) -> Result<InfoShockReport> {
    let rule = GameRule::default();
    let prior = TruePrior::poisson(config.tau, config.k_max)?;
    let tau_grid = linspace_step(config.tau_min, config.tau_max, config.tau_step);
    let estimates = (0..config.replications as u64)
        .into_par_iter()
        .map(|r| {
            let actions = |p: f64, stream: Stream| -> Result<Vec<f64>> {
                Ok(sample_population_actions(
                    &prior,
                    rule,
                    p,
                    config.n,
                    config.sigma,
                    derive_seed(config.seed, stream, r),
                )?
                .into_iter()
                .map(|(_, a)| a)
                .collect())
            };
            let a = actions(1.0, Stream::InfoShockA)?;
            let b = actions(config.p_true, Stream::InfoShockB)?;
            info_shock_estimate(&a, &b, &tau_grid, config.sigma, rule, config.k_max)
        })
        .collect::<Result<_>>()?;
    Ok(InfoShockReport {
        config: config.clone(),
        estimates,
    })
}
