//! Inequality as a function of transparency: Monte Carlo payoff Gini with
//! per-level relative advantage, and the deterministic Gini of quadratic
//! coordination losses.

use rand::Rng;
use rand_distr::{Distribution, Normal, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gini::gini;
use super::rng::{stream_rng, Stream};
use super::topology::sample_levels;
use crate::error::{domain, Result};
use crate::games::{action_profile, GameRule};
use crate::prior::{TruePrior, DEFAULT_K_MAX};

/// How level-0 agents act in the Monte Carlo population.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level0Behavior {
    /// Play the analytic anchor `s_0 = 50`.
    Anchor,
    /// Draw uniformly on `[0, 100]`.
    Uniform,
}

/// Level buckets `0, 1, 2, 3, 4, 5+`.
pub const BUCKET_LABELS: [&str; 6] = ["0", "1", "2", "3", "4", "5+"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ClarityConfig {
    pub n: usize,
    pub tau: f64,
    /// Payoff decay in `exp(-λ |a - T|)`.
    pub lambda: f64,
    /// Target multiplier: `T = m · mean action`.
    pub m: f64,
    pub p_grid: Vec<f64>,
    pub mc_runs: usize,
    pub seed: u64,
    pub level0: Level0Behavior,
    /// Gaussian noise added to every realized action.
    pub action_noise_sd: f64,
    pub k_max: usize,
}

/// `points` values evenly spaced on `[0.01, 1.0]`.
pub fn clarity_p_grid(points: usize) -> Vec<f64> {
    assert!(points >= 2);
    (0..points)
        .map(|i| 0.01 + 0.99 * i as f64 / (points - 1) as f64)
        .map(|p: f64| p.min(1.0))
        .collect()
}

impl Default for ClarityConfig {
    fn default() -> Self {
        Self {
            n: 2000,
            tau: 1.5,
            lambda: 0.2,
            m: 2.0 / 3.0,
            p_grid: clarity_p_grid(50),
            mc_runs: 1000,
            seed: 0,
            level0: Level0Behavior::Anchor,
            action_noise_sd: 2.0,
            k_max: DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCurve {
    pub p_grid: Vec<f64>,
    /// Mean payoff Gini over runs, per `p`.
    pub gini: Vec<f64>,
    /// `relative_advantage[bucket][i]`: payoff share over population share at
    /// `p_grid[i]`, averaged over runs where the bucket is non-empty.
    pub relative_advantage: Vec<Vec<f64>>,
}

impl InequalityCurve {
    /// Least-squares slope of the Gini curve against `p`.
    pub fn gini_slope(&self) -> f64 {
        let n = self.p_grid.len() as f64;
        let mx = self.p_grid.iter().sum::<f64>() / n;
        let my = self.gini.iter().sum::<f64>() / n;
        let sxy: f64 = self
            .p_grid
            .iter()
            .zip(&self.gini)
            .map(|(x, y)| (x - mx) * (y - my))
            .sum();
        let sxx: f64 = self.p_grid.iter().map(|x| (x - mx).powi(2)).sum();
        sxy / sxx
    }
}

#[derive(Debug, Clone, Default)]
struct RunStats {
    gini: f64,
    advantage: [Option<f64>; 6],
}

fn bucket(level: usize) -> usize {
    level.min(5)
}

fn one_run(config: &ClarityConfig, actions: &[f64], levels: &[usize], rng: &mut impl Rng) -> Result<RunStats> {
    let uniform = Uniform::new_inclusive(0.0, 100.0).expect("valid bounds");
    let noise = (config.action_noise_sd > 0.0).then(|| Normal::new(0.0, config.action_noise_sd).expect("sd checked"));
    let played: Vec<f64> = levels
        .iter()
        .map(|&k| {
            let base = if k == 0 && config.level0 == Level0Behavior::Uniform {
                uniform.sample(rng)
            } else {
                actions[k]
            };
            match &noise {
                Some(d) => base + d.sample(rng),
                None => base,
            }
        })
        .collect();
    let target = config.m * played.iter().sum::<f64>() / played.len() as f64;
    let payoffs: Vec<f64> = played
        .iter()
        .map(|a| (-config.lambda * (a - target).abs()).exp())
        .collect();

    let total_pay: f64 = payoffs.iter().sum();
    let mut pay = [0.0; 6];
    let mut count = [0usize; 6];
    for (&k, &pi) in levels.iter().zip(&payoffs) {
        pay[bucket(k)] += pi;
        count[bucket(k)] += 1;
    }
    let mut advantage = [None; 6];
    for b in 0..6 {
        if count[b] > 0 {
            let share_pop = count[b] as f64 / levels.len() as f64;
            advantage[b] = Some((pay[b] / total_pay) / share_pop);
        }
    }
    Ok(RunStats {
        gini: gini(&payoffs, None)?,
        advantage,
    })
}

/// Run `r` uses stream `r` at every `p`, so the same population is replayed
/// across the grid.
pub fn cost_of_clarity_experiment(config: &ClarityConfig) -> Result<InequalityCurve> {
    if config.n == 0 || config.mc_runs == 0 {
        return Err(domain("population size and run count must be positive"));
    }
    if !(config.lambda > 0.0 && config.m > 0.0 && config.m < 1.0 && config.action_noise_sd >= 0.0) {
        return Err(domain("clarity parameters out of range"));
    }
    let prior = TruePrior::poisson(config.tau, config.k_max)?;
    let rule = GameRule::beauty_contest(50.0, config.m)?;
    let profiles: Vec<Vec<f64>> = config
        .p_grid
        .iter()
        .map(|&p| action_profile(&prior, rule, p).map(|a| a.actions))
        .collect::<Result<_>>()?;

    // runs[r][i] for grid point i
    let runs: Vec<Vec<RunStats>> = (0..config.mc_runs as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = stream_rng(config.seed, Stream::Clarity, r);
            let levels = sample_levels(&prior, config.n, &mut rng);
            profiles
                .iter()
                .enumerate()
                .map(|(i, actions)| {
                    let mut draw_rng = stream_rng(config.seed, Stream::ClarityDraws, (r << 20) | i as u64);
                    one_run(config, actions, &levels, &mut draw_rng)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let n_p = config.p_grid.len();
    let mut gini_mean = vec![0.0; n_p];
    let mut adv = vec![vec![0.0; n_p]; 6];
    let mut adv_n = vec![vec![0usize; n_p]; 6];
    for run in &runs {
        for (i, st) in run.iter().enumerate() {
            gini_mean[i] += st.gini;
            for b in 0..6 {
                if let Some(v) = st.advantage[b] {
                    adv[b][i] += v;
                    adv_n[b][i] += 1;
                }
            }
        }
    }
    for g in &mut gini_mean {
        *g /= config.mc_runs as f64;
    }
    for b in 0..6 {
        for i in 0..n_p {
            adv[b][i] = if adv_n[b][i] > 0 {
                adv[b][i] / adv_n[b][i] as f64
            } else {
                0.0
            };
        }
    }
    Ok(InequalityCurve {
        p_grid: config.p_grid.clone(),
        gini: gini_mean,
        relative_advantage: adv,
    })
}

/// Gini of deterministic per-level losses `L_k = (s_k - γ s̄)²`, weighted by `f`.
pub fn gini_of_losses(prior: &TruePrior, gamma: f64, p: f64) -> Result<f64> {
    let rule = GameRule::beauty_contest(50.0, gamma)?;
    let actions = action_profile(prior, rule, p)?.actions;
    let f = prior.population_weights();
    let s_bar: f64 = f.iter().zip(&actions).map(|(w, s)| w * s).sum();
    let losses: Vec<f64> = actions.iter().map(|s| (s - gamma * s_bar).powi(2)).collect();
    gini(&losses, Some(&f))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> ClarityConfig {
        ClarityConfig {
            n: 300,
            mc_runs: 8,
            p_grid: clarity_p_grid(4),
            seed: 3,
            ..ClarityConfig::default()
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = cost_of_clarity_experiment(&small()).unwrap();
        let b = cost_of_clarity_experiment(&small()).unwrap();
        assert_eq!(a, b);
        let c = cost_of_clarity_experiment(&ClarityConfig { seed: 4, ..small() }).unwrap();
        assert_ne!(a.gini, c.gini);
    }

    #[test]
    fn curve_shapes() {
        let curve = cost_of_clarity_experiment(&small()).unwrap();
        assert_eq!(curve.gini.len(), 4);
        assert_eq!(curve.relative_advantage.len(), 6);
        assert!(curve.gini.iter().all(|g| (0.0..=1.0).contains(g)));
        assert!(curve.relative_advantage.iter().flatten().all(|v| *v >= 0.0));
    }

    #[test]
    fn uniform_level_zero_variant_runs() {
        let cfg = ClarityConfig {
            level0: Level0Behavior::Uniform,
            action_noise_sd: 0.0,
            ..small()
        };
        let curve = cost_of_clarity_experiment(&cfg).unwrap();
        assert!(curve.gini.iter().all(|g| g.is_finite()));
    }

    #[test]
    fn grid_endpoints() {
        let g = clarity_p_grid(50);
        assert_eq!(g.len(), 50);
        assert!((g[0] - 0.01).abs() < 1e-15 && g[49] == 1.0);
    }

    #[test]
    fn loss_gini_in_unit_interval() {
        let prior = TruePrior::poisson(1.5, 20).unwrap();
        for p in [0.01, 0.5, 1.0] {
            let g = gini_of_losses(&prior, 2.0 / 3.0, p).unwrap();
            assert!((0.0..=1.0).contains(&g));
        }
    }
}
