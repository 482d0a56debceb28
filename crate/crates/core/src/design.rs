//! Planner-side tools: welfare objectives over `p`, optimal transparency
//! design by projected gradient ascent, the cognitive first-order
//! condition, and the per-level sensitivity index.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beliefs::{belief, check_p};
use crate::error::{domain, Error, Result};
use crate::games::{action_profile, check_grid, population_stats, GameRule, PopulationStats};
use crate::prior::{poisson_pmf, TruePrior};

/// Default lower end of welfare grids.
pub const DEFAULT_P_MIN: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InnovationParams {
    pub scale: f64,
    pub mean_exponent: f64,
    pub dispersion_exponent: f64,
    pub dispersion_floor: f64,
    pub info_cost: f64,
    pub cost_exponent: f64,
}

impl Default for InnovationParams {
    /// Repository calibration; the published figure does not list its constants.
    fn default() -> Self {
        Self {
            scale: 1.0,
            mean_exponent: 1.0,
            dispersion_exponent: 0.5,
            dispersion_floor: 0.01,
            info_cost: 0.35,
            cost_exponent: 2.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum WelfareObjective {
    /// `-Σ f(k) (s_k - γ s̄)²`.
    QuadraticCoordination { gamma: f64 },
    /// `(1 - Ŝ) - λ V̂`.
    Competition { lambda: f64 },
    /// `1 - L̂_BC` with `L_BC = V + (1-m)² S²`.
    Stability { m: f64 },
    /// `A Ŝ^α (V̂ + ε)^β - c p^ρ`.
    Innovation(InnovationParams),
    /// `Σ f(k) E_{g_k}[H] - c (1 - p)`.
    MeanSophisticationMinusOpacityCost { c: f64 },
}

impl WelfareObjective {
    pub fn competition() -> Self {
        WelfareObjective::Competition { lambda: 0.25 }
    }

    pub fn stability() -> Self {
        WelfareObjective::Stability { m: 2.0 / 3.0 }
    }

    pub fn innovation() -> Self {
        WelfareObjective::Innovation(InnovationParams::default())
    }

    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            WelfareObjective::QuadraticCoordination { gamma } => gamma > 0.0 && gamma < 1.0,
            WelfareObjective::Competition { lambda } => lambda >= 0.0 && lambda.is_finite(),
            WelfareObjective::Stability { m } => m > 0.0 && m < 1.0,
            WelfareObjective::Innovation(ip) => {
                ip.mean_exponent > 0.0
                    && ip.dispersion_exponent > 0.0
                    && ip.dispersion_floor > 0.0
                    && ip.cost_exponent >= 1.0
                    && ip.scale.is_finite()
                    && ip.info_cost.is_finite()
            }
            WelfareObjective::MeanSophisticationMinusOpacityCost { c } => c > 0.0 && c.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(domain(format!("objective parameters out of range: {self:?}")))
        }
    }

    /// Whether the objective is defined on min-max normalized statistics.
    pub fn needs_normalization(&self) -> bool {
        matches!(
            self,
            WelfareObjective::Competition { .. } | WelfareObjective::Stability { .. } | WelfareObjective::Innovation(_)
        )
    }

    fn bc_multiplier(&self, rule: &GameRule) -> f64 {
        match (*self, *rule) {
            (WelfareObjective::Stability { m }, _) => m,
            (_, GameRule::BeautyContest { multiplier, .. }) => multiplier,
            _ => 2.0 / 3.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Range {
    pub min: f64,
    pub max: f64,
}

impl Range {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        values.fold(
            Range {
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            },
            |r, v| Range {
                min: r.min.min(v),
                max: r.max.max(v),
            },
        )
    }

    /// Min-max scaling; a degenerate range maps everything to 0.
    pub fn scale(&self, x: f64) -> f64 {
        if self.max > self.min {
            (x - self.min) / (self.max - self.min)
        } else {
            0.0
        }
    }
}

/// Ranges of `S`, `V` and `L_BC` over the evaluated grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    pub mean_action: Range,
    pub variance_action: Range,
    pub bc_loss: Range,
}

fn bc_loss(stats: &PopulationStats, m: f64) -> f64 {
    stats.variance_action + (1.0 - m).powi(2) * stats.mean_action.powi(2)
}

/// `Σ_k f(k) E_{g_k}[H]`, with level 0 contributing nothing.
pub fn mean_sophistication(prior: &TruePrior, p: f64) -> Result<f64> {
    let f = prior.population_weights();
    let mut total = 0.0;
    for (k, fk) in f.iter().enumerate().skip(1) {
        total += fk * belief(prior, k, p)?.moments().mean;
    }
    Ok(total)
}

/// `Σ_k f(k) Var_{g_k}(H)`.
pub fn aggregate_belief_variance(prior: &TruePrior, p: f64) -> Result<f64> {
    let f = prior.population_weights();
    let mut total = 0.0;
    for (k, fk) in f.iter().enumerate().skip(1) {
        total += fk * belief(prior, k, p)?.moments().variance;
    }
    Ok(total)
}

fn objective_from_stats(
    obj: &WelfareObjective,
    rule: &GameRule,
    p: f64,
    stats: &PopulationStats,
    norm: Option<&Normalization>,
) -> Result<f64> {
    let norm = || norm.ok_or_else(|| Error::Precondition(format!("objective {obj:?} needs a normalization record")));
    Ok(match *obj {
        WelfareObjective::Competition { lambda } => {
            let n = norm()?;
            (1.0 - n.mean_action.scale(stats.mean_action)) - lambda * n.variance_action.scale(stats.variance_action)
        }
        WelfareObjective::Stability { m } => {
            let n = norm()?;
            1.0 - n.bc_loss.scale(bc_loss(stats, m))
        }
        WelfareObjective::Innovation(ip) => {
            let n = norm()?;
            let s_hat = n.mean_action.scale(stats.mean_action);
            let v_hat = n.variance_action.scale(stats.variance_action);
            ip.scale * s_hat.powf(ip.mean_exponent) * (v_hat + ip.dispersion_floor).powf(ip.dispersion_exponent)
                - ip.info_cost * p.powf(ip.cost_exponent)
        }
        // Σ f (s_k - γ s̄)² = V + (1-γ)² S²
        WelfareObjective::QuadraticCoordination { gamma } => -bc_loss(stats, gamma),
        WelfareObjective::MeanSophisticationMinusOpacityCost { .. } => {
            unreachable!("handled without an action profile: {rule:?}")
        }
    })
}

/// Welfare at a single `p`. Normalized objectives need `norm`, usually taken
/// from a [`WelfareCurve`] over the full grid.
pub fn welfare_value(
    prior: &TruePrior,
    rule: GameRule,
    obj: &WelfareObjective,
    p: f64,
    norm: Option<&Normalization>,
) -> Result<f64> {
    check_p(p)?;
    obj.validate()?;
    match *obj {
        WelfareObjective::MeanSophisticationMinusOpacityCost { c } => {
            Ok(mean_sophistication(prior, p)? - c * (1.0 - p))
        }
        WelfareObjective::QuadraticCoordination { gamma } => {
            let profile = action_profile(prior, rule, p)?;
            let f = prior.population_weights();
            let s_bar: f64 = f.iter().zip(&profile.actions).map(|(w, s)| w * s).sum();
            Ok(-f
                .iter()
                .zip(&profile.actions)
                .map(|(w, s)| w * (s - gamma * s_bar).powi(2))
                .sum::<f64>())
        }
        _ => {
            let stats = population_stats(&action_profile(prior, rule, p)?, prior)?;
            objective_from_stats(obj, &rule, p, &stats, norm)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WelfareCurve {
    pub objective: WelfareObjective,
    pub p_grid: Vec<f64>,
    pub mean_action: Vec<f64>,
    pub variance_action: Vec<f64>,
    pub values: Vec<f64>,
    pub argmax_p: f64,
    pub normalization: Normalization,
}

impl WelfareCurve {
    pub fn max_value(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Evenly spaced grid from `p_min` to 1 inclusive.
pub fn p_grid(p_min: f64, points: usize) -> Vec<f64> {
    assert!(points >= 2, "a grid needs at least two points");
    (0..points)
        .map(|i| {
            if i + 1 == points {
                1.0
            } else {
                p_min + (1.0 - p_min) * i as f64 / (points - 1) as f64
            }
        })
        .collect()
}

/// Two passes: population statistics over the grid (fixing the
/// normalization), then the objective.
pub fn welfare_curve(
    prior: &TruePrior,
    rule: GameRule,
    obj: &WelfareObjective,
    p_grid: &[f64],
) -> Result<WelfareCurve> {
    obj.validate()?;
    check_grid(p_grid)?;
    if p_grid.len() < 2 {
        return Err(domain("welfare curve needs at least two grid points"));
    }
    let stats: Vec<PopulationStats> = p_grid
        .par_iter()
        .map(|&p| population_stats(&action_profile(prior, rule, p)?, prior))
        .collect::<Result<_>>()?;

    let m = obj.bc_multiplier(&rule);
    let normalization = Normalization {
        mean_action: Range::of(stats.iter().map(|s| s.mean_action)),
        variance_action: Range::of(stats.iter().map(|s| s.variance_action)),
        bc_loss: Range::of(stats.iter().map(|s| bc_loss(s, m))),
    };

    let values: Vec<f64> = p_grid
        .par_iter()
        .zip(&stats)
        .map(|(&p, st)| match obj {
            WelfareObjective::MeanSophisticationMinusOpacityCost { .. } => welfare_value(prior, rule, obj, p, None),
            _ => objective_from_stats(obj, &rule, p, st, Some(&normalization)),
        })
        .collect::<Result<_>>()?;

    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    Ok(WelfareCurve {
        objective: *obj,
        p_grid: p_grid.to_vec(),
        mean_action: stats.iter().map(|s| s.mean_action).collect(),
        variance_action: stats.iter().map(|s| s.variance_action).collect(),
        values,
        argmax_p: p_grid[best],
        normalization,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OtdConfig {
    pub epsilon: f64,
    pub max_iter: usize,
    pub learning_rate: f64,
    pub fd_step: f64,
    pub p_init: f64,
    pub k_max: usize,
}

impl Default for OtdConfig {
    fn default() -> Self {
        Self {
            epsilon: 1e-4,
            max_iter: 500,
            learning_rate: 0.1,
            fd_step: 1e-3,
            p_init: 0.5,
            k_max: crate::prior::DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OtdResult {
    pub p_star: f64,
    pub welfare: f64,
    pub iterations: usize,
    pub converged: bool,
    /// `(p, W(p))` starting at `p_init`, one entry per iteration after it.
    pub trace: Vec<(f64, f64)>,
}

const OTD_FLOOR: f64 = 0.01;

/// Coordination welfare used by the ascent loop: actions from `s_0 = 50`,
/// raw Poisson weights `f(k; τ̂)` over `0..=k_max`.
fn otd_welfare(tau_hat: f64, gamma: f64, k_max: usize, p: f64) -> f64 {
    let f: Vec<f64> = (0..=k_max).map(|k| poisson_pmf(k, tau_hat)).collect();
    let mut s = vec![50.0; k_max + 1];
    for k in 1..=k_max {
        let w: Vec<f64> = (0..k).map(|h| p.powi((k - h) as i32) * f[h]).collect();
        let z: f64 = w.iter().sum();
        let expected: f64 = w.iter().zip(&s[..k]).map(|(wh, sh)| wh / z * sh).sum();
        s[k] = gamma * expected;
    }
    let s_bar: f64 = f.iter().zip(&s).map(|(fk, sk)| fk * sk).sum();
    -f.iter()
        .zip(&s)
        .map(|(fk, sk)| fk * (sk - gamma * s_bar).powi(2))
        .sum::<f64>()
}

/// Projected gradient ascent on coordination welfare with a central
/// finite-difference gradient. The stencil is clipped to `[0.01, 1]`.
pub fn otd_optimize(tau_hat: f64, gamma: f64, config: &OtdConfig) -> Result<OtdResult> {
    if !(tau_hat > 0.0 && tau_hat.is_finite()) {
        return Err(domain(format!("tau_hat must be positive, got {tau_hat}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(domain(format!("gamma must lie in (0,1), got {gamma}")));
    }
    if !(config.epsilon > 0.0 && config.learning_rate > 0.0 && config.fd_step > 0.0 && config.k_max >= 1) {
        return Err(domain("OTD config values must be positive"));
    }
    check_p(config.p_init)?;

    let w = |p: f64| otd_welfare(tau_hat, gamma, config.k_max, p);
    let mut p = config.p_init;
    let mut trace = vec![(p, w(p))];
    let mut converged = false;
    let mut t = 0;
    while t < config.max_iter && !converged {
        let hi = (p + config.fd_step).min(1.0);
        let lo = (p - config.fd_step).max(OTD_FLOOR);
        let grad = (w(hi) - w(lo)) / (hi - lo);

        let p_old = p;
        p = (p + config.learning_rate * grad).clamp(OTD_FLOOR, 1.0);
        trace.push((p, w(p)));
        if (p - p_old).abs() < config.epsilon {
            converged = true;
        }
        t += 1;
    }
    Ok(OtdResult {
        p_star: p,
        welfare: w(p),
        iterations: t,
        converged,
        trace,
    })
}

/// `Σ_k f(k) Var_{g_k}(H) - c p`. Its sign is opposite to `W'(p)` for
/// [`WelfareObjective::MeanSophisticationMinusOpacityCost`]: negative means
/// raising transparency still pays, and a sign change brackets an interior
/// optimum.
pub fn fo_condition_residual(prior: &TruePrior, c: f64, p: f64) -> Result<f64> {
    check_p(p)?;
    if !(c > 0.0 && c.is_finite()) {
        return Err(domain(format!("opacity cost must be positive, got {c}")));
    }
    Ok(aggregate_belief_variance(prior, p)? - c * p)
}

/// `η̄_k(p) = |∂s_k/∂p| / k` for the linear best response `s_k = α E[H]`,
/// i.e. `α Var_{g_k}(H) / (p k)`.
pub fn sensitivity_index(prior: &TruePrior, alpha: f64, level: usize, p: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(domain(format!("alpha must be positive, got {alpha}")));
    }
    let g = belief(prior, level, p)?;
    Ok(alpha * g.moments().variance / (p * level as f64))
}
