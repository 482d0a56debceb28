//! Per-level equilibrium actions under biased beliefs.

use serde::{Deserialize, Serialize};

use crate::beliefs::{belief, belief_limit_small_p, check_p, Belief};
use crate::error::{domain, Result};
use crate::prior::TruePrior;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GameRule {
    /// Level 0 plays `anchor`; level `k` plays `multiplier · E_{g_k}[s_H]`.
    BeautyContest { anchor: f64, multiplier: f64 },
    /// Level 0 plays 0; level `k` plays `alpha · E_{g_k}[H]`.
    LinearComplements { alpha: f64 },
}

impl Default for GameRule {
    fn default() -> Self {
        GameRule::BeautyContest {
            anchor: 50.0,
            multiplier: 2.0 / 3.0,
        }
    }
}

impl GameRule {
    pub fn beauty_contest(anchor: f64, multiplier: f64) -> Result<Self> {
        let rule = GameRule::BeautyContest { anchor, multiplier };
        rule.validate()?;
        Ok(rule)
    }

    pub fn linear_complements(alpha: f64) -> Result<Self> {
        let rule = GameRule::LinearComplements { alpha };
        rule.validate()?;
        Ok(rule)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            GameRule::BeautyContest { anchor, multiplier } => {
                if !(multiplier > 0.0 && multiplier < 1.0) {
                    return Err(domain(format!(
                        "beauty-contest multiplier must lie in (0,1), got {multiplier}"
                    )));
                }
                if !(anchor.is_finite() && anchor > 0.0) {
                    return Err(domain(format!("beauty-contest anchor must be positive, got {anchor}")));
                }
            }
            GameRule::LinearComplements { alpha } => {
                if !(alpha.is_finite() && alpha > 0.0) {
                    return Err(domain(format!(
                        "linear best-response slope must be positive, got {alpha}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn level0(&self) -> f64 {
        match *self {
            GameRule::BeautyContest { anchor, .. } => anchor,
            GameRule::LinearComplements { .. } => 0.0,
        }
    }

    fn respond(&self, g: &Belief, lower: &[f64]) -> f64 {
        match *self {
            GameRule::BeautyContest { multiplier, .. } => {
                multiplier * g.weights.iter().zip(lower).map(|(w, s)| w * s).sum::<f64>()
            }
            GameRule::LinearComplements { alpha } => alpha * g.moments().mean,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ActionProfile {
    /// `0.0` for the level-k (`p → 0`) regime.
    pub p: f64,
    pub rule: GameRule,
    /// `s_0, …, s_{k_max}`.
    pub actions: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PopulationStats {
    pub mean_action: f64,
    pub variance_action: f64,
}

fn build_profile(
    prior: &TruePrior,
    rule: GameRule,
    p: f64,
    mut belief_at: impl FnMut(usize) -> Result<Belief>,
) -> Result<ActionProfile> {
    rule.validate()?;
    let mut actions = Vec::with_capacity(prior.k_max() + 1);
    actions.push(rule.level0());
    for k in 1..=prior.k_max() {
        let g = belief_at(k)?;
        let s = rule.respond(&g, &actions[..k]);
        actions.push(s);
    }
    Ok(ActionProfile { p, rule, actions })
}

/// Actions `s_0..=s_{k_max}` at transparency `p`. Each `s_k` only reads
/// `s_0..s_{k-1}`.
pub fn action_profile(prior: &TruePrior, rule: GameRule, p: f64) -> Result<ActionProfile> {
    check_p(p)?;
    build_profile(prior, rule, p, |k| belief(prior, k, p))
}

/// Actions in the level-k regime, where every agent believes all others sit
/// one level below.
pub fn action_profile_limit(prior: &TruePrior, rule: GameRule) -> Result<ActionProfile> {
    build_profile(prior, rule, 0.0, |k| belief_limit_small_p(prior, k))
}

/// `S(p)` and `V(p)`: mean and variance of actions weighted by `f`,
/// renormalized over `0..=k_max`.
pub fn population_stats(profile: &ActionProfile, prior: &TruePrior) -> Result<PopulationStats> {
    if profile.actions.len() != prior.k_max() + 1 {
        return Err(domain(format!(
            "profile has {} actions but prior covers {} levels",
            profile.actions.len(),
            prior.k_max() + 1
        )));
    }
    Ok(weighted_stats(&prior.population_weights(), &profile.actions))
}

pub(crate) fn weighted_stats(weights: &[f64], actions: &[f64]) -> PopulationStats {
    let mean_action: f64 = weights.iter().zip(actions).map(|(f, s)| f * s).sum();
    let variance_action = weights
        .iter()
        .zip(actions)
        .map(|(f, s)| f * (s - mean_action).powi(2))
        .sum();
    PopulationStats {
        mean_action,
        variance_action,
    }
}

/// Aggregate effort `S*(p)` along a strictly increasing grid, for the
/// linear strategic-complements game only.
pub fn aggregate_effort_curve(prior: &TruePrior, rule: GameRule, p_grid: &[f64]) -> Result<Vec<(f64, f64)>> {
    if !matches!(rule, GameRule::LinearComplements { .. }) {
        return Err(domain(
            "aggregate effort monotonicity applies to strategic complements only",
        ));
    }
    check_grid(p_grid)?;
    p_grid
        .iter()
        .map(|&p| {
            let profile = action_profile(prior, rule, p)?;
            Ok((p, population_stats(&profile, prior)?.mean_action))
        })
        .collect()
}

pub(crate) fn check_grid(p_grid: &[f64]) -> Result<()> {
    if p_grid.is_empty() {
        return Err(domain("empty p grid"));
    }
    for &p in p_grid {
        check_p(p)?;
    }
    if p_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(domain("p grid must be strictly increasing"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn bc() -> GameRule {
        GameRule::default()
    }

    #[test]
    fn level_one_plays_two_thirds_of_anchor() {
        let prior = TruePrior::poisson(1.5, 20).unwrap();
        for p in [0.05, 0.5, 1.0] {
            let prof = action_profile(&prior, bc(), p).unwrap();
            assert_eq!(prof.actions[0], 50.0);
            assert_relative_eq!(prof.actions[1], 100.0 / 3.0, max_relative = 1e-14);
        }
    }

    #[test]
    fn limit_regime_is_geometric_iteration() {
        let prior = TruePrior::poisson(1.5, 20).unwrap();
        let prof = action_profile_limit(&prior, bc()).unwrap();
        for (k, s) in prof.actions.iter().enumerate() {
            assert_relative_eq!(*s, 50.0 * (2.0f64 / 3.0).powi(k as i32), max_relative = 1e-12);
        }
    }

    #[test]
    fn level_two_hand_computation() {
        let prior = TruePrior::poisson(1.5, 20).unwrap();
        let (f0, f1) = ((-1.5f64).exp(), 1.5 * (-1.5f64).exp());
        let expected = (2.0 / 3.0) * (50.0 * f0 + (100.0 / 3.0) * f1) / (f0 + f1);
        let prof = action_profile(&prior, bc(), 1.0).unwrap();
        assert_relative_eq!(prof.actions[2], expected, max_relative = 1e-13);
    }

    #[test]
    fn beauty_contest_actions_decrease_in_level() {
        let prior = TruePrior::poisson(2.5, 20).unwrap();
        for p in [0.05, 0.3, 0.7, 1.0] {
            let a = action_profile(&prior, bc(), p).unwrap().actions;
            assert!(a.windows(2).all(|w| w[1] < w[0]));
            assert!(a.iter().all(|s| *s > 0.0 && *s <= 50.0));
        }
    }

    #[test]
    fn stats_of_constant_and_two_point() {
        let prior = TruePrior::custom(&[1.0, 1.0, 1.0]).unwrap();
        let prof = ActionProfile {
            p: 1.0,
            rule: bc(),
            actions: vec![7.0; 3],
        };
        let st = population_stats(&prof, &prior).unwrap();
        assert_relative_eq!(st.mean_action, 7.0, max_relative = 1e-14);
        assert!(st.variance_action.abs() < 1e-24);

        let prior = TruePrior::custom(&[0.5, 0.5]).unwrap();
        let prof = ActionProfile {
            p: 1.0,
            rule: bc(),
            actions: vec![50.0, 100.0 / 3.0],
        };
        let st = population_stats(&prof, &prior).unwrap();
        assert_relative_eq!(st.mean_action, 125.0 / 3.0, max_relative = 1e-14);
        assert_relative_eq!(st.variance_action, (25.0f64 / 3.0).powi(2), max_relative = 1e-13);
    }

    #[test]
    fn aggregate_effort_rejects_beauty_contest() {
        let prior = TruePrior::poisson(3.0, 20).unwrap();
        assert!(aggregate_effort_curve(&prior, bc(), &[0.5]).is_err());
        let lin = GameRule::linear_complements(1.0).unwrap();
        assert_eq!(aggregate_effort_curve(&prior, lin, &[0.5]).unwrap().len(), 1);
        assert!(aggregate_effort_curve(&prior, lin, &[0.5, 0.5]).is_err());
    }

    #[test]
    fn rule_validation() {
        assert!(GameRule::beauty_contest(50.0, 1.0).is_err());
        assert!(GameRule::beauty_contest(-1.0, 0.5).is_err());
        assert!(GameRule::linear_complements(0.0).is_err());
    }
}
