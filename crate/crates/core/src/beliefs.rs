//! The biased belief kernel `g_k(h; p) ∝ p^(k-h) f(h)` on `{0, …, k-1}`.
//!
//! A level-`k` agent only conceives of strictly lower levels, and the
//! transparency parameter `p` geometrically discounts levels that are far
//! below its own. `p = 1` gives the standard cognitive-hierarchy belief
//! (the truncated conditional of `f`), `p → 0` collapses onto `h = k-1`
//! (level-k reasoning).
//!
//! Weights are computed from log-masses `ln f(h) - h ln p` followed by a
//! max-shifted softmax; the common factor `p^k` never enters, so neither
//! small `p` nor large `k` underflows.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::prior::TruePrior;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Belief {
    pub level: usize,
    /// Transparency. `0.0` marks the `p → 0` limit belief.
    pub p: f64,
    /// `g_k(h)` for `h = 0..level`.
    pub weights: Vec<f64>,
    /// `Z_k(p) = Σ_{l<k} p^(k-l) f(l)`.
    pub partition: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeliefMoments {
    pub mean: f64,
    pub variance: f64,
}

pub(crate) fn check_p(p: f64) -> Result<()> {
    if p.is_finite() && p > 0.0 && p <= 1.0 {
        Ok(())
    } else {
        Err(domain(format!("transparency p must lie in (0, 1], got {p}")))
    }
}

fn check_level(prior: &TruePrior, level: usize) -> Result<()> {
    if level == 0 {
        return Err(domain("level-0 agents hold no belief"));
    }
    if level > prior.k_max() + 1 {
        return Err(domain(format!(
            "level {level} exceeds the truncation bound k_max+1 = {}",
            prior.k_max() + 1
        )));
    }
    Ok(())
}

/// Belief of a level-`level` agent under transparency `p`.
pub fn belief(prior: &TruePrior, level: usize, p: f64) -> Result<Belief> {
    check_p(p)?;
    check_level(prior, level)?;

    let ln_p = p.ln();
    let log_w: Vec<f64> = (0..level).map(|h| prior.ln_mass(h) - h as f64 * ln_p).collect();
    let shift = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let unnorm: Vec<f64> = log_w.iter().map(|lw| (lw - shift).exp()).collect();
    let total: f64 = unnorm.iter().sum();
    let weights = unnorm.iter().map(|w| w / total).collect();

    // ln Z = k ln p + ln Σ p^{-l} f(l)
    let ln_partition = level as f64 * ln_p + shift + total.ln();
    Ok(Belief {
        level,
        p,
        weights,
        partition: ln_partition.exp(),
    })
}

/// `ln g_k(h; p)` for `h = 0..level`, exact even where `g_k` underflows.
pub(crate) fn ln_belief_weights(prior: &TruePrior, level: usize, p: f64) -> Result<Vec<f64>> {
    check_p(p)?;
    check_level(prior, level)?;
    let ln_p = p.ln();
    let log_w: Vec<f64> = (0..level).map(|h| prior.ln_mass(h) - h as f64 * ln_p).collect();
    let shift = log_w.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ln_total = shift + log_w.iter().map(|lw| (lw - shift).exp()).sum::<f64>().ln();
    Ok(log_w.into_iter().map(|lw| lw - ln_total).collect())
}

/// The `p → 0` limit: a point mass on `h = level - 1`.
pub fn belief_limit_small_p(prior: &TruePrior, level: usize) -> Result<Belief> {
    check_level(prior, level)?;
    let mut weights = vec![0.0; level];
    weights[level - 1] = 1.0;
    Ok(Belief {
        level,
        p: 0.0,
        weights,
        partition: 0.0,
    })
}

impl Belief {
    pub fn is_limit(&self) -> bool {
        self.p == 0.0
    }

    pub fn moments(&self) -> BeliefMoments {
        let mean: f64 = self.weights.iter().enumerate().map(|(h, w)| h as f64 * w).sum();
        // Centered form; the raw-moment difference loses digits when the
        // mean is large relative to the spread.
        let variance: f64 = self
            .weights
            .iter()
            .enumerate()
            .map(|(h, w)| w * (h as f64 - mean).powi(2))
            .sum();
        BeliefMoments { mean, variance }
    }

    /// `∂ ln g_k(h) / ∂p = (E[H] - h) / p`.
    pub fn score(&self, h: usize) -> Result<f64> {
        if h >= self.level {
            return Err(domain(format!(
                "h={h} is outside the support 0..{} of a level-{} belief",
                self.level, self.level
            )));
        }
        if self.is_limit() {
            return Err(domain("score is undefined for the p → 0 limit belief"));
        }
        Ok((self.moments().mean - h as f64) / self.p)
    }

    /// `∂ E[H] / ∂p = -Var(H) / p`; never positive.
    pub fn sensitivity(&self) -> f64 {
        let var = self.moments().variance;
        if var == 0.0 {
            0.0
        } else {
            -var / self.p
        }
    }

    /// `Var(H) / E[k - H]`, the elasticity of expected cognitive distance in `p`.
    pub fn elasticity(&self) -> f64 {
        let m = self.moments();
        m.variance / (self.level as f64 - m.mean)
    }
}
