//! The objective distribution of cognitive levels, truncated to `0..=k_max`.

use serde::{Deserialize, Serialize};
use statrs::function::factorial::ln_factorial;

use crate::error::{domain, Result};

/// Truncation bound used when none is given.
pub const DEFAULT_K_MAX: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum PriorKind {
    Poisson {
        tau: f64,
    },
    Geometric {
        q: f64,
    },
    /// Positive weights over `0..=k_max`, normalized on construction.
    Custom {
        weights: Vec<f64>,
    },
}

/// True prior `f(h)` over levels `0..=k_max`.
///
/// Poisson and geometric masses are the untruncated pmf values; only
/// [`TruePrior::population_weights`] renormalizes over the support.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TruePrior {
    kind: PriorKind,
    k_max: usize,
}

impl TruePrior {
    pub fn poisson(tau: f64, k_max: usize) -> Result<Self> {
        if !(tau.is_finite() && tau > 0.0) {
            return Err(domain(format!("poisson tau must be positive, got {tau}")));
        }
        Self::check_k_max(k_max)?;
        Ok(Self {
            kind: PriorKind::Poisson { tau },
            k_max,
        })
    }

    pub fn geometric(q: f64, k_max: usize) -> Result<Self> {
        if !(q > 0.0 && q < 1.0) {
            return Err(domain(format!("geometric q must lie in (0,1), got {q}")));
        }
        Self::check_k_max(k_max)?;
        Ok(Self {
            kind: PriorKind::Geometric { q },
            k_max,
        })
    }

    /// Custom weights over `0..=weights.len()-1`; every entry must be strictly positive.
    pub fn custom(weights: &[f64]) -> Result<Self> {
        if weights.is_empty() {
            return Err(domain("custom prior needs at least one weight"));
        }
        if let Some((h, w)) = weights.iter().enumerate().find(|(_, w)| !(w.is_finite() && **w > 0.0)) {
            return Err(domain(format!(
                "custom prior weight at h={h} must be positive, got {w}"
            )));
        }
        let total: f64 = weights.iter().sum();
        Ok(Self {
            kind: PriorKind::Custom {
                weights: weights.iter().map(|w| w / total).collect(),
            },
            k_max: weights.len() - 1,
        })
    }

    /// Rebuilds a prior from its serialized parts, re-running validation.
    pub fn from_kind(kind: PriorKind, k_max: usize) -> Result<Self> {
        match kind {
            PriorKind::Poisson { tau } => Self::poisson(tau, k_max),
            PriorKind::Geometric { q } => Self::geometric(q, k_max),
            PriorKind::Custom { weights } => {
                if weights.len() != k_max + 1 {
                    return Err(domain(format!(
                        "custom prior has {} weights but k_max={k_max}",
                        weights.len()
                    )));
                }
                Self::custom(&weights)
            }
        }
    }

    fn check_k_max(k_max: usize) -> Result<()> {
        if k_max == 0 {
            return Err(domain("k_max must be at least 1"));
        }
        Ok(())
    }

    pub fn kind(&self) -> &PriorKind {
        &self.kind
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    /// Poisson rate, if this is a Poisson prior.
    pub fn poisson_tau(&self) -> Option<f64> {
        match self.kind {
            PriorKind::Poisson { tau } => Some(tau),
            _ => None,
        }
    }

    /// `ln f(h)`. Defined for every `h` for parametric priors; custom priors
    /// only cover `0..=k_max`.
    pub fn ln_mass(&self, h: usize) -> f64 {
        match &self.kind {
            PriorKind::Poisson { tau } => ln_poisson(h, *tau),
            PriorKind::Geometric { q } => h as f64 * (1.0 - q).ln() + q.ln(),
            PriorKind::Custom { weights } => weights[h].ln(),
        }
    }

    pub fn mass(&self, h: usize) -> f64 {
        match &self.kind {
            PriorKind::Custom { weights } => weights[h],
            _ => self.ln_mass(h).exp(),
        }
    }

    /// Masses `f(0..=k_max)` as stored (not renormalized).
    pub fn masses(&self) -> Vec<f64> {
        (0..=self.k_max).map(|h| self.mass(h)).collect()
    }

    /// Masses renormalized over `0..=k_max`, used wherever `f` acts as a
    /// population distribution.
    pub fn population_weights(&self) -> Vec<f64> {
        let m = self.masses();
        let total: f64 = m.iter().sum();
        m.into_iter().map(|w| w / total).collect()
    }
}

pub(crate) fn ln_poisson(h: usize, lambda: f64) -> f64 {
    -lambda + h as f64 * lambda.ln() - ln_factorial(h as u64)
}

/// Poisson pmf at `h` with rate `lambda`.
pub fn poisson_pmf(h: usize, lambda: f64) -> f64 {
    ln_poisson(h, lambda).exp()
}
