//! Checkers for the structural properties of biased beliefs: log-concavity,
//! likelihood-ratio and first-order dominance in `p`, hierarchy expansion in
//! `k`, and the total-variation distance to the shifted Poisson limit.

use serde::{Deserialize, Serialize};

use crate::beliefs::{belief, check_p};
use crate::error::{domain, Result};
use crate::prior::{ln_poisson, TruePrior};

const PMF_TOL: f64 = 1e-9;
const LOG_CONCAVE_REL_TOL: f64 = 1e-10;
const STRICT_MARGIN: f64 = 1e-12;
const ODDS_REL_TOL: f64 = 1e-10;
const FOSD_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "at", rename_all = "snake_case")]
pub enum Witness {
    Index { h: usize, values: Vec<f64> },
    Pair { h1: usize, h2: usize, values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrderReport {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl OrderReport {
    fn pass() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: Witness) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }
}

fn check_pmf(dist: &[f64], strictly_positive: bool) -> Result<()> {
    if dist.is_empty() {
        return Err(domain("empty distribution"));
    }
    for (h, &w) in dist.iter().enumerate() {
        let ok = if strictly_positive { w > 0.0 } else { w >= 0.0 };
        if !(ok && w.is_finite()) {
            return Err(domain(format!("invalid mass {w} at h={h}")));
        }
    }
    let total: f64 = dist.iter().sum();
    if (total - 1.0).abs() > PMF_TOL {
        return Err(domain(format!("masses sum to {total}, not 1")));
    }
    Ok(())
}

/// `q(h)^2 >= q(h-1) q(h+1)` at every interior point.
pub fn check_log_concavity(dist: &[f64]) -> Result<OrderReport> {
    check_pmf(dist, true)?;
    for h in 1..dist.len().saturating_sub(1) {
        let (lo, mid, hi) = (dist[h - 1], dist[h], dist[h + 1]);
        if mid * mid < lo * hi * (1.0 - LOG_CONCAVE_REL_TOL) {
            return Ok(OrderReport::fail(Witness::Index {
                h,
                values: vec![lo, mid, hi],
            }));
        }
    }
    Ok(OrderReport::pass())
}

/// Whether `Λ(h) = g_k(h | p_lo) / g_k(h | p_hi)` is strictly increasing in `h`.
///
/// Strictness is judged on successive differences of `ln Λ`, which stay
/// well-scaled even when `Λ` itself spans many orders of magnitude.
pub fn check_mlrp_in_p(prior: &TruePrior, level: usize, p_hi: f64, p_lo: f64) -> Result<OrderReport> {
    check_p(p_hi)?;
    check_p(p_lo)?;
    if p_lo >= p_hi {
        return Err(domain(format!("need p_lo < p_hi, got p_lo={p_lo}, p_hi={p_hi}")));
    }
    if level < 2 {
        return Err(domain("likelihood-ratio check needs level >= 2"));
    }
    let lo = belief(prior, level, p_lo)?;
    let hi = belief(prior, level, p_hi)?;
    let ln_ratio: Vec<f64> = lo
        .weights
        .iter()
        .zip(&hi.weights)
        .map(|(a, b)| a.ln() - b.ln())
        .collect();
    for h in 1..level {
        if ln_ratio[h] - ln_ratio[h - 1] <= STRICT_MARGIN {
            return Ok(OrderReport::fail(Witness::Pair {
                h1: h - 1,
                h2: h,
                values: vec![ln_ratio[h - 1].exp(), ln_ratio[h].exp()],
            }));
        }
    }
    Ok(OrderReport::pass())
}

/// Whether `dist_hi` first-order dominates `dist_lo`: its CDF is pointwise no
/// larger. The shorter input is padded with zeros.
pub fn check_fosd(dist_hi: &[f64], dist_lo: &[f64]) -> Result<OrderReport> {
    check_pmf(dist_hi, false)?;
    check_pmf(dist_lo, false)?;
    let n = dist_hi.len().max(dist_lo.len());
    let (mut cdf_hi, mut cdf_lo) = (0.0, 0.0);
    for h in 0..n {
        cdf_hi += dist_hi.get(h).copied().unwrap_or(0.0);
        cdf_lo += dist_lo.get(h).copied().unwrap_or(0.0);
        if cdf_hi > cdf_lo + FOSD_TOL {
            return Ok(OrderReport::fail(Witness::Index {
                h,
                values: vec![cdf_hi, cdf_lo],
            }));
        }
    }
    Ok(OrderReport::pass())
}

/// Compares the belief of a level-`level` agent with that of a
/// level-`level-1` agent: relative odds on the common support must agree and
/// the new top type `level-1` must receive positive mass.
pub fn check_hierarchy_expansion(prior: &TruePrior, level: usize, p: f64) -> Result<OrderReport> {
    if level < 2 {
        return Err(domain("hierarchy expansion needs level >= 2"));
    }
    let upper = belief(prior, level, p)?;
    let lower = belief(prior, level - 1, p)?;
    let common = level - 1;
    for h2 in 1..common {
        for h1 in 0..h2 {
            let a = upper.weights[h2] / upper.weights[h1];
            let b = lower.weights[h2] / lower.weights[h1];
            if (a - b).abs() > ODDS_REL_TOL * a.abs().max(b.abs()) {
                return Ok(OrderReport::fail(Witness::Pair {
                    h1,
                    h2,
                    values: vec![a, b],
                }));
            }
        }
    }
    let top = upper.weights[common];
    if top <= 0.0 {
        return Ok(OrderReport::fail(Witness::Index {
            h: common,
            values: vec![top, 0.0],
        }));
    }
    Ok(OrderReport::pass())
}

/// Total-variation distance between `g_k` (zero above `k-1`) and
/// `Poisson(τ/p)`.
///
/// The Poisson tail is summed term by term until terms drop below `1e-300`
/// or fall under `1e-17` relative to the tail accumulated so far once past
/// the mode; the omitted remainder is below `1e-12`.
pub fn tv_distance_to_poisson_limit(prior: &TruePrior, level: usize, p: f64) -> Result<f64> {
    let tau = prior
        .poisson_tau()
        .ok_or_else(|| domain("Poisson-shift limit requires a Poisson prior"))?;
    let g = belief(prior, level, p)?;
    let lambda = tau / p;

    let head: f64 = g
        .weights
        .iter()
        .enumerate()
        .map(|(h, w)| (w - ln_poisson(h, lambda).exp()).abs())
        .sum();

    let mut tail = 0.0;
    let mut h = level;
    loop {
        let term = ln_poisson(h, lambda).exp();
        tail += term;
        let past_mode = h as f64 > lambda;
        if past_mode && (term < 1e-300 || term <= 1e-17 * tail) {
            break;
        }
        h += 1;
    }
    Ok(0.5 * (head + tail))
}
