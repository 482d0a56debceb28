//! Property suite behind the `check` command: every structural identity and
//! order property evaluated over a grid of priors, levels and transparencies.

use serde::{Deserialize, Serialize};

use crate::beliefs::belief;
use crate::error::Result;
use crate::games::{action_profile, GameRule};
use crate::ordering::{
    check_fosd, check_hierarchy_expansion, check_log_concavity, check_mlrp_in_p, tv_distance_to_poisson_limit,
};
use crate::prior::TruePrior;

const SUM_TOL: f64 = 1e-12;
const FD_STEP: f64 = 1e-5;
const FD_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckRow {
    pub property: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing case, if any.
    pub example: Option<String>,
}

impl CheckRow {
    fn new(property: &str) -> Self {
        Self {
            property: property.to_string(),
            cases: 0,
            failures: 0,
            example: None,
        }
    }

    fn record(&mut self, ok: bool, case: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(case());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub priors: Vec<TruePrior>,
    pub p_grid: Vec<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        let k = crate::prior::DEFAULT_K_MAX;
        let priors = [0.5, 1.5, 3.0]
            .iter()
            .map(|&t| TruePrior::poisson(t, k).expect("valid rate"))
            .chain(
                [0.3, 0.6]
                    .iter()
                    .map(|&q| TruePrior::geometric(q, k).expect("valid ratio")),
            )
            .collect();
        Self {
            priors,
            p_grid: vec![0.1, 0.3, 0.5, 0.7, 0.9, 1.0],
        }
    }
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FD_TOL * a.abs().max(b.abs()).max(1.0)
}

pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let mut normalization = CheckRow::new("normalization");
    let mut score_mean = CheckRow::new("score_mean_zero");
    let mut score_fd = CheckRow::new("score_matches_log_derivative");
    let mut sensitivity = CheckRow::new("sensitivity_identity");
    let mut elasticity = CheckRow::new("elasticity_identity");
    let mut log_concave = CheckRow::new("log_concavity");
    let mut mlrp = CheckRow::new("mlrp_in_p");
    let mut fosd = CheckRow::new("fosd_lower_p_dominates");
    let mut expansion = CheckRow::new("hierarchy_expansion");
    let mut tv = CheckRow::new("poisson_limit_tv_decreasing");
    let mut bc_decreasing = CheckRow::new("beauty_contest_actions_nonincreasing");

    for (pi, prior) in config.priors.iter().enumerate() {
        for level in 1..=prior.k_max() {
            for (j, &p) in config.p_grid.iter().enumerate() {
                let case = || format!("prior#{pi} level={level} p={p}");
                let b = belief(prior, level, p)?;
                let m = b.moments();
                let total: f64 = b.weights.iter().sum();
                normalization.record((total - 1.0).abs() <= SUM_TOL, case);

                let mut ez = 0.0;
                for h in 0..level {
                    ez += b.weights[h] * b.score(h)?;
                }
                score_mean.record(ez.abs() <= 1e-9 * level as f64, case);

                if p + FD_STEP <= 1.0 {
                    let up = belief(prior, level, p + FD_STEP)?;
                    let dn = belief(prior, level, p - FD_STEP)?;
                    for h in 0..level {
                        let fd = (up.weights[h].ln() - dn.weights[h].ln()) / (2.0 * FD_STEP);
                        if up.weights[h] > 0.0 && dn.weights[h] > 0.0 {
                            score_fd.record(close(b.score(h)?, fd), case);
                        }
                    }
                    let dmean = (up.moments().mean - dn.moments().mean) / (2.0 * FD_STEP);
                    sensitivity.record(close(b.sensitivity(), dmean), case);
                    if level as f64 - m.mean > 1e-12 {
                        let fd_el = -p * dmean / (level as f64 - m.mean);
                        elasticity.record(close(b.elasticity(), fd_el), case);
                    }
                }

                log_concave.record(check_log_concavity(&b.weights)?.holds, case);
                if level >= 2 {
                    expansion.record(check_hierarchy_expansion(prior, level, p)?.holds, case);
                }
                if j > 0 && level >= 2 {
                    let p_lo = config.p_grid[j - 1];
                    mlrp.record(check_mlrp_in_p(prior, level, p, p_lo)?.holds, case);
                    let lo = belief(prior, level, p_lo)?;
                    fosd.record(check_fosd(&lo.weights, &b.weights)?.holds, case);
                }
            }
        }

        for &p in &config.p_grid {
            let profile = action_profile(prior, GameRule::default(), p)?;
            let ok = profile.actions.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-12));
            bc_decreasing.record(ok, || format!("prior#{pi} p={p}"));
        }

        if prior.poisson_tau().is_some() {
            for &p in &config.p_grid {
                let mut prev = f64::INFINITY;
                let mut ok = true;
                for level in [5, 10, 20].into_iter().filter(|&l| l <= prior.k_max()) {
                    let d = tv_distance_to_poisson_limit(prior, level, p)?;
                    ok &= d <= prev + 1e-15;
                    prev = d;
                }
                tv.record(ok, || format!("prior#{pi} p={p}"));
            }
        }
    }

    Ok(vec![
        normalization,
        score_mean,
        score_fd,
        sensitivity,
        elasticity,
        log_concave,
        mlrp,
        fosd,
        expansion,
        tv,
        bc_decreasing,
    ])
}

/// Fixed-width pass/fail table.
pub fn render_table(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.property.len()).max().unwrap_or(8).max(8);
    let mut out = format!("{:<width$}  {:>6}  {:>8}  result\n", "property", "cases", "failures");
    for r in rows {
        out.push_str(&format!(
            "{:<width$}  {:>6}  {:>8}  {}\n",
            r.property,
            r.cases,
            r.failures,
            if r.passed() { "PASS" } else { "FAIL" }
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suite_passes() {
        let rows = run_suite(&SuiteConfig::default()).unwrap();
        for r in &rows {
            assert!(r.cases > 0, "{} ran no cases", r.property);
            assert!(r.passed(), "{} failed: {:?}", r.property, r.example);
        }
    }

    #[test]
    fn table_has_one_line_per_property() {
        let rows = vec![CheckRow::new("a"), CheckRow::new("b")];
        assert_eq!(render_table(&rows).lines().count(), 3);
    }
}
