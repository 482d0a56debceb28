//! Artifact serialization: JSON manifests and plot-ready CSV tables named
//! `<experiment>_<seed>.{json,csv}`.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::beliefs::Belief;
use crate::design::{OtdResult, WelfareCurve};
use crate::error::Result;
use crate::experiments::clarity::BUCKET_LABELS;
use crate::experiments::identify::{IdentifyReport, InfoShockReport};
use crate::experiments::{InequalityCurve, TopologyReport};
use crate::games::ActionProfile;

/// Twelve significant digits, shortest form, `.` decimal separator.
pub fn fmt_sig(x: f64) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    format!("{rounded}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Self {
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|v| fmt_sig(*v)))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

impl Belief {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["h", "weight"]);
        for (h, w) in self.weights.iter().enumerate() {
            t.push(vec![h as f64, *w]);
        }
        t
    }
}

impl ActionProfile {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["k", "s_k"]);
        for (k, s) in self.actions.iter().enumerate() {
            t.push(vec![k as f64, *s]);
        }
        t
    }
}

impl WelfareCurve {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["p", "S", "V", "W"]);
        for i in 0..self.p_grid.len() {
            t.push(vec![
                self.p_grid[i],
                self.mean_action[i],
                self.variance_action[i],
                self.values[i],
            ]);
        }
        t
    }
}

impl OtdResult {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["iteration", "p", "W"]);
        for (i, (p, w)) in self.trace.iter().enumerate() {
            t.push(vec![i as f64, *p, *w]);
        }
        t
    }
}

impl TopologyReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["beta", "mean_p_hat", "mean_kl", "n_eligible"]);
        for r in &self.rows {
            t.push(vec![r.beta, r.mean_p_hat, r.mean_kl, r.n_eligible as f64]);
        }
        t
    }

    pub fn edge_table(&self) -> Table {
        let mut t = Table::new(&["beta", "level_a", "level_b", "pairs", "edges", "density"]);
        for r in &self.edge_densities {
            t.push(vec![
                r.beta,
                r.level_a as f64,
                r.level_b as f64,
                r.pairs as f64,
                r.edges as f64,
                r.density,
            ]);
        }
        t
    }
}

impl IdentifyReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&[
            "scenario",
            "tau_true",
            "p_true",
            "argmax_tau",
            "argmax_p",
            "max_loglik",
            "ridge_cells",
            "ridge_cells_on_ratio",
            "ratio_min",
            "ratio_max",
        ]);
        for (i, s) in self.summaries.iter().enumerate() {
            t.push(vec![
                i as f64,
                s.tau_true,
                s.p_true,
                s.argmax_tau,
                s.argmax_p,
                s.max_loglik,
                s.ridge_cells as f64,
                s.ridge_cells_on_ratio as f64,
                s.ratio_min,
                s.ratio_max,
            ]);
        }
        t
    }

    /// Long-form surfaces: one row per `(scenario, τ, p)` cell.
    pub fn surface_table(&self) -> Table {
        let mut t = Table::new(&["scenario", "tau", "p", "loglik"]);
        for (s, surf) in self.surfaces.iter().enumerate() {
            for (i, tau) in surf.tau_grid.iter().enumerate() {
                for (j, p) in surf.p_grid.iter().enumerate() {
                    t.push(vec![s as f64, *tau, *p, surf.loglik[i][j]]);
                }
            }
        }
        t
    }
}

impl InfoShockReport {
    pub fn table(&self) -> Table {
        let mut t = Table::new(&["replication", "tau_a", "tau_b", "p_endo_raw", "p_endo"]);
        for (i, e) in self.estimates.iter().enumerate() {
            t.push(vec![i as f64, e.tau_a, e.tau_b, e.p_endo_raw, e.p_endo]);
        }
        t
    }
}

impl InequalityCurve {
    pub fn table(&self) -> Table {
        let mut headers = vec!["p".to_string(), "gini".to_string()];
        headers.extend(BUCKET_LABELS.iter().map(|b| format!("adv_{}", b.replace('+', "plus"))));
        let mut t = Table {
            headers,
            rows: Vec::new(),
        };
        for i in 0..self.p_grid.len() {
            let mut row = vec![self.p_grid[i], self.gini[i]];
            row.extend(self.relative_advantage.iter().map(|b| b[i]));
            t.push(row);
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub seed: u64,
    pub code_version: String,
    pub config: serde_json::Value,
    /// Derived quantities worth recording (normalizations, summaries, results).
    pub derived: serde_json::Value,
}

impl Manifest {
    pub fn new(command: &str, seed: u64, config: serde_json::Value, derived: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            seed,
            code_version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            derived,
        }
    }
}

/// Writes `<name>_<seed>.json` and one CSV per table: the first is
/// `<name>_<seed>.csv`, later ones `<name>_<seed>_<suffix>.csv`.
pub fn write_artifacts(dir: &Path, manifest: &Manifest, tables: &[(&str, &Table)]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let stem = format!("{}_{}", manifest.command, manifest.seed);
    let mut written = Vec::new();

    let json_path = dir.join(format!("{stem}.json"));
    fs::write(&json_path, serde_json::to_string_pretty(manifest)?)?;
    written.push(json_path);

    for (i, (suffix, table)) in tables.iter().enumerate() {
        let name = if i == 0 || suffix.is_empty() {
            format!("{stem}.csv")
        } else {
            format!("{stem}_{suffix}.csv")
        };
        let path = dir.join(name);
        fs::write(&path, table.to_csv_string()?)?;
        written.push(path);
    }
    Ok(written)
}
