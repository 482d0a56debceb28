//! Static action data pin down only the ratio tau/p: the likelihood ridge
//! for three synthetic populations.

use connected_minds::experiments::{identifiability_experiment, IdentifyConfig};

fn main() -> connected_minds::Result<()> {
    let report = identifiability_experiment(&IdentifyConfig {
        seed: 2,
        ..IdentifyConfig::default()
    })?;
    for s in &report.summaries {
        println!(
            "{:<18} truth (tau {:.1}, p {:.1})  argmax (tau {:.2}, p {:.3})  ridge {} cells, {} near tau/p = {:.2}, ratio span [{:.2}, {:.2}]",
            s.scenario,
            s.tau_true,
            s.p_true,
            s.argmax_tau,
            s.argmax_p,
            s.ridge_cells,
            s.ridge_cells_on_ratio,
            s.tau_true / s.p_true,
            s.ratio_min,
            s.ratio_max
        );
    }
    Ok(())
}
