//! Homophilous block-model networks mapped to an effective transparency by
//! fitting the belief kernel to each agent's censored neighbourhood.

use connected_minds::experiments::{topology_mapping_experiment, TopologyConfig};

fn main() -> connected_minds::Result<()> {
    let cfg = TopologyConfig {
        n: 1000,
        seed: 1,
        ..TopologyConfig::default()
    };
    let report = topology_mapping_experiment(&cfg)?;
    println!(
        "{:>5}  {:>10}  {:>8}  {:>9}",
        "beta", "mean p_hat", "mean KL", "eligible"
    );
    for r in &report.rows {
        println!(
            "{:>5.1}  {:>10.3}  {:>8.4}  {:>9}",
            r.beta, r.mean_p_hat, r.mean_kl, r.n_eligible
        );
    }
    Ok(())
}
