//! Breaking the ridge: a global-information block and a local block recover
//! transparency as the ratio of fitted rates.

use connected_minds::experiments::{info_shock_experiment, InfoShockConfig};

fn main() -> connected_minds::Result<()> {
    for p_true in [0.4, 0.7, 1.0] {
        let report = info_shock_experiment(&InfoShockConfig {
            p_true,
            replications: 5,
            seed: 3,
            ..InfoShockConfig::default()
        })?;
        let est: Vec<String> = report.estimates.iter().map(|e| format!("{:.3}", e.p_endo)).collect();
        println!("p_true = {p_true:.1}  estimates [{}]", est.join(", "));
    }
    Ok(())
}
