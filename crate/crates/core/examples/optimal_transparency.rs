//! Projected gradient ascent on coordination welfare from several starting
//! points.

use connected_minds::{otd_optimize, OtdConfig};

fn main() -> connected_minds::Result<()> {
    for tau in [1.0, 1.5, 2.5] {
        for p_init in [0.1, 0.5, 1.0] {
            let cfg = OtdConfig {
                p_init,
                ..OtdConfig::default()
            };
            let r = otd_optimize(tau, 2.0 / 3.0, &cfg)?;
            println!(
                "tau = {tau:.1}  start {p_init:.1}  ->  p* = {:.4}  W = {:.4}  iterations {:>3}  converged {}",
                r.p_star, r.welfare, r.iterations, r.converged
            );
        }
    }
    Ok(())
}
