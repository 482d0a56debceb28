//! Payoff inequality in a simulated beauty contest as transparency rises.

use connected_minds::experiments::clarity::{clarity_p_grid, BUCKET_LABELS};
use connected_minds::experiments::{cost_of_clarity_experiment, gini_of_losses, ClarityConfig};
use connected_minds::TruePrior;

fn main() -> connected_minds::Result<()> {
    let cfg = ClarityConfig {
        mc_runs: 200,
        p_grid: clarity_p_grid(12),
        seed: 7,
        ..ClarityConfig::default()
    };
    let curve = cost_of_clarity_experiment(&cfg)?;
    print!("{:>6}  {:>6}", "p", "gini");
    for b in BUCKET_LABELS {
        print!("  {:>6}", format!("adv{b}"));
    }
    println!();
    for i in 0..curve.p_grid.len() {
        print!("{:>6.3}  {:>6.3}", curve.p_grid[i], curve.gini[i]);
        for b in &curve.relative_advantage {
            print!("  {:>6.2}", b[i]);
        }
        println!();
    }
    println!("fitted slope {:.4}", curve.gini_slope());

    let prior = TruePrior::poisson(1.5, 20)?;
    println!("\ndeterministic Gini of coordination losses");
    for p in [0.05, 0.25, 0.5, 0.75, 1.0] {
        println!("  p = {p:.2}  G = {:.4}", gini_of_losses(&prior, 2.0 / 3.0, p)?);
    }
    Ok(())
}
