//! Equilibrium actions in the p-beauty contest and aggregate effort in the
//! linear strategic-complements game.

use connected_minds::{
    action_profile, action_profile_limit, aggregate_effort_curve, population_stats, GameRule, TruePrior,
};

fn main() -> connected_minds::Result<()> {
    let prior = TruePrior::poisson(1.5, 20)?;
    let rule = GameRule::beauty_contest(50.0, 2.0 / 3.0)?;

    println!("beauty contest, anchor 50, multiplier 2/3");
    println!("{:>3}  {:>9}  {:>9}  {:>9}", "k", "p=1", "p=0.5", "level-k");
    let full = action_profile(&prior, rule, 1.0)?;
    let half = action_profile(&prior, rule, 0.5)?;
    let lk = action_profile_limit(&prior, rule)?;
    for k in 0..=8 {
        println!(
            "{k:>3}  {:>9.4}  {:>9.4}  {:>9.4}",
            full.actions[k], half.actions[k], lk.actions[k]
        );
    }
    for (name, profile) in [("p=1", &full), ("p=0.5", &half)] {
        let s = population_stats(profile, &prior)?;
        println!(
            "{name}: mean action {:.3}, dispersion {:.3}",
            s.mean_action, s.variance_action
        );
    }

    let comp = TruePrior::poisson(3.0, 20)?;
    let grid: Vec<f64> = (2..=10).map(|i| i as f64 / 10.0).collect();
    println!("\nlinear complements (alpha = 1, tau = 3): aggregate effort S*(p)");
    for (p, s) in aggregate_effort_curve(&comp, GameRule::linear_complements(1.0)?, &grid)? {
        println!("  p = {p:.1}  S* = {s:.4}");
    }
    Ok(())
}
