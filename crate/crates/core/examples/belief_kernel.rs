//! Biased beliefs of a level-4 agent as transparency falls, with the score,
//! sensitivity and elasticity identities.

use connected_minds::{belief, belief_limit_small_p, TruePrior};

fn main() -> connected_minds::Result<()> {
    let prior = TruePrior::poisson(1.5, 20)?;
    let level = 4;
    println!("level {level}, Poisson(1.5) prior");
    println!(
        "{:>6}  {:<40}  {:>7}  {:>7}  {:>11}  {:>10}",
        "p", "g_4(h), h=0..3", "E[H]", "Var", "sensitivity", "elasticity"
    );
    for p in [1.0, 0.8, 0.6, 0.4, 0.2, 0.05] {
        let b = belief(&prior, level, p)?;
        let m = b.moments();
        let w: Vec<String> = b.weights.iter().map(|x| format!("{x:.4}")).collect();
        println!(
            "{p:>6.2}  {:<40}  {:>7.4}  {:>7.4}  {:>11.4}  {:>10.4}",
            w.join(" "),
            m.mean,
            m.variance,
            b.sensitivity(),
            b.elasticity()
        );
    }
    let limit = belief_limit_small_p(&prior, level)?;
    println!("p -> 0 limit: {:?}", limit.weights);

    let b = belief(&prior, level, 0.6)?;
    let scores: Vec<String> = (0..level).map(|h| format!("{:.3}", b.score(h).unwrap())).collect();
    println!("score d ln g / dp at p = 0.6: [{}]", scores.join(", "));
    Ok(())
}
