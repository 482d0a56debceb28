//! Structural checks: log-concavity, likelihood-ratio and first-order
//! dominance in p, hierarchy expansion, and convergence to the shifted
//! Poisson limit.

use connected_minds::{
    belief, check_fosd, check_hierarchy_expansion, check_log_concavity, check_mlrp_in_p, tv_distance_to_poisson_limit,
    TruePrior,
};

fn main() -> connected_minds::Result<()> {
    let prior = TruePrior::poisson(2.0, 60)?;
    let (k, lo, hi) = (8, 0.3, 0.9);

    let g_lo = belief(&prior, k, lo)?;
    let g_hi = belief(&prior, k, hi)?;
    println!("log-concave g_8(.; 0.9): {}", check_log_concavity(&g_hi.weights)?.holds);
    println!(
        "MLRP between p = {lo} and p = {hi}: {}",
        check_mlrp_in_p(&prior, k, hi, lo)?.holds
    );
    println!(
        "p = {lo} first-order dominates p = {hi}: {}",
        check_fosd(&g_lo.weights, &g_hi.weights)?.holds
    );
    println!("reverse dominance: {:?}", check_fosd(&g_hi.weights, &g_lo.weights)?);
    println!(
        "hierarchy expansion at level {k}: {}",
        check_hierarchy_expansion(&prior, k, hi)?.holds
    );

    println!("\nTV(g_k, Poisson(tau/p)), tau = 2");
    println!("{:>4}  {:>12}  {:>12}  {:>12}", "k", "p=0.4", "p=0.7", "p=1.0");
    for level in [5, 10, 20, 40, 60] {
        let row: Vec<String> = [0.4, 0.7, 1.0]
            .iter()
            .map(|&p| format!("{:>12.3e}", tv_distance_to_poisson_limit(&prior, level, p).unwrap()))
            .collect();
        println!("{level:>4}  {}", row.join("  "));
    }
    Ok(())
}
