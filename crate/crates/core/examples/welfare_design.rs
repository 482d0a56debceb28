//! Welfare curves for the planner objectives and the first-order condition
//! of the opacity-cost problem. Pass `--out DIR` to write the curves as CSV.

use std::path::PathBuf;

use connected_minds::output::{write_artifacts, Manifest};
use connected_minds::{
    fo_condition_residual, p_grid, sensitivity_index, welfare_curve, GameRule, TruePrior, WelfareObjective,
};

fn main() -> connected_minds::Result<()> {
    let out: Option<PathBuf> = std::env::args().skip_while(|a| a != "--out").nth(1).map(PathBuf::from);
    let prior = TruePrior::poisson(1.5, 20)?;
    let grid = p_grid(0.05, 50);
    let objectives = [
        (
            "coordination",
            WelfareObjective::QuadraticCoordination { gamma: 2.0 / 3.0 },
        ),
        ("competition", WelfareObjective::competition()),
        ("stability", WelfareObjective::stability()),
        ("innovation", WelfareObjective::innovation()),
    ];
    for (name, obj) in objectives {
        let curve = welfare_curve(&prior, GameRule::default(), &obj, &grid)?;
        println!(
            "{name:<13} argmax p = {:.3}  max W = {:.4}",
            curve.argmax_p,
            curve.max_value()
        );
        if let Some(dir) = &out {
            let manifest = Manifest::new(
                &format!("welfare_{name}"),
                0,
                serde_json::to_value(obj)?,
                serde_json::Value::Null,
            );
            write_artifacts(dir, &manifest, &[("", &curve.table())])?;
        }
    }

    println!("\nfirst-order residual sum f Var - c p, c = 0.5");
    for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
        println!(
            "  p = {p:.1}  residual = {:+.4}",
            fo_condition_residual(&prior, 0.5, p)?
        );
    }

    let deep = TruePrior::poisson(3.0, 60)?;
    println!("\nsensitivity index per level (tau = 3, p = 0.6, alpha = 1)");
    for k in [1, 2, 5, 10, 20, 40] {
        println!("  k = {k:>2}  {:.5}", sensitivity_index(&deep, 1.0, k, 0.6)?);
    }
    Ok(())
}
