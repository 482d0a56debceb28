//! Cognitive-hierarchy reasoning under network-biased beliefs.
//!
//! A level-`k` agent believes others are distributed over lower levels by
//! the tilted kernel `g_k(h; p) ∝ p^(k-h) f(h)`, where `f` is the true
//! population prior and `p ∈ (0, 1]` measures how transparent the social
//! network is. The crate provides the kernel and its identities, stochastic
//! order checks, equilibrium actions in beauty-contest and linear games,
//! welfare-based transparency design, and seeded Monte Carlo experiments.
//!
//! ```
//! use connected_minds::{belief, TruePrior};
//!
//! let prior = TruePrior::poisson(1.5, 20).unwrap();
//! let b = belief(&prior, 4, 0.6).unwrap();
//! assert_eq!(b.weights.len(), 4);
//! ```

pub mod beliefs;
pub mod cli;
pub mod design;
pub mod error;
pub mod experiments;
pub mod games;
pub mod ordering;
pub mod output;
pub mod prior;
pub mod suite;

pub use beliefs::{belief, belief_limit_small_p, Belief, BeliefMoments};
pub use design::{
    aggregate_belief_variance, fo_condition_residual, mean_sophistication, otd_optimize, p_grid, sensitivity_index,
    welfare_curve, welfare_value, InnovationParams, Normalization, OtdConfig, OtdResult, WelfareCurve,
    WelfareObjective,
};
pub use error::{Error, Result};
pub use games::{
    action_profile, action_profile_limit, aggregate_effort_curve, population_stats, ActionProfile, GameRule,
    PopulationStats,
};
pub use ordering::{
    check_fosd, check_hierarchy_expansion, check_log_concavity, check_mlrp_in_p, tv_distance_to_poisson_limit,
    OrderReport, Witness,
};
pub use prior::{poisson_pmf, PriorKind, TruePrior, DEFAULT_K_MAX};
