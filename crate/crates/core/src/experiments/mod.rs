//! Seeded Monte Carlo experiments. Every experiment is bit-reproducible given
//! its config and seed; parallel work is reduced in index order.

pub mod clarity;
pub mod gini;
pub mod identify;
pub mod rng;
pub mod topology;

pub use clarity::{cost_of_clarity_experiment, gini_of_losses, ClarityConfig, InequalityCurve, Level0Behavior};
pub use gini::gini;
pub use identify::{
    identifiability_experiment, info_shock_estimate, info_shock_experiment, loglik_surface, sample_population_actions,
    IdentifyConfig, InfoShockConfig, InfoShockEstimate, LikelihoodSurface,
};
pub use topology::{
    empirical_neighbor_belief, estimate_effective_p, generate_sbm, topology_mapping_experiment, EffectivePFit,
    SbmGraph, TopologyConfig, TopologyReport,
};
