//! Cost functions over circuit parameters and the seeded multi-restart
//! minimizer that drives every detection pipeline.

mod adam;
mod objective;

pub use adam::{gradient, minimize, minimize_with_starts, OptResult, OptimizerConfig};
pub use objective::{
    ensemble_from_params, ensemble_objective, simplex_map, vqsr_noisy_objective, vqsr_objective,
    Objective,
};
pub(crate) use objective::noisy_objective_from_split;
