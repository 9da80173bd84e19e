//! Multi-start Adam over finite-difference gradients.
//!
//! Every randomized choice flows from [`OptimizerConfig::seed`] through
//! per-restart ChaCha streams, and the finite-difference probes are reduced
//! in index order, so a run is bit-reproducible for a fixed config in both
//! the sequential and the data-parallel build.

use crate::exec;
use crate::optim::Objective;
use crate::{Error, Result};
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

const FD_STEP: f64 = 1e-5;
const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;
/// Stalled iterations between learning-rate halvings.
const STALL_DECAY_PERIOD: usize = 40;
/// Stalled iterations after which a restart gives up.
const STALL_LIMIT: usize = 120;
/// Per-restart stream separation for the seed derivation.
const SEED_STRIDE: u64 = 0x9E37_79B9_7F4A_7C15;

/// Knobs for [`minimize`]. Serializable so run reports can echo the exact
/// configuration that produced a verdict.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields, default)]
pub struct OptimizerConfig {
    /// Hard cap on Adam iterations per restart.
    pub max_iterations: usize,
    /// Independent starts per objective; the first ones may be replaced by
    /// warm starts.
    pub restarts: usize,
    /// Initial Adam step size. Halved after every 40 stalled iterations.
    pub learning_rate: f64,
    /// Improvement below this counts as a stalled iteration.
    pub tolerance: f64,
    /// Root seed for the restart initializers.
    pub seed: u64,
    /// Costs below this count as converged and stop the search early.
    pub threshold: f64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            max_iterations: 2000,
            restarts: 10,
            learning_rate: 0.05,
            tolerance: 1e-9,
            seed: 0,
            threshold: 1e-4,
        }
    }
}

/// Outcome of one multi-start minimization.
#[derive(Debug, Clone)]
pub struct OptResult {
    pub best_params: Vec<f64>,
    pub best_cost: f64,
    /// Iterations consumed by the winning restart.
    pub iterations_used: usize,
    /// Which restart won (warm starts occupy the lowest indices).
    pub restart_index: usize,
    pub converged_below_threshold: bool,
    /// `(iteration, cost)` samples from the winning restart, entry 0 being
    /// the initial cost.
    pub trace: Vec<(usize, f64)>,
}

/// Central finite-difference gradient with step `1e-5`.
///
/// The `2·arity` probe evaluations are independent, so the data-parallel
/// build fans them out across threads.
pub fn gradient(objective: &Objective, params: &[f64]) -> Result<Vec<f64>> {
    if params.len() != objective.arity() {
        return Err(Error::ParamCount {
            expected: objective.arity(),
            got: params.len(),
        });
    }
    let probes = exec::map_indices(2 * params.len(), |j| {
        let mut shifted = params.to_vec();
        shifted[j / 2] += if j % 2 == 0 { FD_STEP } else { -FD_STEP };
        objective.evaluate(&shifted)
    });
    let grad: Vec<f64> = probes
        .chunks_exact(2)
        .map(|pair| (pair[0] - pair[1]) / (2.0 * FD_STEP))
        .collect();
    if grad.iter().any(|g| !g.is_finite()) {
        return Err(Error::NonFiniteCost);
    }
    Ok(grad)
}

struct RestartOutcome {
    best_params: Vec<f64>,
    best_cost: f64,
    iterations_used: usize,
    converged: bool,
    trace: Vec<(usize, f64)>,
}

/// One Adam descent from `init`. Returns `None` if the objective went
/// non-finite, which discards the restart without poisoning the others.
fn descend(objective: &Objective, config: &OptimizerConfig, init: Vec<f64>) -> Option<RestartOutcome> {
    let k = init.len();
    let mut params = init;
    let mut cost = objective.evaluate(&params);
    if !cost.is_finite() {
        return None;
    }
    let mut best_params = params.clone();
    let mut best_cost = cost;
    let mut trace = vec![(0, cost)];
    if cost < config.threshold {
        return Some(RestartOutcome {
            best_params,
            best_cost,
            iterations_used: 0,
            converged: true,
            trace,
        });
    }

    let mut lr = config.learning_rate;
    let mut m = vec![0.0; k];
    let mut v = vec![0.0; k];
    let mut stall = 0usize;
    let mut iterations_used = 0usize;
    let mut converged = false;

    for t in 1..=config.max_iterations {
        let grad = match gradient(objective, &params) {
            Ok(g) => g,
            Err(_) => return None,
        };
        let bc1 = 1.0 - BETA1.powi(t as i32);
        let bc2 = 1.0 - BETA2.powi(t as i32);
        for i in 0..k {
            m[i] = BETA1 * m[i] + (1.0 - BETA1) * grad[i];
            v[i] = BETA2 * v[i] + (1.0 - BETA2) * grad[i] * grad[i];
            params[i] -= lr * (m[i] / bc1) / ((v[i] / bc2).sqrt() + ADAM_EPS);
        }
        cost = objective.evaluate(&params);
        if !cost.is_finite() {
            return None;
        }
        iterations_used = t;
        trace.push((t, cost));
        if cost < best_cost - config.tolerance {
            stall = 0;
        } else {
            stall += 1;
            if stall % STALL_DECAY_PERIOD == 0 {
                lr *= 0.5;
            }
        }
        if cost < best_cost {
            best_cost = cost;
            best_params.copy_from_slice(&params);
        }
        if best_cost < config.threshold {
            converged = true;
            break;
        }
        if stall > STALL_LIMIT {
            break;
        }
    }

    Some(RestartOutcome {
        best_params,
        best_cost,
        iterations_used,
        converged,
        trace,
    })
}

fn restart_rng(seed: u64, restart: u64) -> ChaCha12Rng {
    ChaCha12Rng::seed_from_u64(seed ^ SEED_STRIDE.wrapping_mul(restart + 1))
}

/// Minimizes `objective` from `config.restarts` random starts.
pub fn minimize(objective: &Objective, config: &OptimizerConfig) -> Result<OptResult> {
    minimize_with_starts(objective, config, &[])
}

/// Like [`minimize`], but the first restarts begin at `starts` instead of
/// random points; extra starts beyond `config.restarts` still run.
///
/// Restarts run in order and the search stops at the first one that lands
/// below `config.threshold`, so a good warm start finishes in a single
/// evaluation. If none converges the cheapest restart wins, ties broken by
/// restart index. Restarts that hit a non-finite cost are discarded; if all
/// of them do, this is an error.
pub fn minimize_with_starts(
    objective: &Objective,
    config: &OptimizerConfig,
    starts: &[Vec<f64>],
) -> Result<OptResult> {
    let k = objective.arity();
    for s in starts {
        if s.len() != k {
            return Err(Error::ParamCount {
                expected: k,
                got: s.len(),
            });
        }
    }
    let total = config.restarts.max(starts.len()).max(1);
    let mut best: Option<(usize, RestartOutcome)> = None;
    for r in 0..total {
        let init = if r < starts.len() {
            starts[r].clone()
        } else {
            let mut rng = restart_rng(config.seed, r as u64);
            (0..k).map(|_| rng.random::<f64>() * TAU).collect()
        };
        let Some(outcome) = descend(objective, config, init) else {
            continue;
        };
        let stop = outcome.converged;
        let better = best
            .as_ref()
            .map(|(_, b)| outcome.best_cost < b.best_cost)
            .unwrap_or(true);
        if better {
            best = Some((r, outcome));
        }
        if stop {
            break;
        }
    }
    let (restart_index, outcome) = best.ok_or(Error::NonFiniteCost)?;
    Ok(OptResult {
        best_params: outcome.best_params,
        best_cost: outcome.best_cost,
        iterations_used: outcome.iterations_used,
        restart_index,
        converged_below_threshold: outcome.converged,
        trace: outcome.trace,
    })
}
