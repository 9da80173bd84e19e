//! Verdict and configuration types shared by all four pipelines.
//!
//! A verdict is the complete, serializable record of one detection run:
//! status, certificate (k, partition, winning circuit, optimal parameters)
//! and enough diagnostics to audit the decision. Serialization is plain
//! serde with a fixed field order and no timestamps, so identical runs
//! produce byte-identical JSON.

use crate::circuits::{ParamCircuit, PoolTag, WMode};
use crate::optim::{OptResult, OptimizerConfig};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DetectionStatus {
    Detected,
    Inconclusive,
}

/// Serializable handle for one pool circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CircuitRef {
    #[serde(flatten)]
    pub tag: PoolTag,
    pub w_mode: WMode,
    pub param_count: usize,
}

impl CircuitRef {
    pub fn of(c: &ParamCircuit) -> Self {
        CircuitRef {
            tag: c.tag(),
            w_mode: c.w_mode(),
            param_count: c.param_count(),
        }
    }
}

/// Best optimization result for one candidate circuit.
#[derive(Debug, Clone, Serialize)]
pub struct CandidateCost {
    pub circuit: CircuitRef,
    /// Density-matrix power the cost was evaluated at, when applicable.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    pub best_cost: f64,
    pub iterations: usize,
    pub restart_index: usize,
    pub converged: bool,
}

impl CandidateCost {
    pub(crate) fn from_result(c: &ParamCircuit, power: Option<u32>, res: &OptResult) -> Self {
        CandidateCost {
            circuit: CircuitRef::of(c),
            power,
            best_cost: res.best_cost,
            iterations: res.iterations_used,
            restart_index: res.restart_index,
            converged: res.converged_below_threshold,
        }
    }
}

/// Single-qubit purity backing one edge decision, with the same purity on
/// the raw target where one exists for cross-checking.
#[derive(Debug, Clone, Serialize)]
pub struct PairPurity {
    pub pair: (usize, usize),
    pub purity: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target_purity: Option<f64>,
}

/// A density-matrix power skipped because no state can beat the threshold
/// there: the cost is at least `1 − √(λ_max^m / Σ λ_i^m)` for any input.
#[derive(Debug, Clone, Serialize)]
pub struct SkippedPower {
    pub power: u32,
    pub cost_floor: f64,
}

/// One adaptive round.
#[derive(Debug, Clone, Serialize)]
pub struct RoundDiag {
    pub s: usize,
    pub member_count: usize,
    pub param_count: usize,
    pub best_cost: f64,
    pub iterations: usize,
}

/// Post-processing of one ensemble member after a successful round.
#[derive(Debug, Clone, Serialize)]
pub struct MemberDiag {
    pub index: usize,
    pub circuit: CircuitRef,
    pub weight: f64,
    pub k: usize,
    pub partition: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pair_purities: Vec<PairPurity>,
}

/// How many ensemble members are guaranteed to suffice. The spectral bound
/// counts eigenstates (rank ≤ 2^n); the Carathéodory bound covers arbitrary
/// convex decompositions over the 4^n-real-dimensional state space.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MemberBounds {
    pub spectral: usize,
    pub caratheodory: usize,
}

impl MemberBounds {
    pub fn for_qubits(n: usize) -> Self {
        MemberBounds {
            spectral: 1usize << n,
            caratheodory: 1usize << (2 * n),
        }
    }
}

/// Everything recorded along the way to a verdict.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Diagnostics {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub candidate_costs: Vec<CandidateCost>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub pair_purities: Vec<PairPurity>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub skipped_powers: Vec<SkippedPower>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub rounds: Vec<RoundDiag>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<MemberDiag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub member_bounds: Option<MemberBounds>,
    /// `(iteration, cost)` trace of the decisive optimization, for CSV
    /// export; not part of the JSON report.
    #[serde(skip)]
    pub trace: Vec<(usize, f64)>,
}

/// Tunables shared by all detection pipelines. Every field has a default,
/// so a partial JSON config is enough.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdaptiveConfig {
    /// Cost threshold for a detection.
    pub epsilon: f64,
    /// Adaptive round cap; `None` resolves to n².
    pub s_max: Option<usize>,
    /// Purity tolerance for edge decisions.
    pub delta_p: f64,
    /// Largest density-matrix power the noisy pipeline sweeps to.
    pub m_max: u32,
    /// Whether each adaptive round of the k-separability pipeline also
    /// carries a fully separable member.
    pub include_p1_member_per_round: bool,
    pub optimizer: OptimizerConfig,
}

impl Default for AdaptiveConfig {
    fn default() -> Self {
        AdaptiveConfig {
            epsilon: 1e-4,
            s_max: None,
            delta_p: 1e-4,
            m_max: 8,
            include_p1_member_per_round: false,
            optimizer: OptimizerConfig::default(),
        }
    }
}

impl AdaptiveConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "threshold must be positive and finite, got {}",
                self.epsilon
            )));
        }
        if self.s_max == Some(0) {
            return Err(Error::InvalidArgument(
                "round cap must be at least 1".into(),
            ));
        }
        if self.m_max == 0 {
            return Err(Error::InvalidArgument(
                "power cap must be at least 1".into(),
            ));
        }
        super::graph::check_delta_p(self.delta_p)
    }

    /// The same config with `s_max` pinned to its effective value for an
    /// `n`-qubit run; verdicts echo this resolved form.
    pub fn resolved(&self, n_qubits: usize) -> AdaptiveConfig {
        AdaptiveConfig {
            s_max: Some(self.s_max.unwrap_or(n_qubits * n_qubits)),
            ..self.clone()
        }
    }

    /// Optimizer settings with the early-exit threshold pinned to ε, so a
    /// restart stops as soon as it certifies a detection.
    pub(crate) fn effective_optimizer(&self) -> OptimizerConfig {
        OptimizerConfig {
            threshold: self.epsilon,
            ..self.optimizer.clone()
        }
    }
}

/// The result of one detection run.
///
/// `Detected` always carries `k`, a disjoint covering partition with `k`
/// blocks, the winning circuit and its parameters, and `final_cost < ε`.
/// `Inconclusive` proves nothing about the state; its diagnostics record
/// how each attempt failed.
#[derive(Debug, Clone, Serialize)]
pub struct SeparabilityVerdict {
    pub status: DetectionStatus,
    pub n_qubits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub winning_circuit: Option<CircuitRef>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal_params: Option<Vec<f64>>,
    pub final_cost: f64,
    /// Density-matrix power that produced the verdict (noisy pipeline).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<u32>,
    /// Adaptive round that produced the verdict (mixed pipelines).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rounds_used: Option<usize>,
    pub seed: u64,
    /// Effective configuration, with defaults resolved.
    pub config: AdaptiveConfig,
    pub diagnostics: Diagnostics,
}

impl SeparabilityVerdict {
    pub fn detected(&self) -> bool {
        self.status == DetectionStatus::Detected
    }

    /// Pretty JSON report. Field order is fixed by the type definitions and
    /// nothing time-dependent is included, so equal runs serialize
    /// byte-identically.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdict serializes")
    }

    pub(crate) fn inconclusive(
        n_qubits: usize,
        best_cost: f64,
        config: AdaptiveConfig,
        diagnostics: Diagnostics,
    ) -> Self {
        SeparabilityVerdict {
            status: DetectionStatus::Inconclusive,
            n_qubits,
            k: None,
            partition: None,
            winning_circuit: None,
            optimal_params: None,
            final_cost: best_cost,
            power: None,
            rounds_used: None,
            seed: config.optimizer.seed,
            config,
            diagnostics,
        }
    }

    /// Debug-time sanity check of the DETECTED invariants.
    pub(crate) fn assert_certificate(&self) {
        if self.status != DetectionStatus::Detected {
            return;
        }
        let partition = self.partition.as_ref().expect("detected verdict has partition");
        assert_eq!(self.k, Some(partition.len()));
        let mut seen = vec![false; self.n_qubits + 1];
        for block in partition {
            for &q in block {
                assert!(q >= 1 && q <= self.n_qubits && !seen[q], "partition covers each qubit once");
                seen[q] = true;
            }
        }
        assert!(seen[1..].iter().all(|&s| s), "partition covers all qubits");
        assert!(self.final_cost < self.config.epsilon);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_and_overrides() {
        let d = AdaptiveConfig::default();
        assert_eq!(d.epsilon, 1e-4);
        assert_eq!(d.delta_p, 1e-4);
        assert_eq!(d.m_max, 8);
        assert!(!d.include_p1_member_per_round);
        assert!(d.validate().is_ok());
        assert_eq!(d.resolved(5).s_max, Some(25));

        let c: AdaptiveConfig =
            serde_json::from_str(r#"{"epsilon": 1e-6, "s_max": 4}"#).unwrap();
        assert_eq!(c.epsilon, 1e-6);
        assert_eq!(c.resolved(5).s_max, Some(4));
        assert_eq!(c.effective_optimizer().threshold, 1e-6);
        assert!(serde_json::from_str::<AdaptiveConfig>(r#"{"epsilonn": 1.0}"#).is_err());

        assert!(AdaptiveConfig { epsilon: 0.0, ..d.clone() }.validate().is_err());
        assert!(AdaptiveConfig { delta_p: 0.5, ..d.clone() }.validate().is_err());
        assert!(AdaptiveConfig { s_max: Some(0), ..d.clone() }.validate().is_err());
        assert!(AdaptiveConfig { m_max: 0, ..d }.validate().is_err());
    }

    #[test]
    fn member_bounds_scale_with_dimension() {
        let b = MemberBounds::for_qubits(3);
        assert_eq!(b.spectral, 8);
        assert_eq!(b.caratheodory, 64);
    }

    #[test]
    fn verdict_json_is_stable_and_tagged() {
        let cfg = AdaptiveConfig::default().resolved(2);
        let v = SeparabilityVerdict::inconclusive(2, 0.3, cfg, Diagnostics::default());
        let a = v.to_json();
        let b = v.to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"status\": \"INCONCLUSIVE\""));
        assert!(a.contains("\"seed\": 0"));
        assert!(!a.contains("\"k\""));
        // Empty diagnostics collapse instead of serializing empty arrays.
        assert!(!a.contains("candidate_costs"));
    }
}
