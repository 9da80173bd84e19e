//! Report shapes written by the commands: the detect report wrapping a
//! verdict, trace CSV export, and the stable JSON description of a circuit
//! pool.

use serde::Serialize;
use std::fs;
use std::path::Path;
use vsep_core::circuits::{CircuitPool, GateSpec, ParamCircuit, PoolTag, WMode};
use vsep_core::detect::SeparabilityVerdict;
use vsep_core::qcore::bernoulli_estimate;

use crate::Failure;

/// What `detect` writes: the full verdict plus the invocation mode and, on
/// request, a finite-shot re-estimate of the final cost. Nothing
/// time-dependent is included, so identical invocations produce
/// byte-identical reports.
#[derive(Debug, Serialize)]
pub struct DetectReport {
    pub mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shot_estimate: Option<ShotBlock>,
    pub verdict: SeparabilityVerdict,
}

/// The final cost re-estimated from seeded Bernoulli samples of the
/// certified overlap, demonstrating the measurement cost of the verdict at
/// a given shot budget.
#[derive(Debug, Serialize)]
pub struct ShotBlock {
    pub shots: u64,
    pub seed: u64,
    pub cost_estimate: f64,
}

impl DetectReport {
    pub fn new(
        mode: &'static str,
        shots: Option<u64>,
        verdict: SeparabilityVerdict,
    ) -> Result<Self, Failure> {
        let shot_estimate = match shots {
            None => None,
            Some(shots) => {
                let p = (1.0 - verdict.final_cost).clamp(0.0, 1.0);
                let est = bernoulli_estimate(p, shots, verdict.seed)
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                Some(ShotBlock {
                    shots,
                    seed: verdict.seed,
                    cost_estimate: 1.0 - est.estimate,
                })
            }
        };
        Ok(DetectReport { mode, shot_estimate, verdict })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// `iteration,cost` rows of the decisive optimization. Inconclusive runs
/// have no decisive trace and produce a header-only file.
pub fn write_trace_csv(path: &Path, verdict: &SeparabilityVerdict) -> Result<(), Failure> {
    let mut csv = String::from("iteration,cost\n");
    for (iteration, cost) in &verdict.diagnostics.trace {
        csv.push_str(&format!("{iteration},{cost}\n"));
    }
    fs::write(path, csv)
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

/// Stable JSON description of a pool: layer schedule plus every candidate
/// circuit as a gate list with kinds, targets and parameter slots.
#[derive(Debug, Serialize)]
pub struct PoolReport {
    pub n_qubits: usize,
    pub w_mode: WMode,
    pub n_layers: usize,
    pub layers: Vec<Vec<(usize, usize)>>,
    pub circuits: Vec<CircuitDesc>,
}

#[derive(Debug, Serialize)]
pub struct CircuitDesc {
    #[serde(flatten)]
    pub pool: PoolTag,
    pub w_mode: WMode,
    pub param_count: usize,
    pub gates: Vec<GateDesc>,
}

#[derive(Debug, Serialize)]
#[serde(tag = "kind", rename_all = "UPPERCASE")]
pub enum GateDesc {
    Rz { qubit: usize, slot: usize },
    Ry { qubit: usize, slot: usize },
    Q { pair: (usize, usize), slots: [usize; 3] },
}

impl CircuitDesc {
    fn of(c: &ParamCircuit) -> Self {
        let gates = c
            .gates()
            .iter()
            .map(|g| match *g {
                GateSpec::Rz { qubit, slot } => GateDesc::Rz { qubit, slot },
                GateSpec::Ry { qubit, slot } => GateDesc::Ry { qubit, slot },
                GateSpec::Q { pair, slots } => GateDesc::Q { pair, slots },
            })
            .collect();
        CircuitDesc {
            pool: c.tag(),
            w_mode: c.w_mode(),
            param_count: c.param_count(),
            gates,
        }
    }
}

impl PoolReport {
    pub fn of(pool: &CircuitPool) -> Result<Self, Failure> {
        let schedule = pool.schedule().map_err(|e| Failure::Usage(e.to_string()))?;
        Ok(PoolReport {
            n_qubits: schedule.n_qubits(),
            w_mode: pool.p1.w_mode(),
            n_layers: schedule.n_layers(),
            layers: schedule.layers().to_vec(),
            circuits: pool.candidates().map(CircuitDesc::of).collect(),
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}, L = {}\n", self.n_qubits, self.n_layers);
        for (i, layer) in self.layers.iter().enumerate() {
            let pairs: Vec<String> = layer.iter().map(|(a, b)| format!("({a},{b})")).collect();
            out.push_str(&format!("layer {:>2}: {}\n", i + 1, pairs.join(" ")));
        }
        out.push_str("circuits:\n");
        for c in &self.circuits {
            let name = match c.pool {
                PoolTag::P1 => "P1".to_string(),
                PoolTag::P2 { layer } => format!("P2 layer {layer}"),
            };
            out.push_str(&format!(
                "  {:<12} w_mode {:?}  {} parameters, {} gates\n",
                name,
                c.w_mode,
                c.param_count,
                c.gates.len()
            ));
        }
        out
    }
}
