//! Run configuration files: detection knobs plus output plumbing.
//!
//! The schema is strict (unknown keys are rejected) and every field has a
//! default, so `{}` is a valid config. Command-line flags override file
//! values.

use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};
use vsep_core::detect::AdaptiveConfig;
use vsep_core::optim::OptimizerConfig;

use crate::Failure;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub epsilon: f64,
    pub s_max: Option<usize>,
    pub delta_p: f64,
    pub m_max: u32,
    pub include_p1_member_per_round: bool,
    pub optimizer: OptimizerConfig,
    /// Report destination; stdout when absent.
    pub out: Option<PathBuf>,
    /// Destination for the decisive optimization trace as CSV.
    pub trace_csv: Option<PathBuf>,
    /// Shot count for the post-hoc sampled cost estimate.
    pub shots: Option<u64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let d = AdaptiveConfig::default();
        RunConfig {
            epsilon: d.epsilon,
            s_max: d.s_max,
            delta_p: d.delta_p,
            m_max: d.m_max,
            include_p1_member_per_round: d.include_p1_member_per_round,
            optimizer: d.optimizer,
            out: None,
            trace_csv: None,
            shots: None,
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| Failure::Usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn detection(&self) -> AdaptiveConfig {
        AdaptiveConfig {
            epsilon: self.epsilon,
            s_max: self.s_max,
            delta_p: self.delta_p,
            m_max: self.m_max,
            include_p1_member_per_round: self.include_p1_member_per_round,
            optimizer: self.optimizer.clone(),
        }
    }
}
