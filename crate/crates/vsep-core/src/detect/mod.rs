//! The detection pipelines.
//!
//! Four entry points, one per input class:
//!
//! * [`detect_pure`] — pure state vector; candidate circuits are tried in a
//!   fixed order and the first reconstruction below ε decides k.
//! * [`detect_noisy_pure`] — density matrix assumed to be a noisy pure
//!   state; the same candidate loop runs on density-matrix power overlaps,
//!   sweeping the power upward until one detects.
//! * [`algorithm1`] — arbitrary density matrix, tested for full
//!   separability with a growing ensemble of product members.
//! * [`algorithm2`] — arbitrary density matrix, tested for k-separability
//!   with a growing ensemble over the entangling pool.
//!
//! All four are one-sided: `DETECTED` carries a verifiable reconstruction
//! certificate, `INCONCLUSIVE` carries only diagnostics and proves nothing.
//! Given equal inputs, seeds and configuration they are deterministic, down
//! to the serialized verdict bytes.

mod adaptive;
mod graph;
mod pure;
mod verdict;

pub use adaptive::{algorithm1, algorithm2};
pub use graph::{entanglement_graph, k_from_graph, EntanglementGraph};
pub use pure::{detect_noisy_pure, detect_pure};
pub use verdict::{
    AdaptiveConfig, CandidateCost, CircuitRef, DetectionStatus, Diagnostics, MemberBounds,
    MemberDiag, PairPurity, RoundDiag, SeparabilityVerdict, SkippedPower,
};
