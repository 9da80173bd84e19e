//! Classical toolbox for deciding how far a multiqubit state factorizes.
//!
//! The crate reconstructs pure, noisy-pure and mixed states with small
//! structured circuit families and reads the separability structure off the
//! reconstruction:
//!
//! * [`qcore`] — dense state vectors, density matrices, ensembles and the
//!   handful of scalar functionals (fidelity, purity, Hilbert–Schmidt
//!   distance, moment overlaps) everything else is built from.
//! * [`circuits`] — the two-qubit interaction gate `Q`, the product layer
//!   `W`, the pair schedule that tiles all qubit pairs into few layers, and
//!   the circuit pools `P1` / `P2` assembled from them.
//! * [`optim`] — cost functions over circuit parameters and a seeded
//!   multi-restart Adam minimizer with finite-difference gradients.
//! * [`detect`] — the detection pipelines: pure targets, noisy-pure targets
//!   via density-matrix powers, and the two adaptive ensemble algorithms for
//!   general mixed states, each returning a [`detect::SeparabilityVerdict`].
//! * [`statelib`] — reference states (GHZ, Bell chains, depolarized
//!   families) and closed-form expectations used to cross-check the
//!   numerical pipeline.
//!
//! Detection is one-sided: a `Detected` verdict comes with an explicit
//! reconstruction certificate, while `Inconclusive` never proves
//! entanglement.
//!
//! Everything is deterministic for a fixed seed and configuration,
//! independent of the `parallel` feature.

#![forbid(unsafe_code)]

mod error;
pub(crate) mod exec;

pub mod circuits;
pub mod detect;
pub mod optim;
pub mod qcore;
pub mod statelib;

pub use error::{Error, Result};
