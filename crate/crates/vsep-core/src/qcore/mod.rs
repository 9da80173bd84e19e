//! Dense state vectors, density matrices and the scalar functionals on them.
//!
//! Conventions used everywhere in the crate:
//!
//! * Qubits are 1-indexed. Qubit 1 is the **most significant** bit of the
//!   amplitude index, so `|q1 q2 … qn⟩` maps to index
//!   `q1·2^(n-1) + … + qn·2^0`.
//! * States are stored dense; the supported size is capped at
//!   [`QUBIT_CAP`] qubits.
//! * Global phase is never tracked. All comparisons go through
//!   phase-insensitive functionals.

mod density;
mod ensemble;
mod pure;
mod shots;
pub(crate) mod spectral;

pub use density::{hs_distance_sq, DensityMatrix, PowerOverlap};
pub(crate) use ensemble::accumulate_projector;
pub use ensemble::Ensemble;
pub use pure::PureState;
pub use shots::{bernoulli_estimate, ShotEstimate};

/// Largest qubit count any dense constructor accepts.
pub const QUBIT_CAP: usize = 14;

/// Bit position (from the least significant end) of 1-indexed `qubit` in an
/// `n`-qubit amplitude index.
#[inline]
pub(crate) fn bit_of(n_qubits: usize, qubit: usize) -> usize {
    n_qubits - qubit
}

pub(crate) fn check_qubit_count(n_qubits: usize) -> crate::Result<()> {
    if n_qubits == 0 {
        return Err(crate::Error::InvalidArgument(
            "qubit count must be at least 1".into(),
        ));
    }
    if n_qubits > QUBIT_CAP {
        return Err(crate::Error::QubitCapExceeded {
            requested: n_qubits,
            cap: QUBIT_CAP,
        });
    }
    Ok(())
}

/// Validates that `keep` is a sorted, duplicate-free, non-empty list of
/// 1-indexed qubits inside `1..=n_qubits`.
pub(crate) fn check_keep_list(n_qubits: usize, keep: &[usize]) -> crate::Result<()> {
    if keep.is_empty() {
        return Err(crate::Error::InvalidArgument(
            "keep list must name at least one qubit".into(),
        ));
    }
    for (i, &q) in keep.iter().enumerate() {
        if q == 0 || q > n_qubits {
            return Err(crate::Error::QubitOutOfRange {
                index: q,
                n_qubits,
            });
        }
        if i > 0 && keep[i - 1] >= q {
            return Err(crate::Error::InvalidArgument(
                "keep list must be strictly ascending".into(),
            ));
        }
    }
    Ok(())
}
