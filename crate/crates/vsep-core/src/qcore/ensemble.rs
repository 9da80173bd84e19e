use ndarray::Array2;
use num_complex::Complex64;

use super::{DensityMatrix, PureState};
use crate::{Error, Result};

const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

/// A finite convex mixture of pure states: weights on the probability
/// simplex plus one member state per weight.
#[derive(Debug, Clone)]
pub struct Ensemble {
    weights: Vec<f64>,
    members: Vec<PureState>,
}

impl Ensemble {
    pub fn new(weights: Vec<f64>, members: Vec<PureState>) -> Result<Self> {
        if weights.is_empty() || weights.len() != members.len() {
            return Err(Error::InvalidArgument(format!(
                "ensemble needs matching non-empty weights and members, got {} and {}",
                weights.len(),
                members.len()
            )));
        }
        let n = members[0].n_qubits();
        if members.iter().any(|m| m.n_qubits() != n) {
            return Err(Error::InvalidArgument(
                "ensemble members must share a qubit count".into(),
            ));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidArgument(
                "ensemble weights must be finite and non-negative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::NotNormalized {
                deviation: sum - 1.0,
                tolerance: WEIGHT_SUM_TOLERANCE,
            });
        }
        let weights = weights.into_iter().map(|w| w / sum).collect();
        Ok(Self { weights, members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.members[0].n_qubits()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn members(&self) -> &[PureState] {
        &self.members
    }

    /// The mixture `Σ_m q_m |ψ_m⟩⟨ψ_m|`, PSD and unit trace by construction.
    pub fn to_density(&self) -> DensityMatrix {
        let dim = 1usize << self.n_qubits();
        let mut mat = Array2::<Complex64>::zeros((dim, dim));
        for (w, member) in self.weights.iter().zip(self.members.iter()) {
            accumulate_projector(&mut mat, *w, member);
        }
        DensityMatrix::trusted(self.n_qubits(), mat)
    }
}

/// `mat += w |ψ⟩⟨ψ|`, exploiting hermiticity by filling the upper triangle
/// and mirroring.
pub(crate) fn accumulate_projector(mat: &mut Array2<Complex64>, w: f64, psi: &PureState) {
    let amps = psi.amplitudes();
    let dim = amps.len();
    for i in 0..dim {
        let wi = amps[i] * w;
        mat[[i, i]] += wi * amps[i].conj();
        for j in i + 1..dim {
            let v = wi * amps[j].conj();
            mat[[i, j]] += v;
            mat[[j, i]] += v.conj();
        }
    }
}
