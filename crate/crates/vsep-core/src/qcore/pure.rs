use ndarray::{Array1, Array2, ArrayView1};
use num_complex::Complex64;

use super::{bit_of, check_keep_list, check_qubit_count, DensityMatrix, QUBIT_CAP};
use crate::{Error, Result};

const NORM_TOLERANCE: f64 = 1e-8;

/// A normalized dense state vector on `n_qubits` qubits.
///
/// Construction renormalizes, so `‖ψ‖ = 1` holds to machine precision for
/// the lifetime of the value. Inputs whose norm is off by more than `1e-8`
/// are rejected instead of silently rescaled.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amps: Array1<Complex64>,
}

impl PureState {
    /// Builds a state from `2^n_qubits` amplitudes.
    pub fn new(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: amplitudes.len(),
                context: "amplitude vector",
            });
        }
        let mut amps = Array1::from_vec(amplitudes);
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized {
                deviation: norm - 1.0,
                tolerance: NORM_TOLERANCE,
            });
        }
        amps.mapv_inplace(|a| a / norm);
        Ok(Self { n_qubits, amps })
    }

    /// The all-zeros computational basis state `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        let mut amps = Array1::zeros(dim);
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Constructor for internal paths that already guarantee normalization.
    pub(crate) fn trusted(n_qubits: usize, amps: Array1<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n_qubits);
        Self { n_qubits, amps }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> ArrayView1<'_, Complex64> {
        self.amps.view()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<Complex64> {
        self.check_same_size(other)?;
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// `|⟨self|other⟩|²`, clamped into `[0, 1]`.
    pub fn fidelity(&self, other: &Self) -> Result<f64> {
        Ok(self.inner(other)?.norm_sqr().clamp(0.0, 1.0))
    }

    /// Kronecker product; `self`'s qubits become the most significant ones.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        let n = self.n_qubits + other.n_qubits;
        if n > QUBIT_CAP {
            return Err(Error::QubitCapExceeded {
                requested: n,
                cap: QUBIT_CAP,
            });
        }
        let mut amps = Array1::zeros(1usize << n);
        let stride = other.dim();
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in other.amps.iter().enumerate() {
                amps[i * stride + j] = a * b;
            }
        }
        Ok(Self::trusted(n, amps))
    }

    /// The rank-one projector `|ψ⟩⟨ψ|`.
    pub fn to_density(&self) -> DensityMatrix {
        let dim = self.dim();
        let mut mat = Array2::zeros((dim, dim));
        for (i, a) in self.amps.iter().enumerate() {
            for (j, b) in self.amps.iter().enumerate() {
                mat[[i, j]] = a * b.conj();
            }
        }
        DensityMatrix::trusted(self.n_qubits, mat)
    }

    /// Reduced density matrix on the sorted qubit subset `keep`, tracing out
    /// everything else. Kept qubits stay in ascending order.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        check_keep_list(self.n_qubits, keep)?;
        let keep_bits: Vec<usize> = keep.iter().map(|&q| bit_of(self.n_qubits, q)).collect();
        let env_bits: Vec<usize> = (0..self.n_qubits)
            .rev()
            .filter(|b| !keep_bits.contains(b))
            .collect();
        let kd = 1usize << keep_bits.len();
        let ed = 1usize << env_bits.len();
        let mut mat = Array2::<Complex64>::zeros((kd, kd));
        let mut scratch = vec![Complex64::new(0.0, 0.0); kd];
        for e in 0..ed {
            let env_part = scatter(e, &env_bits);
            for (a, slot) in scratch.iter_mut().enumerate() {
                *slot = self.amps[env_part | scatter(a, &keep_bits)];
            }
            for a in 0..kd {
                for b in 0..kd {
                    mat[[a, b]] += scratch[a] * scratch[b].conj();
                }
            }
        }
        Ok(DensityMatrix::trusted(keep_bits.len(), mat))
    }

    fn check_same_size(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
                context: "state pair",
            });
        }
        Ok(())
    }
}

/// Spreads the dense index `value` over the given bit positions; bit `i` of
/// `value` lands at `bits[i]`, with `bits` ordered most significant first.
pub(crate) fn scatter(value: usize, bits: &[usize]) -> usize {
    let mut out = 0usize;
    let width = bits.len();
    for (i, &b) in bits.iter().enumerate() {
        if value >> (width - 1 - i) & 1 == 1 {
            out |= 1 << b;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn rejects_wrong_length_and_bad_norm() {
        assert!(PureState::new(2, vec![c(1.0, 0.0); 3]).is_err());
        let err = PureState::new(1, vec![c(0.9, 0.0), c(0.0, 0.0)]).unwrap_err();
        assert!(matches!(err, Error::NotNormalized { .. }));
    }

    #[test]
    fn renormalizes_tiny_drift() {
        let eps = 1e-9;
        let s = PureState::new(1, vec![c(1.0 + eps, 0.0), c(0.0, 0.0)]).unwrap();
        let norm: f64 = s.amplitudes().iter().map(|a| a.norm_sqr()).sum();
        assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn qubit_one_is_most_significant() {
        // |10⟩ must put its weight at index 2, not 1.
        let s = PureState::new(2, vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let r1 = s.reduced_density(&[1]).unwrap();
        let r2 = s.reduced_density(&[2]).unwrap();
        assert_abs_diff_eq!(r1.matrix()[[1, 1]].re, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r2.matrix()[[0, 0]].re, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn tensor_respects_cap() {
        let a = PureState::zero(8).unwrap();
        let b = PureState::zero(7).unwrap();
        assert!(matches!(
            a.tensor(&b),
            Err(Error::QubitCapExceeded { requested: 15, .. })
        ));
    }

    #[test]
    fn tensor_orders_factors() {
        let zero = PureState::zero(1).unwrap();
        let one = PureState::new(1, vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let s = one.tensor(&zero).unwrap(); // |10⟩
        assert_abs_diff_eq!(s.amplitudes()[2].re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn bell_reduction_is_maximally_mixed() {
        let inv = std::f64::consts::FRAC_1_SQRT_2;
        let bell = PureState::new(2, vec![c(0.0, 0.0), c(inv, 0.0), c(inv, 0.0), c(0.0, 0.0)])
            .unwrap();
        let r = bell.reduced_density(&[1]).unwrap();
        assert_abs_diff_eq!(r.purity(), 0.5, epsilon = 1e-12);
        // Reduction of a pure product piece keeps trace one.
        let tr: f64 = (0..2).map(|i| r.matrix()[[i, i]].re).sum();
        assert_abs_diff_eq!(tr, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn keep_list_validation() {
        let s = PureState::zero(3).unwrap();
        assert!(s.reduced_density(&[]).is_err());
        assert!(s.reduced_density(&[2, 1]).is_err());
        assert!(s.reduced_density(&[1, 1]).is_err());
        assert!(s.reduced_density(&[4]).is_err());
        assert!(s.reduced_density(&[1, 3]).is_ok());
    }
}
