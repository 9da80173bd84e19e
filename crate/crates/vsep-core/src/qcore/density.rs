use ndarray::{Array1, Array2, ArrayView2};
use num_complex::Complex64;

use super::pure::scatter;
use super::spectral::hermitian_eigenvalues;
use super::{bit_of, check_keep_list, check_qubit_count, PureState};
use crate::{Error, Result};

const TRACE_TOLERANCE: f64 = 1e-8;
const HERMITICITY_TOLERANCE: f64 = 1e-8;
/// Eigenvalues are allowed to dip this far below zero before a matrix is
/// rejected as not positive semidefinite.
const PSD_TOLERANCE: f64 = 1e-9;

/// Largest power handled by repeated multiplication; beyond this
/// [`DensityMatrix::power_overlap`] switches to the eigendecomposition path.
const POWER_BY_MULT_LIMIT: u32 = 8;

/// A dense density matrix: Hermitian, unit trace, positive semidefinite up
/// to `1e-9` in the spectrum.
///
/// Public construction validates all three properties (the spectral check
/// costs an eigendecomposition, paid once per input matrix). Internal
/// producers that are positive by construction skip it.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    mat: Array2<Complex64>,
}

impl DensityMatrix {
    /// Validates and builds a density matrix from a `2^n × 2^n` array.
    /// The trace is renormalized to exactly one after the tolerance check.
    pub fn new(n_qubits: usize, mat: Array2<Complex64>) -> Result<Self> {
        check_qubit_count(n_qubits)?;
        let dim = 1usize << n_qubits;
        if mat.shape() != [dim, dim] {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: mat.shape()[0].max(mat.shape()[1]),
                context: "density matrix",
            });
        }
        let mut max_dev = 0.0f64;
        for i in 0..dim {
            for j in i..dim {
                let dev = (mat[[i, j]] - mat[[j, i]].conj()).norm();
                if dev > max_dev {
                    max_dev = dev;
                }
            }
        }
        if !max_dev.is_finite() || max_dev > HERMITICITY_TOLERANCE {
            return Err(Error::NotHermitian { deviation: max_dev });
        }
        let trace: f64 = (0..dim).map(|i| mat[[i, i]].re).sum();
        if !trace.is_finite() || (trace - 1.0).abs() > TRACE_TOLERANCE {
            return Err(Error::NotNormalized {
                deviation: trace - 1.0,
                tolerance: TRACE_TOLERANCE,
            });
        }
        let mut mat = mat;
        mat.mapv_inplace(|z| z / trace);
        let lambda_min = hermitian_eigenvalues(&mat.view())
            .into_iter()
            .fold(f64::INFINITY, f64::min);
        if lambda_min < -PSD_TOLERANCE {
            return Err(Error::NotPositive {
                eigenvalue: lambda_min,
                tolerance: PSD_TOLERANCE,
            });
        }
        Ok(Self { n_qubits, mat })
    }

    /// Constructor for internal paths whose output is PSD by construction
    /// (projectors, convex mixtures, partial traces).
    pub(crate) fn trusted(n_qubits: usize, mat: Array2<Complex64>) -> Self {
        debug_assert_eq!(mat.shape(), [1 << n_qubits, 1 << n_qubits]);
        Self { n_qubits, mat }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> ArrayView2<'_, Complex64> {
        self.mat.view()
    }

    /// `tr ρ²`. For a Hermitian matrix this is the squared Frobenius norm,
    /// so no matrix product is needed. Always in `[2^-n, 1]` up to roundoff.
    pub fn purity(&self) -> f64 {
        self.mat.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Reduced density matrix on the sorted qubit subset `keep`.
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix> {
        check_keep_list(self.n_qubits, keep)?;
        let keep_bits: Vec<usize> = keep.iter().map(|&q| bit_of(self.n_qubits, q)).collect();
        let env_bits: Vec<usize> = (0..self.n_qubits)
            .rev()
            .filter(|b| !keep_bits.contains(b))
            .collect();
        let kd = 1usize << keep_bits.len();
        let ed = 1usize << env_bits.len();
        let mut out = Array2::<Complex64>::zeros((kd, kd));
        for a in 0..kd {
            let ia = scatter(a, &keep_bits);
            for b in 0..kd {
                let ib = scatter(b, &keep_bits);
                let mut acc = Complex64::new(0.0, 0.0);
                for e in 0..ed {
                    let env = scatter(e, &env_bits);
                    acc += self.mat[[ia | env, ib | env]];
                }
                out[[a, b]] = acc;
            }
        }
        Ok(DensityMatrix::trusted(keep_bits.len(), out))
    }

    /// `(⟨φ|ρ^m|φ⟩, tr ρ^m)` for `m ≥ 1`.
    ///
    /// Both values are computed by repeated multiplication for small `m`
    /// (the numerator as `m` successive matrix–vector products, the trace by
    /// pairing half powers) and through the Hermitian eigendecomposition for
    /// `m` beyond [`POWER_BY_MULT_LIMIT`]. The two paths agree to `1e-9`.
    pub fn power_overlap(&self, m: u32, phi: &PureState) -> Result<PowerOverlap> {
        if m == 0 {
            return Err(Error::InvalidArgument(
                "moment order m must be at least 1".into(),
            ));
        }
        if phi.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: phi.dim(),
                context: "power_overlap probe state",
            });
        }
        if m <= POWER_BY_MULT_LIMIT {
            let mut v: Array1<Complex64> = phi.amplitudes().to_owned();
            for _ in 0..m {
                v = self.mat.dot(&v);
            }
            let numerator: f64 = phi
                .amplitudes()
                .iter()
                .zip(v.iter())
                .map(|(a, b)| (a.conj() * b).re)
                .sum();
            Ok(PowerOverlap {
                numerator: numerator.max(0.0),
                denominator: self.power_trace(m),
            })
        } else {
            let spectrum = super::spectral::hermitian_eigen(&self.mat.view());
            let mut numerator = 0.0f64;
            for (i, lambda) in spectrum.values.iter().enumerate() {
                let mut overlap = Complex64::new(0.0, 0.0);
                for (j, a) in phi.amplitudes().iter().enumerate() {
                    overlap += spectrum.vectors[[j, i]].conj() * a;
                }
                numerator += lambda.max(0.0).powi(m as i32) * overlap.norm_sqr();
            }
            let denominator = spectrum
                .values
                .iter()
                .map(|l| l.max(0.0).powi(m as i32))
                .sum();
            Ok(PowerOverlap {
                numerator,
                denominator,
            })
        }
    }

    /// `tr ρ^m` for `1 ≤ m ≤ 8` via half-power pairing: with `P_k = ρ^k`
    /// already formed, `tr ρ^(j+k) = Σ_ij (P_j)∘conj(P_k)` by hermiticity.
    fn power_trace(&self, m: u32) -> f64 {
        debug_assert!((1..=POWER_BY_MULT_LIMIT).contains(&m));
        let trace_of = |a: &Array2<Complex64>| (0..a.nrows()).map(|i| a[[i, i]].re).sum::<f64>();
        let pair = |a: &Array2<Complex64>, b: &Array2<Complex64>| {
            a.iter()
                .zip(b.iter())
                .map(|(x, y)| (x * y.conj()).re)
                .sum::<f64>()
        };
        match m {
            1 => trace_of(&self.mat),
            2 => pair(&self.mat, &self.mat),
            _ => {
                // Highest half power needed is ⌈m/2⌉ ≤ 4.
                let p2 = self.mat.dot(&self.mat);
                match m {
                    3 => pair(&p2, &self.mat),
                    4 => pair(&p2, &p2),
                    _ => {
                        let p3 = p2.dot(&self.mat);
                        match m {
                            5 => pair(&p3, &p2),
                            6 => pair(&p3, &p3),
                            _ => {
                                let p4 = p3.dot(&self.mat);
                                match m {
                                    7 => pair(&p4, &p3),
                                    _ => pair(&p4, &p4),
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}

/// Numerator and denominator of a density-matrix moment overlap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerOverlap {
    /// `⟨φ|ρ^m|φ⟩`, clamped to be non-negative.
    pub numerator: f64,
    /// `tr ρ^m`.
    pub denominator: f64,
}

/// Squared Hilbert–Schmidt distance `tr[(ρ−σ)†(ρ−σ)]`.
///
/// Exactly symmetric in its arguments and bounded by `2` for density
/// matrices. This is the elementwise squared modulus of the difference, so
/// it costs one pass over the entries.
pub fn hs_distance_sq(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.n_qubits != sigma.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
            context: "hs_distance_sq",
        });
    }
    Ok(rho
        .mat
        .iter()
        .zip(sigma.mat.iter())
        .map(|(a, b)| (a - b).norm_sqr())
        .sum())
}
