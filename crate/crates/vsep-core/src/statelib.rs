//! Reference states, the global depolarization model, and closed-form
//! values used to cross-check the detection pipelines.

use crate::qcore::{DensityMatrix, PureState};
use crate::{Error, Result};
use ndarray::Array2;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

/// `(|0…0⟩ + |1…1⟩)/√2` on `n ≥ 2` qubits.
pub fn ghz(n: usize) -> Result<PureState> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "GHZ needs at least 2 qubits, got {n}"
        )));
    }
    crate::qcore::check_qubit_count(n)?;
    let dim = 1usize << n;
    let mut amps = vec![Complex64::ZERO; dim];
    amps[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    amps[dim - 1] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    PureState::new(n, amps)
}

/// `|Bell⟩^⊗pairs` with `|Bell⟩ = (|01⟩ + |10⟩)/√2` on qubits `(2i−1, 2i)`.
pub fn bell_chain(pairs: usize) -> Result<PureState> {
    if pairs == 0 {
        return Err(Error::InvalidArgument(
            "bell_chain needs at least 1 pair".into(),
        ));
    }
    let bell = PureState::new(
        2,
        vec![
            Complex64::ZERO,
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::ZERO,
        ],
    )?;
    let mut state = bell.clone();
    for _ in 1..pairs {
        state = state.tensor(&bell)?;
    }
    Ok(state)
}

/// `(1−q)|ψ⟩⟨ψ| + q·I/2^n`.
pub fn depolarize_global(psi: &PureState, q: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidArgument(format!(
            "noise strength must lie in [0, 1], got {q}"
        )));
    }
    let dim = psi.dim();
    let amps = psi.amplitudes();
    let mut mat = Array2::zeros((dim, dim));
    let scale = Complex64::new(1.0 - q, 0.0);
    for i in 0..dim {
        for j in 0..dim {
            mat[[i, j]] = scale * amps[i] * amps[j].conj();
        }
        mat[[i, i]] += Complex64::new(q / dim as f64, 0.0);
    }
    Ok(DensityMatrix::trusted(psi.n_qubits(), mat))
}

/// Depolarized three-qubit GHZ state.
pub fn rho3(q: f64) -> Result<DensityMatrix> {
    depolarize_global(&ghz(3)?, q)
}

/// [`rho3`] extended by a fourth qubit fixed to `|0⟩`.
pub fn rho4(q: f64) -> Result<DensityMatrix> {
    let r3 = rho3(q)?;
    let mut mat = Array2::zeros((16, 16));
    for i in 0..8 {
        for j in 0..8 {
            mat[[2 * i, 2 * j]] = r3.matrix()[[i, j]];
        }
    }
    Ok(DensityMatrix::trusted(4, mat))
}

/// Closed-form reconstruction infidelity of the depolarized ten-qubit Bell
/// chain at power `m`, from its two-point spectrum: with
/// `a = (1−q) + q/1024` and `b = q/1024`,
/// returns `|1 − a^m / (a^m + 1023·b^m)|`.
pub fn oracle_infidelity(q: f64, m: u32) -> f64 {
    let a = (1.0 - q) + q / 1024.0;
    let b = q / 1024.0;
    let am = a.powi(m as i32);
    (1.0 - am / (am + 1023.0 * b.powi(m as i32))).abs()
}

/// Tensor product of `n` seeded Haar-random single-qubit states.
pub fn random_product_state(n: usize, seed: u64) -> Result<PureState> {
    crate::qcore::check_qubit_count(n)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut state: Option<PureState> = None;
    for _ in 0..n {
        let mut draw = || -> f64 { StandardNormal.sample(&mut rng) };
        let a = Complex64::new(draw(), draw());
        let b = Complex64::new(draw(), draw());
        let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let qubit = PureState::new(1, vec![a / norm, b / norm])?;
        state = Some(match state {
            None => qubit,
            Some(s) => s.tensor(&qubit)?,
        });
    }
    Ok(state.expect("n >= 1 checked"))
}

/// Families accepted by the CLI state generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum StateFamily {
    Ghz,
    BellChain,
    ProductRandom,
    Custom,
}

/// Declarative state description; `realize` turns it into amplitudes.
///
/// A present `q` wraps the pure family member in global depolarization and
/// yields a density matrix instead of a pure state.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedStateSpec {
    pub family: StateFamily,
    pub n_qubits: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// `[re, im]` amplitude pairs, `CUSTOM` family only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub amplitudes: Option<Vec<[f64; 2]>>,
}

/// A realized state: pure amplitudes or a density matrix.
#[derive(Debug, Clone)]
pub enum RealizedState {
    Pure(PureState),
    Density(DensityMatrix),
}

impl NamedStateSpec {
    pub fn realize(&self) -> Result<RealizedState> {
        let pure = match self.family {
            StateFamily::Ghz => ghz(self.n_qubits)?,
            StateFamily::BellChain => {
                if self.n_qubits % 2 != 0 || self.n_qubits == 0 {
                    return Err(Error::InvalidArgument(format!(
                        "BELL_CHAIN needs an even qubit count, got {}",
                        self.n_qubits
                    )));
                }
                bell_chain(self.n_qubits / 2)?
            }
            StateFamily::ProductRandom => {
                random_product_state(self.n_qubits, self.seed.unwrap_or(0))?
            }
            StateFamily::Custom => {
                let amps = self.amplitudes.as_ref().ok_or_else(|| {
                    Error::InvalidArgument("CUSTOM family needs amplitudes".into())
                })?;
                PureState::new(
                    self.n_qubits,
                    amps.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                )?
            }
        };
        match self.q {
            Some(q) => Ok(RealizedState::Density(depolarize_global(&pure, q)?)),
            None => Ok(RealizedState::Pure(pure)),
        }
    }
}
