//! Parameterized circuits and the two candidate pools.
//!
//! A product circuit is one `W` layer. An entangling circuit sandwiches one
//! schedule layer of `Q` gates between two `W` layers, `W(α)·Q·W(γ)`.
//! Parameters are flat vectors with a fixed slot order:
//!
//!   product:    `[W slots]`
//!   entangling: `[inner W(γ) slots] [Q slots, 3 per pair in layer order] [outer W(α) slots]`
//!
//! where a `W` layer lists its qubits in ascending order and each qubit's
//! angles appear in application order (first-applied rotation first).

use super::gates::{q_gate, ry, rz};
use super::schedule::{pair_schedule, PairSchedule};
use crate::qcore::{bit_of, PureState};
use crate::{Error, Result};
use ndarray::Array1;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Per-qubit rotation content of a `W` layer.
///
/// `Full3` is `R_z(α₃)R_y(α₂)R_z(α₁)` per qubit (3 slots); `Reduced2` drops
/// the leading `R_z` and is `R_z(α₂)R_y(α₁)` (2 slots), still enough to
/// reach any single-qubit state from `|0⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WMode {
    Full3,
    Reduced2,
}

impl WMode {
    fn slots_per_qubit(self) -> usize {
        match self {
            WMode::Full3 => 3,
            WMode::Reduced2 => 2,
        }
    }
}

/// Which pool a circuit belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "pool", rename_all = "UPPERCASE")]
pub enum PoolTag {
    /// Product pool member (a single `W` layer).
    P1,
    /// Entangling pool member built on schedule layer `l` (1-based).
    P2 { layer: usize },
}

/// One gate of a circuit, with the parameter slots it reads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GateSpec {
    Rz { qubit: usize, slot: usize },
    Ry { qubit: usize, slot: usize },
    Q { pair: (usize, usize), slots: [usize; 3] },
}

/// An immutable gate sequence; parameters bind only at [`apply`] time.
#[derive(Debug, Clone)]
pub struct ParamCircuit {
    n_qubits: usize,
    w_mode: WMode,
    tag: PoolTag,
    gates: Vec<GateSpec>,
    n_params: usize,
    pairs: Vec<(usize, usize)>,
}

impl ParamCircuit {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of angle slots the circuit reads.
    pub fn param_count(&self) -> usize {
        self.n_params
    }

    pub fn tag(&self) -> PoolTag {
        self.tag
    }

    pub fn w_mode(&self) -> WMode {
        self.w_mode
    }

    /// Pairs acted on by `Q` gates; empty for product circuits.
    pub fn entangling_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn gates(&self) -> &[GateSpec] {
        &self.gates
    }

    /// `apply(self, params, input)` as a method.
    pub fn apply(&self, params: &[f64], input: &PureState) -> Result<PureState> {
        apply(self, params, input)
    }

    /// Shorthand for applying to `|0…0⟩`.
    pub fn prepare(&self, params: &[f64]) -> Result<PureState> {
        self.apply(params, &PureState::zero(self.n_qubits)?)
    }
}

/// The candidate pools for one system size: a single product circuit and
/// one entangling circuit per schedule layer.
#[derive(Debug, Clone)]
pub struct CircuitPool {
    pub p1: ParamCircuit,
    pub p2: Vec<ParamCircuit>,
}

impl CircuitPool {
    /// Candidates in detection order: product circuit first, then the
    /// entangling circuits by ascending layer.
    pub fn candidates(&self) -> impl Iterator<Item = &ParamCircuit> {
        std::iter::once(&self.p1).chain(self.p2.iter())
    }

    pub fn schedule(&self) -> Result<PairSchedule> {
        pair_schedule(self.p1.n_qubits())
    }
}

fn push_w_layer(gates: &mut Vec<GateSpec>, n: usize, mode: WMode, base: usize) {
    for q in 1..=n {
        let s = base + mode.slots_per_qubit() * (q - 1);
        match mode {
            WMode::Full3 => {
                gates.push(GateSpec::Rz { qubit: q, slot: s });
                gates.push(GateSpec::Ry { qubit: q, slot: s + 1 });
                gates.push(GateSpec::Rz { qubit: q, slot: s + 2 });
            }
            WMode::Reduced2 => {
                gates.push(GateSpec::Ry { qubit: q, slot: s });
                gates.push(GateSpec::Rz { qubit: q, slot: s + 1 });
            }
        }
    }
}

/// Builds the product-pool circuit (one `W` layer) for `n ≥ 1` qubits.
pub fn product_circuit(n: usize, w_mode: WMode) -> Result<ParamCircuit> {
    crate::qcore::check_qubit_count(n)?;
    let mut gates = Vec::new();
    push_w_layer(&mut gates, n, w_mode, 0);
    Ok(ParamCircuit {
        n_qubits: n,
        w_mode,
        tag: PoolTag::P1,
        gates,
        n_params: w_mode.slots_per_qubit() * n,
        pairs: Vec::new(),
    })
}

fn entangling_circuit(
    n: usize,
    w_mode: WMode,
    layer_index: usize,
    layer: &[(usize, usize)],
) -> ParamCircuit {
    let w_slots = w_mode.slots_per_qubit() * n;
    let mut gates = Vec::new();
    push_w_layer(&mut gates, n, w_mode, 0);
    for (p, &pair) in layer.iter().enumerate() {
        let s = w_slots + 3 * p;
        gates.push(GateSpec::Q {
            pair,
            slots: [s, s + 1, s + 2],
        });
    }
    push_w_layer(&mut gates, n, w_mode, w_slots + 3 * layer.len());
    ParamCircuit {
        n_qubits: n,
        w_mode,
        tag: PoolTag::P2 { layer: layer_index },
        gates,
        n_params: 2 * w_slots + 3 * layer.len(),
        pairs: layer.to_vec(),
    }
}

/// Builds both pools for `n ≥ 2` qubits.
pub fn build_pool(n: usize, w_mode: WMode) -> Result<CircuitPool> {
    let schedule = pair_schedule(n)?;
    let p1 = product_circuit(n, w_mode)?;
    let p2 = schedule
        .layers()
        .iter()
        .enumerate()
        .map(|(i, layer)| entangling_circuit(n, w_mode, i + 1, layer))
        .collect();
    Ok(CircuitPool { p1, p2 })
}

fn apply_single(amps: &mut Array1<Complex64>, n: usize, qubit: usize, u: &ndarray::Array2<Complex64>) {
    let stride = 1usize << bit_of(n, qubit);
    let (u00, u01, u10, u11) = (u[[0, 0]], u[[0, 1]], u[[1, 0]], u[[1, 1]]);
    let s = amps.as_slice_mut().expect("contiguous amplitudes");
    let mut base = 0;
    while base < s.len() {
        for i0 in base..base + stride {
            let i1 = i0 + stride;
            let (a0, a1) = (s[i0], s[i1]);
            s[i0] = u00 * a0 + u01 * a1;
            s[i1] = u10 * a0 + u11 * a1;
        }
        base += stride << 1;
    }
}

fn apply_pair(
    amps: &mut Array1<Complex64>,
    n: usize,
    pair: (usize, usize),
    u: &ndarray::Array2<Complex64>,
) {
    // Pair order (j, k) with j < k: j is the more significant gate qubit.
    let sj = 1usize << bit_of(n, pair.0);
    let sk = 1usize << bit_of(n, pair.1);
    let s = amps.as_slice_mut().expect("contiguous amplitudes");
    for i00 in 0..s.len() {
        if i00 & sj != 0 || i00 & sk != 0 {
            continue;
        }
        let idx = [i00, i00 | sk, i00 | sj, i00 | sj | sk];
        let a = [s[idx[0]], s[idx[1]], s[idx[2]], s[idx[3]]];
        for (r, &i) in idx.iter().enumerate() {
            s[i] = u[[r, 0]] * a[0] + u[[r, 1]] * a[1] + u[[r, 2]] * a[2] + u[[r, 3]] * a[3];
        }
    }
}

/// Applies `c` with bound `params` to `input`, gate by gate.
pub fn apply(c: &ParamCircuit, params: &[f64], input: &PureState) -> Result<PureState> {
    if params.len() != c.n_params {
        return Err(Error::ParamCount {
            expected: c.n_params,
            got: params.len(),
        });
    }
    if input.n_qubits() != c.n_qubits {
        return Err(Error::DimensionMismatch {
            expected: c.n_qubits,
            got: input.n_qubits(),
            context: "circuit application input",
        });
    }
    let n = c.n_qubits;
    let mut amps = input.amplitudes().to_owned();
    for gate in &c.gates {
        match *gate {
            GateSpec::Rz { qubit, slot } => apply_single(&mut amps, n, qubit, &rz(params[slot])),
            GateSpec::Ry { qubit, slot } => apply_single(&mut amps, n, qubit, &ry(params[slot])),
            GateSpec::Q { pair, slots } => apply_pair(
                &mut amps,
                n,
                pair,
                &q_gate(params[slots[0]], params[slots[1]], params[slots[2]]),
            ),
        }
    }
    Ok(PureState::trusted(n, amps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;
    use std::collections::BTreeSet;

    fn random_params(len: usize, rng: &mut ChaCha12Rng) -> Vec<f64> {
        (0..len)
            .map(|_| rng.random::<f64>() * std::f64::consts::TAU)
            .collect()
    }

    #[test]
    fn param_counts_match_construction() {
        assert_eq!(product_circuit(4, WMode::Full3).unwrap().param_count(), 12);
        assert_eq!(product_circuit(4, WMode::Reduced2).unwrap().param_count(), 8);

        let pool = build_pool(4, WMode::Full3).unwrap();
        assert_eq!(pool.p2.len(), 3);
        assert_eq!(pool.p2[0].param_count(), 30);

        let pool = build_pool(2, WMode::Full3).unwrap();
        assert_eq!(pool.p2[0].param_count(), 15);
    }

    #[test]
    fn every_slot_is_read_exactly_once() {
        for &mode in &[WMode::Full3, WMode::Reduced2] {
            for n in 2..=6 {
                let pool = build_pool(n, mode).unwrap();
                for c in pool.candidates() {
                    let mut seen = BTreeSet::new();
                    for g in c.gates() {
                        let slots: Vec<usize> = match *g {
                            GateSpec::Rz { slot, .. } | GateSpec::Ry { slot, .. } => vec![slot],
                            GateSpec::Q { slots, .. } => slots.to_vec(),
                        };
                        for s in slots {
                            assert!(seen.insert(s), "slot {s} reused");
                        }
                    }
                    assert_eq!(seen.len(), c.param_count());
                    assert_eq!(seen.last(), Some(&(c.param_count() - 1)));
                }
            }
        }
    }

    #[test]
    fn zero_product_circuit_is_identity_on_zero_state() {
        let c = product_circuit(3, WMode::Full3).unwrap();
        let out = c.prepare(&vec![0.0; 9]).unwrap();
        assert_abs_diff_eq!((out.amplitudes()[0] - Complex64::ONE).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn zero_entangling_circuit_swaps() {
        // All angles zero: W layers are identity, Q(0,0,0) is SWAP.
        let pool = build_pool(2, WMode::Full3).unwrap();
        let one = PureState::new(
            2,
            vec![
                Complex64::ZERO,
                Complex64::ONE,
                Complex64::ZERO,
                Complex64::ZERO,
            ],
        )
        .unwrap();
        let out = pool.p2[0].apply(&vec![0.0; 15], &one).unwrap();
        assert_abs_diff_eq!((out.amplitudes()[2] - Complex64::ONE).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn apply_preserves_norm() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for n in [2, 3, 5] {
            let pool = build_pool(n, WMode::Full3).unwrap();
            for c in pool.candidates() {
                let p = random_params(c.param_count(), &mut rng);
                let out = c.prepare(&p).unwrap();
                let norm: f64 = out.amplitudes().iter().map(|a| a.norm_sqr()).sum();
                assert_abs_diff_eq!(norm, 1.0, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn apply_is_linear() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        let pool = build_pool(3, WMode::Full3).unwrap();
        let c = &pool.p2[1];
        let p = random_params(c.param_count(), &mut rng);

        let e0 = PureState::zero(3).unwrap();
        let mut amps = vec![Complex64::ZERO; 8];
        amps[5] = Complex64::ONE;
        let e5 = PureState::new(3, amps).unwrap();
        let mut amps = vec![Complex64::ZERO; 8];
        amps[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
        amps[5] = Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
        let mix = PureState::new(3, amps).unwrap();

        let (o0, o5, om) = (
            c.apply(&p, &e0).unwrap(),
            c.apply(&p, &e5).unwrap(),
            c.apply(&p, &mix).unwrap(),
        );
        for i in 0..8 {
            let expect = o0.amplitudes()[i] * Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)
                + o5.amplitudes()[i] * Complex64::new(0.0, std::f64::consts::FRAC_1_SQRT_2);
            assert_abs_diff_eq!((om.amplitudes()[i] - expect).norm(), 0.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn trivial_q_keeps_pair_cut_product() {
        // One Q at (0,0,0) with all W angles zero: product inputs stay
        // product across the pair|rest cut (SWAP only relabels the pair).
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        let pool = build_pool(4, WMode::Full3).unwrap();
        let c = &pool.p2[2];
        let single = |rng: &mut ChaCha12Rng| {
            let a = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            let b = Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
            let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
            PureState::new(1, vec![a / norm, b / norm]).unwrap()
        };
        let input = single(&mut rng)
            .tensor(&single(&mut rng))
            .unwrap()
            .tensor(&single(&mut rng))
            .unwrap()
            .tensor(&single(&mut rng))
            .unwrap();
        let out = c.apply(&vec![0.0; c.param_count()], &input).unwrap();
        for &(j, _) in c.entangling_pairs() {
            let reduced = out.reduced_density(&[j]).unwrap();
            assert_abs_diff_eq!(reduced.purity(), 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn wrong_param_count_is_rejected() {
        let c = product_circuit(2, WMode::Full3).unwrap();
        assert!(c.prepare(&[0.0; 5]).is_err());
    }
}
