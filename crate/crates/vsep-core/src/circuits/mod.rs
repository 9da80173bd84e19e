//! Parameterized circuit families used for reconstruction.
//!
//! Two building blocks generate everything here:
//!
//! * `W(α)` — one layer of independent single-qubit rotations, either the
//!   full Euler form `R_z R_y R_z` (three angles per qubit) or the reduced
//!   `R_z R_y` form (two angles per qubit), which already reaches every
//!   product state from `|0…0⟩` up to global phase.
//! * `Q(θ₁,θ₂,θ₃)` — a three-parameter two-qubit gate built from three
//!   CNOTs and two inner rotations. `Q(0,0,0) = SWAP`, and together with
//!   single-qubit rotations it covers every two-qubit interaction class.
//!
//! A pair schedule tiles all `n(n-1)/2` qubit pairs into layers of disjoint
//! pairs; each layer `l` induces the entangling circuit
//! `V_l = W(α) · [⊗ Q over the layer's pairs] · W(γ)`. The pool `P1 = {W}`
//! probes full product structure, the pool `P2 = {V_l}` probes pairwise
//! entanglement one layer at a time.

mod gates;
mod pool;
mod schedule;

pub use gates::{q_from_canonical, q_gate, ry, rz, CanonicalQ};
pub use pool::{apply, build_pool, product_circuit, CircuitPool, GateSpec, ParamCircuit, PoolTag, WMode};
pub use schedule::{pair_schedule, PairSchedule};
