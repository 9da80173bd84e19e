//! Gate matrices and the canonical-parameter construction of `Q`.
//!
//! Sign conventions (fixed, everything downstream depends on them):
//!
//!   R_z(α) = e^{iαZ/2} = diag(e^{iα/2}, e^{−iα/2})
//!   R_y(β) = e^{iβY/2} = [[cos(β/2), sin(β/2)], [−sin(β/2), cos(β/2)]]
//!
//! so `R_y(−π/2)|0⟩ = |+⟩`. Two-qubit matrices act on `|q₁q₂⟩` with the
//! pair's first qubit as the most significant bit.

use ndarray::{array, Array2};
use num_complex::Complex64;
use std::f64::consts::FRAC_PI_2;

#[inline]
fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `R_z(α) = e^{iαZ/2}`.
pub fn rz(alpha: f64) -> Array2<Complex64> {
    let half = alpha / 2.0;
    array![
        [Complex64::from_polar(1.0, half), c(0.0, 0.0)],
        [c(0.0, 0.0), Complex64::from_polar(1.0, -half)],
    ]
}

/// `R_y(β) = e^{iβY/2}`.
pub fn ry(beta: f64) -> Array2<Complex64> {
    let (s, co) = (beta / 2.0).sin_cos();
    array![[c(co, 0.0), c(s, 0.0)], [c(-s, 0.0), c(co, 0.0)]]
}

/// CNOT with the pair's **second** qubit as control, first as target.
fn cnot_21() -> Array2<Complex64> {
    let o = c(1.0, 0.0);
    let z = c(0.0, 0.0);
    array![[o, z, z, z], [z, z, z, o], [z, z, o, z], [z, o, z, z]]
}

/// CNOT with the pair's **first** qubit as control, second as target.
fn cnot_12() -> Array2<Complex64> {
    let o = c(1.0, 0.0);
    let z = c(0.0, 0.0);
    array![[o, z, z, z], [z, o, z, z], [z, z, z, o], [z, z, o, z]]
}

/// Kronecker product of two single-qubit matrices, `a` on the more
/// significant qubit.
pub(crate) fn kron2(a: &Array2<Complex64>, b: &Array2<Complex64>) -> Array2<Complex64> {
    let mut out = Array2::zeros((4, 4));
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[[2 * i + k, 2 * j + l]] = a[[i, j]] * b[[k, l]];
                }
            }
        }
    }
    out
}

fn eye2() -> Array2<Complex64> {
    array![[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]]
}

/// The three-parameter interaction gate
///
///   Q(θ₁,θ₂,θ₃) = C₂₁ · [R_z(θ₁) ⊗ R_y(θ₂)] · C₁₂ · [1 ⊗ R_y(θ₃)] · C₂₁,
///
/// composed right to left (the rightmost `C₂₁` acts first). `Q(0,0,0)` is
/// the SWAP gate.
pub fn q_gate(theta1: f64, theta2: f64, theta3: f64) -> Array2<Complex64> {
    let c21 = cnot_21();
    let stage1 = kron2(&eye2(), &ry(theta3)).dot(&c21);
    let stage2 = cnot_12().dot(&stage1);
    let stage3 = kron2(&rz(theta1), &ry(theta2)).dot(&stage2);
    c21.dot(&stage3)
}

/// `Q` angles plus the fixed single-qubit wrappers reproducing the
/// canonical two-qubit interaction `e^{i(θx X⊗X + θy Y⊗Y + θz Z⊗Z)}` up to
/// global phase.
#[derive(Debug, Clone)]
pub struct CanonicalQ {
    /// `(θ₁, θ₂, θ₃)` to feed into [`q_gate`].
    pub theta: [f64; 3],
    /// Applied before `Q`: `R_z(π/2) ⊗ 1`.
    pub pre: Array2<Complex64>,
    /// Applied after `Q`: `1 ⊗ R_z(−π/2)`.
    pub post: Array2<Complex64>,
}

impl CanonicalQ {
    /// `post · Q(θ) · pre` as a dense 4×4 matrix.
    pub fn compose(&self) -> Array2<Complex64> {
        let q = q_gate(self.theta[0], self.theta[1], self.theta[2]);
        self.post.dot(&q.dot(&self.pre))
    }
}

/// Maps canonical interaction strengths `(θx, θy, θz)` onto `Q` angles:
/// `θ₁ = 2θz − π/2`, `θ₂ = π/2 − 2θx`, `θ₃ = 2θy − π/2`.
pub fn q_from_canonical(theta_x: f64, theta_y: f64, theta_z: f64) -> CanonicalQ {
    CanonicalQ {
        theta: [
            2.0 * theta_z - FRAC_PI_2,
            FRAC_PI_2 - 2.0 * theta_x,
            2.0 * theta_y - FRAC_PI_2,
        ],
        pre: kron2(&rz(FRAC_PI_2), &eye2()),
        post: kron2(&eye2(), &rz(-FRAC_PI_2)),
    }
}
