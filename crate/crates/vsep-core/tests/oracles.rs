//! Cross-checks of the moment-overlap arithmetic against independent
//! computations: explicit dense matrix powers and a second eigensolver
//! route, plus closed forms on globally depolarized states.

use ndarray::Array2;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use vsep_core::qcore::{DensityMatrix, Ensemble, PureState};
use vsep_core::statelib;

fn random_state(n: usize, rng: &mut ChaCha12Rng) -> PureState {
    let dim = 1usize << n;
    let raw: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    PureState::new(n, raw.into_iter().map(|a| a / norm).collect()).unwrap()
}

fn random_density(n: usize, rank: usize, rng: &mut ChaCha12Rng) -> DensityMatrix {
    let members: Vec<PureState> = (0..rank).map(|_| random_state(n, rng)).collect();
    let mut weights: Vec<f64> = (0..rank).map(|_| rng.random::<f64>() + 0.1).collect();
    let total: f64 = weights.iter().sum();
    weights.iter_mut().for_each(|w| *w /= total);
    Ensemble::new(weights, members).unwrap().to_density()
}

fn matrix_power(mat: &Array2<Complex64>, m: u32) -> Array2<Complex64> {
    let mut out = mat.clone();
    for _ in 1..m {
        out = out.dot(mat);
    }
    out
}

#[test]
fn power_overlap_matches_explicit_matrix_powers() {
    let mut rng = ChaCha12Rng::seed_from_u64(10);
    for trial in 0..4 {
        let rho = random_density(3, 4, &mut rng);
        let phi = random_state(3, &mut rng);
        // m ≤ 8 runs the matrix-free path, m > 8 the spectral path; both
        // must agree with literal matrix powers.
        for m in 1..=10u32 {
            let po = rho.power_overlap(m, &phi).unwrap();
            let rho_m = matrix_power(&rho.matrix().to_owned(), m);
            let amps = phi.amplitudes();
            let mut numerator = Complex64::new(0.0, 0.0);
            for i in 0..rho_m.nrows() {
                for j in 0..rho_m.ncols() {
                    numerator += amps[i].conj() * rho_m[[i, j]] * amps[j];
                }
            }
            let denominator: Complex64 = (0..rho_m.nrows()).map(|i| rho_m[[i, i]]).sum();
            assert!(
                (po.numerator - numerator.re).abs() < 1e-10,
                "numerator trial {trial} m {m}: {} vs {}",
                po.numerator,
                numerator.re
            );
            assert!(
                (po.denominator - denominator.re).abs() < 1e-10,
                "denominator trial {trial} m {m}: {} vs {}",
                po.denominator,
                denominator.re
            );
        }
    }
}

#[test]
fn power_trace_matches_independent_eigensolver() {
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    let rho = random_density(3, 5, &mut rng);
    let phi = random_state(3, &mut rng);
    let dim = rho.dim();
    let na = nalgebra::DMatrix::<Complex64>::from_fn(dim, dim, |i, j| rho.matrix()[[i, j]]);
    let eigenvalues = na.symmetric_eigenvalues();
    for m in 1..=8u32 {
        let po = rho.power_overlap(m, &phi).unwrap();
        let trace: f64 = eigenvalues.iter().map(|l| l.powi(m as i32)).sum();
        assert!(
            (po.denominator - trace).abs() < 1e-10,
            "m {m}: {} vs {trace}",
            po.denominator
        );
    }
}

#[test]
fn depolarized_ghz_has_closed_form_moments() {
    // (1−q)|GHZ₃⟩⟨GHZ₃| + q/8·I has eigenvalue a = (1−q) + q/8 on the GHZ
    // eigenvector and b = q/8 on the 7-dimensional rest.
    let ghz = statelib::ghz(3).unwrap();
    for &q in &[0.1, 0.35, 0.9] {
        let rho = statelib::rho3(q).unwrap();
        let (a, b) = ((1.0 - q) + q / 8.0, q / 8.0);
        for m in 1..=6u32 {
            let po = rho.power_overlap(m, &ghz).unwrap();
            let am = a.powi(m as i32);
            let expected_den = am + 7.0 * b.powi(m as i32);
            assert!((po.numerator - am).abs() < 1e-12, "q {q} m {m}");
            assert!((po.denominator - expected_den).abs() < 1e-12, "q {q} m {m}");
        }
    }
}

#[test]
fn infidelity_oracle_agrees_with_dense_pipeline_on_bell_chain() {
    // The 10-qubit closed form: one eigenvalue (1−q) + q/1024 on the Bell
    // chain, 1023 copies of q/1024. Checked against the dense computation.
    let bells = statelib::bell_chain(5).unwrap();
    for &q in &[0.3, 0.7] {
        let rho = statelib::depolarize_global(&bells, q).unwrap();
        for m in 1..=4u32 {
            let po = rho.power_overlap(m, &bells).unwrap();
            let dense = (1.0 - po.numerator / po.denominator).abs();
            let oracle = statelib::oracle_infidelity(q, m);
            assert!(
                (dense - oracle).abs() < 1e-10,
                "q {q} m {m}: dense {dense} oracle {oracle}"
            );
        }
    }
}
