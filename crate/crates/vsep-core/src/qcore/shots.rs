use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite-shot Bernoulli estimate together with its provenance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShotEstimate {
    /// Empirical success frequency; an exact multiple of `1/shots`.
    pub estimate: f64,
    pub shots: u64,
    pub seed: u64,
}

/// Draws `shots` seeded Bernoulli samples with success probability `p` and
/// returns the empirical frequency. Deterministic in `(p, shots, seed)`.
pub fn bernoulli_estimate(p: f64, shots: u64, seed: u64) -> Result<ShotEstimate> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!(
            "Bernoulli probability must lie in [0, 1], got {p}"
        )));
    }
    if shots == 0 {
        return Err(Error::InvalidArgument("shot count must be positive".into()));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..shots {
        if rng.random::<f64>() < p {
            hits += 1;
        }
    }
    Ok(ShotEstimate {
        estimate: hits as f64 / shots as f64,
        shots,
        seed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_inputs() {
        assert!(bernoulli_estimate(-0.1, 10, 0).is_err());
        assert!(bernoulli_estimate(1.1, 10, 0).is_err());
        assert!(bernoulli_estimate(0.5, 0, 0).is_err());
    }

    #[test]
    fn deterministic_and_grid_aligned() {
        let a = bernoulli_estimate(0.3, 1000, 42).unwrap();
        let b = bernoulli_estimate(0.3, 1000, 42).unwrap();
        assert_eq!(a, b);
        let scaled = a.estimate * 1000.0;
        assert_eq!(scaled, scaled.round());
    }

    #[test]
    fn degenerate_probabilities_are_exact() {
        assert_eq!(bernoulli_estimate(0.0, 500, 7).unwrap().estimate, 0.0);
        assert_eq!(bernoulli_estimate(1.0, 500, 7).unwrap().estimate, 1.0);
    }
}
