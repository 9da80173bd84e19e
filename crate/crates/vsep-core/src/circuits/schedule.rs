//! Arranges all C(n,2) qubit pairs into layers of disjoint pairs.
//!
//! Pairs are grouped by distance `c = k − j`. Within one distance class the
//! pairs `(i, i+c)` are split by the parity of `⌊(i−1)/c⌋` into two runs;
//! consecutive pairs of one run never share a qubit, so each run is a valid
//! layer. The long-range pair `(1, n)` rides with the even nearest-neighbor
//! layer when `n` is even and trails as its own layer when `n` is odd.
//!
//! Layer counts come out to `3n/2 − 3` for even `n ≤ 8` and `3(n−1)/2` for
//! odd `n`; wider even chains (`n ≥ 10`) additionally split trailing layers
//! into single pairs until the count reaches `3n/2 − 1`.

use crate::{Error, Result};
use serde::Serialize;

/// Layered tiling of all qubit pairs, layers of mutually disjoint pairs.
///
/// Qubit indices are 1-based; every pair is `(j, k)` with `j < k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairSchedule {
    n_qubits: usize,
    layers: Vec<Vec<(usize, usize)>>,
}

impl PairSchedule {
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    /// Number of layers, `L`.
    pub fn n_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[Vec<(usize, usize)>] {
        &self.layers
    }

    /// Layer `l`, 1-based.
    pub fn layer(&self, l: usize) -> &[(usize, usize)] {
        &self.layers[l - 1]
    }
}

/// Builds the pair schedule for `n ≥ 2` qubits.
pub fn pair_schedule(n: usize) -> Result<PairSchedule> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "pair schedule needs at least 2 qubits, got {n}"
        )));
    }
    if n == 2 {
        return Ok(PairSchedule {
            n_qubits: 2,
            layers: vec![vec![(1, 2)]],
        });
    }

    let run = |c: usize, parity: usize| -> Vec<(usize, usize)> {
        (1..=n - c)
            .filter(|i| ((i - 1) / c) % 2 == parity)
            .map(|i| (i, i + c))
            .collect()
    };

    let mut layers = Vec::new();
    layers.push(run(1, 0));
    if n % 2 == 0 {
        let mut second = vec![(1, n)];
        second.extend(run(1, 1));
        layers.push(second);
    } else {
        layers.push(run(1, 1));
    }
    for c in 2..=n - 2 {
        layers.push(run(c, 0));
        let b = run(c, 1);
        if !b.is_empty() {
            layers.push(b);
        }
    }
    if n % 2 == 1 {
        layers.push(vec![(1, n)]);
    }

    if n % 2 == 0 && n >= 10 {
        let target = 3 * n / 2 - 1;
        while layers.len() < target {
            let idx = layers
                .iter()
                .rposition(|l| l.len() >= 2)
                .expect("splittable layer exists while below target");
            let moved = layers[idx].pop().expect("layer has at least two pairs");
            layers.insert(idx + 1, vec![moved]);
        }
    }

    Ok(PairSchedule { n_qubits: n, layers })
}
