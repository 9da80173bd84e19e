//! Hermitian eigendecompositions and a degenerate-bulk split.
//!
//! nalgebra does the factoring; this module fixes the ordering (ascending
//! eigenvalues, stable under ties) so results are reproducible, and detects
//! a heavily degenerate eigenvalue so that moment objectives can work with
//! the few eigenvectors that stick out of the bulk instead of the full
//! basis. For a 10-qubit globally depolarized state that turns every cost
//! evaluation from a 2^10 × 2^10 matrix–vector product into one inner
//! product.

use ndarray::{Array1, Array2, ArrayView2};
use num_complex::Complex64;

/// Relative width of an eigenvalue cluster treated as exactly degenerate.
const BULK_CLUSTER_TOLERANCE: f64 = 1e-11;

pub(crate) struct Spectrum {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Eigenvectors as columns, ordered like `values`.
    pub vectors: Array2<Complex64>,
}

/// Full Hermitian eigendecomposition with deterministic ordering.
pub(crate) fn hermitian_eigen(mat: &ArrayView2<Complex64>) -> Spectrum {
    let dim = mat.nrows();
    let na = nalgebra::DMatrix::<Complex64>::from_fn(dim, dim, |i, j| mat[[i, j]]);
    let eig = na.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .unwrap()
            .then(a.cmp(&b))
    });
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = Array2::zeros((dim, dim));
    for (col, &src) in order.iter().enumerate() {
        for row in 0..dim {
            vectors[[row, col]] = eig.eigenvectors[(row, src)];
        }
    }
    Spectrum { values, vectors }
}

/// Eigenvalues only, ascending.
pub(crate) fn hermitian_eigenvalues(mat: &ArrayView2<Complex64>) -> Vec<f64> {
    let dim = mat.nrows();
    let na = nalgebra::DMatrix::<Complex64>::from_fn(dim, dim, |i, j| mat[[i, j]]);
    let mut values: Vec<f64> = na.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values
}

/// Spectrum split into a degenerate bulk plus outlier eigenpairs.
///
/// The bulk is the longest run of consecutive sorted eigenvalues whose total
/// spread stays within `BULK_CLUSTER_TOLERANCE` (relative to the spectral
/// radius); it only counts if it covers more than half the spectrum, so
/// generic nondegenerate matrices fall back to `bulk_count = 0` with every
/// eigenpair an outlier.
pub(crate) struct BulkSplit {
    pub bulk_value: f64,
    pub bulk_count: usize,
    /// `(eigenvalue, eigenvector)` for everything outside the bulk.
    pub outliers: Vec<(f64, Array1<Complex64>)>,
    /// All eigenvalues, for exact trace sums.
    pub values: Vec<f64>,
}

pub(crate) fn bulk_split(mat: &ArrayView2<Complex64>) -> BulkSplit {
    let spectrum = hermitian_eigen(mat);
    let dim = spectrum.values.len();
    let scale = spectrum
        .values
        .iter()
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
        .max(1e-300);
    let atol = BULK_CLUSTER_TOLERANCE * scale;

    // Longest window [lo, hi) with values[hi-1] - values[lo] <= atol.
    let (mut best_lo, mut best_len) = (0usize, 0usize);
    let mut lo = 0usize;
    for hi in 0..dim {
        while spectrum.values[hi] - spectrum.values[lo] > atol {
            lo += 1;
        }
        if hi - lo + 1 > best_len {
            best_len = hi - lo + 1;
            best_lo = lo;
        }
    }

    if best_len <= dim / 2 {
        let outliers = (0..dim)
            .map(|i| (spectrum.values[i], spectrum.vectors.column(i).to_owned()))
            .collect();
        return BulkSplit {
            bulk_value: 0.0,
            bulk_count: 0,
            outliers,
            values: spectrum.values,
        };
    }

    let bulk_range = best_lo..best_lo + best_len;
    let bulk_value =
        spectrum.values[bulk_range.clone()].iter().sum::<f64>() / best_len as f64;
    let outliers = (0..dim)
        .filter(|i| !bulk_range.contains(i))
        .map(|i| (spectrum.values[i], spectrum.vectors.column(i).to_owned()))
        .collect();
    BulkSplit {
        bulk_value,
        bulk_count: best_len,
        outliers,
        values: spectrum.values,
    }
}
