//! Graph post-processing: from a reconstructed state to `k` and a partition.
//!
//! A successful entangling-circuit reconstruction can only hold entanglement
//! inside its layer's disjoint pairs, so single-qubit reduced purities decide
//! the whole structure: pair `(j, k)` gets an edge exactly when qubit `j`
//! comes out mixed. Connected components of the result are the separability
//! blocks.

use crate::circuits::ParamCircuit;
use crate::qcore::PureState;
use crate::{Error, Result};
use serde::Serialize;

/// Qubit-pair graph read off a reconstruction. Vertices are the qubits
/// `1..=n_qubits`; edges are a subset of the winning circuit's entangling
/// pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntanglementGraph {
    pub n_qubits: usize,
    pub edges: Vec<(usize, usize)>,
    /// Reduced single-qubit purity backing each pair's edge decision, in
    /// the circuit's pair order.
    pub pair_purities: Vec<((usize, usize), f64)>,
}

pub(crate) fn check_delta_p(delta_p: f64) -> Result<()> {
    if !(delta_p > 0.0 && delta_p < 0.5) {
        return Err(Error::InvalidArgument(format!(
            "purity tolerance must lie in (0, 0.5), got {delta_p}"
        )));
    }
    Ok(())
}

/// Builds the pair graph of `reconstructed`, which must be
/// `winner.prepare(params)` for an entangling-pool `winner`.
///
/// For each pair `(j, k)` in the winner's entangling layer the edge is
/// present iff `purity(reduced qubit j) < 1 − δ_p`. Product-pool circuits
/// are rejected; their graphs are edgeless by definition and the detection
/// pipelines handle that case directly.
pub fn entanglement_graph(
    reconstructed: &PureState,
    winner: &ParamCircuit,
    params: &[f64],
    delta_p: f64,
) -> Result<EntanglementGraph> {
    if winner.entangling_pairs().is_empty() {
        return Err(Error::InvalidArgument(
            "graph construction needs an entangling-pool circuit".into(),
        ));
    }
    if params.len() != winner.param_count() {
        return Err(Error::ParamCount {
            expected: winner.param_count(),
            got: params.len(),
        });
    }
    if reconstructed.n_qubits() != winner.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: winner.n_qubits(),
            got: reconstructed.n_qubits(),
            context: "entanglement graph",
        });
    }
    check_delta_p(delta_p)?;
    let mut edges = Vec::new();
    let mut pair_purities = Vec::with_capacity(winner.entangling_pairs().len());
    for &(j, k) in winner.entangling_pairs() {
        let purity = reconstructed.reduced_density(&[j])?.purity();
        pair_purities.push(((j, k), purity));
        if purity < 1.0 - delta_p {
            edges.push((j, k));
        }
    }
    Ok(EntanglementGraph {
        n_qubits: reconstructed.n_qubits(),
        edges,
        pair_purities,
    })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut x = x;
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Connected components of the graph: `k` is the component count and the
/// partition lists each component's qubits ascending, blocks ordered by
/// their smallest member.
pub fn k_from_graph(g: &EntanglementGraph) -> (usize, Vec<Vec<usize>>) {
    let n = g.n_qubits;
    let mut parent: Vec<usize> = (0..=n).collect();
    for &(a, b) in &g.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    }
    // Roots are each component's smallest member, so ascending qubit order
    // fills blocks ascending and first-touch order sorts the blocks.
    let mut partition: Vec<Vec<usize>> = Vec::new();
    let mut block_of = vec![usize::MAX; n + 1];
    for q in 1..=n {
        let r = find(&mut parent, q);
        if block_of[r] == usize::MAX {
            block_of[r] = partition.len();
            partition.push(Vec::new());
        }
        partition[block_of[r]].push(q);
    }
    (partition.len(), partition)
}

/// `k`, partition and pair purities for one member circuit, treating
/// product circuits as edgeless.
pub(crate) fn member_partition(
    circuit: &ParamCircuit,
    params: &[f64],
    reconstructed: &PureState,
    delta_p: f64,
) -> Result<(usize, Vec<Vec<usize>>, Vec<((usize, usize), f64)>)> {
    if circuit.entangling_pairs().is_empty() {
        let n = circuit.n_qubits();
        return Ok((n, (1..=n).map(|q| vec![q]).collect(), Vec::new()));
    }
    let g = entanglement_graph(reconstructed, circuit, params, delta_p)?;
    let (k, partition) = k_from_graph(&g);
    Ok((k, partition, g.pair_purities))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuits::{build_pool, ParamCircuit, WMode};
    use crate::statelib;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn graph(n: usize, edges: Vec<(usize, usize)>) -> EntanglementGraph {
        EntanglementGraph {
            n_qubits: n,
            edges,
            pair_purities: Vec::new(),
        }
    }

    #[test]
    fn components_of_small_graphs() {
        let (k, p) = k_from_graph(&graph(4, vec![]));
        assert_eq!(k, 4);
        assert_eq!(p, vec![vec![1], vec![2], vec![3], vec![4]]);

        let (k, p) = k_from_graph(&graph(4, vec![(1, 2), (3, 4)]));
        assert_eq!(k, 2);
        assert_eq!(p, vec![vec![1, 2], vec![3, 4]]);

        let (k, p) = k_from_graph(&graph(3, vec![(1, 2)]));
        assert_eq!(k, 2);
        assert_eq!(p, vec![vec![1, 2], vec![3]]);

        let (k, p) = k_from_graph(&graph(5, vec![(2, 4), (4, 5), (1, 3)]));
        assert_eq!(k, 2);
        assert_eq!(p, vec![vec![1, 3], vec![2, 4, 5]]);
    }

    #[test]
    fn swap_only_circuit_yields_no_edges() {
        let pool = build_pool(4, WMode::Full3).unwrap();
        let c = &pool.p2[0];
        let params = vec![0.0; c.param_count()];
        let state = c.prepare(&params).unwrap();
        let g = entanglement_graph(&state, c, &params, 1e-4).unwrap();
        assert!(g.edges.is_empty());
        for (_, purity) in &g.pair_purities {
            assert_abs_diff_eq!(*purity, 1.0, epsilon = 1e-10);
        }
    }

    /// Closed-form angles reaching a two-Bell-pair state with the layer-1
    /// circuit on 4 qubits: `Q(0, 0, −π/2)|00⟩ = (|00⟩+|11⟩)/√2` per pair,
    /// then `R_z(π)` followed by `R_y(π)` on the pair's first qubit turns
    /// that into `(|01⟩+|10⟩)/√2` up to global phase.
    fn two_bell_pair_params(c: &ParamCircuit) -> Vec<f64> {
        use std::f64::consts::PI;
        let mut p = vec![0.0; c.param_count()];
        // Q slots: pair (1,2) at 12..15, pair (3,4) at 15..18.
        p[14] = -FRAC_PI_2;
        p[17] = -FRAC_PI_2;
        // Outer W slots start at 18, three per qubit in application order.
        p[18] = PI; // qubit 1 first Rz
        p[19] = PI; // qubit 1 Ry
        p[24] = PI; // qubit 3 first Rz
        p[25] = PI; // qubit 3 Ry
        p
    }

    #[test]
    fn bell_pairs_are_recovered_as_edges() {
        let pool = build_pool(4, WMode::Full3).unwrap();
        let c = &pool.p2[0];
        assert_eq!(c.entangling_pairs(), &[(1, 2), (3, 4)]);
        let params = two_bell_pair_params(c);
        let state = c.prepare(&params).unwrap();
        let target = statelib::bell_chain(2).unwrap();
        assert_abs_diff_eq!(target.fidelity(&state).unwrap(), 1.0, epsilon = 1e-12);
        let g = entanglement_graph(&state, c, &params, 1e-4).unwrap();
        assert_eq!(g.edges, vec![(1, 2), (3, 4)]);
        for (_, purity) in &g.pair_purities {
            assert_abs_diff_eq!(*purity, 0.5, epsilon = 1e-10);
        }
        let (k, partition) = k_from_graph(&g);
        assert_eq!(k, 2);
        assert_eq!(partition, vec![vec![1, 2], vec![3, 4]]);
    }

    #[test]
    fn one_entangling_one_trivial_pair_gives_one_edge() {
        let pool = build_pool(4, WMode::Full3).unwrap();
        let c = &pool.p2[0];
        let mut params = vec![0.0; c.param_count()];
        params[13] = FRAC_PI_2; // middle angle of Q on pair (1,2)
        let state = c.prepare(&params).unwrap();
        let g = entanglement_graph(&state, c, &params, 1e-4).unwrap();
        assert_eq!(g.edges, vec![(1, 2)]);
        let (k, partition) = k_from_graph(&g);
        assert_eq!(k, 3);
        assert_eq!(partition, vec![vec![1, 2], vec![3], vec![4]]);
    }

    #[test]
    fn rejects_product_circuits_and_bad_inputs() {
        let pool = build_pool(3, WMode::Full3).unwrap();
        let state = PureState::zero(3).unwrap();
        let p1_params = vec![0.0; pool.p1.param_count()];
        assert!(entanglement_graph(&state, &pool.p1, &p1_params, 1e-4).is_err());
        let c = &pool.p2[0];
        assert!(entanglement_graph(&state, c, &[0.0], 1e-4).is_err());
        let ok = vec![0.0; c.param_count()];
        assert!(entanglement_graph(&state, c, &ok, 0.7).is_err());
        assert!(entanglement_graph(&PureState::zero(2).unwrap(), c, &ok, 1e-4).is_err());
    }
}
