//! 2d lattice sums for separable symmetric Frobenius algebras.
//!
//! Every triangle carries two-sided half-edge variables ranging over a basis
//! of `A`. A triangle contributes `ε(ψ·e_x e_y e_z)` with its half-edges read
//! counterclockwise, every glued edge the copairing `Σ ψ⁻¹e_k ⊗ e^k`, and
//! every vertex one more `ψ` inside a chosen adjacent triangle, so a closed
//! surface picks up `ψ^χ`.

use std::collections::HashMap;

use super::contraction::{ContractionStats, Factor, Network, VarId};
use super::triangulation::OrderedTriangulation;
use super::{expect_closed, expect_dim, StateSumError, StateSumResult};
use crate::frobenius::{euler_normalize, FrobeniusStructure};
use crate::scalars::Scalar;

/// Edge slots of a triangle `(v0,v1,v2)`: slot 0 is `v0v1`, 1 is `v1v2`, 2 is `v0v2`.
pub(crate) const SLOT_FACET: [usize; 3] = [2, 0, 1];

pub(crate) fn slot_of_facet(facet: usize) -> usize {
    SLOT_FACET.iter().position(|&f| f == facet).expect("facet of a triangle")
}

/// Slot positions `(p, q)` with `p < q`.
pub(crate) const SLOT_ENDS: [(usize, usize); 3] = [(0, 1), (1, 2), (0, 2)];

/// Slots in counterclockwise order for the given orientation sign.
pub(crate) fn ccw_slots(sign: i8) -> [usize; 3] {
    if sign > 0 {
        [0, 1, 2]
    } else {
        [0, 2, 1]
    }
}

/// `T[i][j][k] = ε(x·e_i e_j e_k)`.
pub(crate) fn triple_tensor(f: &FrobeniusStructure, x: &[Scalar]) -> Vec<(Vec<u16>, Scalar)> {
    let alg = f.algebra();
    let n = f.dim();
    let mut out = Vec::new();
    for i in 0..n {
        let xi = alg.mul(x, &alg.basis(i));
        for j in 0..n {
            let xij = alg.mul(&xi, &alg.basis(j));
            for k in 0..n {
                let value = f.epsilon(&alg.mul(&xij, &alg.basis(k)));
                if !value.is_zero() {
                    out.push((vec![i as u16, j as u16, k as u16], value));
                }
            }
        }
    }
    out
}

/// `C[i][j]` with `Σ C[i][j] e_i ⊗ e_j = Σ_k x·e_k ⊗ e^k`.
pub(crate) fn copairing(f: &FrobeniusStructure, x: &[Scalar]) -> Vec<(Vec<u16>, Scalar)> {
    let alg = f.algebra();
    let n = f.dim();
    let mut table: HashMap<(usize, usize), Scalar> = HashMap::new();
    for k in 0..n {
        let left = alg.mul(x, &alg.basis(k));
        let right = f.dual_basis(k);
        for i in 0..n {
            if left[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !right[j].is_zero() {
                    let term = &left[i] * &right[j];
                    let entry = table.entry((i, j)).or_insert_with(|| f.field().zero());
                    *entry = &*entry + &term;
                }
            }
        }
    }
    table.into_iter().map(|((i, j), v)| (vec![i as u16, j as u16], v)).collect()
}

/// The network of a (possibly bordered) triangulated surface. Boundary
/// half-edges stay open; with `interior_weights_only`, boundary vertices get no `ψ`.
pub(crate) struct SurfaceNetwork {
    pub network: Network,
    /// Half-edge variable of every `(triangle, slot)`.
    pub half_edges: Vec<[VarId; 3]>,
}

pub(crate) fn surface_network(t: &OrderedTriangulation, f: &FrobeniusStructure, interior_weights_only: bool) -> SurfaceNetwork {
    let alg = f.algebra();
    let psi = f.psi();
    let mut network = Network::new(f.field());
    let half_edges: Vec<[VarId; 3]> = (0..t.simplices().len()).map(|_| [0; 3].map(|_| network.add_var(f.dim()))).collect();
    let boundary_vertex = boundary_vertices(t);
    let mut extra = vec![0usize; t.simplices().len()];
    for v in 0..t.vertex_count() {
        if interior_weights_only && boundary_vertex[v] {
            continue;
        }
        if let Some(&(s, _)) = t.vertex_star(v).first() {
            extra[s] += 1;
        }
    }
    for (s, vars) in half_edges.iter().enumerate() {
        let weight = alg.pow(&psi, 1 + extra[s]);
        let order = ccw_slots(t.sign(s));
        network.add_factor(Factor::new(order.iter().map(|&slot| vars[slot]).collect(), triple_tensor(f, &weight)));
    }
    let edge_table = copairing(f, &f.psi_inverse());
    for [s, i, u, j] in t.gluings() {
        let a = half_edges[s][slot_of_facet(i)];
        let b = half_edges[u][slot_of_facet(j)];
        network.add_factor(Factor::new(vec![a, b], edge_table.clone()));
    }
    SurfaceNetwork { network, half_edges }
}

pub(crate) fn boundary_vertices(t: &OrderedTriangulation) -> Vec<bool> {
    let mut out = vec![false; t.vertex_count()];
    for (s, i) in t.boundary_facets() {
        for (p, &v) in t.simplices()[s].iter().enumerate() {
            if p != i {
                out[v] = true;
            }
        }
    }
    out
}

/// Partition function of a closed oriented surface. The algebra is first
/// brought into Δ-separable form with its Euler element.
pub fn fhk_evaluate(t: &OrderedTriangulation, f: &FrobeniusStructure) -> Result<StateSumResult, StateSumError> {
    expect_dim(t, 2)?;
    expect_closed(t)?;
    let normalized = euler_normalize(f)?;
    let SurfaceNetwork { network, .. } = surface_network(t, &normalized, false);
    let (value, terms) = network.evaluate();
    Ok(StateSumResult { value, stats: ContractionStats { simplices: t.simplices().len(), terms: terms.terms } })
}
