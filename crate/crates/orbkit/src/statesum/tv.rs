//! 3d Turaev–Viro–Barrett–Westbury sums for spherical fusion data.
//!
//! Edges carry simple labels. With positions `0<1<2<3` of a tetrahedron the
//! labels are `a=01, b=12, c=23, e=02, f=13, d=03`; a positively oriented
//! tetrahedron weighs `F^{abc}_{d;ef}·d_d`, a negative one the matching entry of
//! the inverse F-matrix times `d_d`. Every edge weighs `d_l`, every triangle
//! `(ij, jk, ik)` weighs `1/d_{ik}` when `ij ⊗ jk → ik`, and every vertex `φ²`.

use std::collections::HashSet;

use super::contraction::{ContractionStats, Factor, Network, VarId};
use super::triangulation::OrderedTriangulation;
use super::{expect_closed, expect_dim, StateSumError, StateSumResult};
use crate::fusioncat::FusionData;
use crate::scalars::Scalar;

/// Position pairs of the six edges in the order `a, b, c, d, e, f`.
pub(crate) const TET_EDGES: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (0, 3), (0, 2), (1, 3)];

/// Tetrahedron weights keyed by `[a, b, c, d, e, f]`.
pub(crate) fn tet_table(data: &FusionData, sign: i8) -> Vec<(Vec<u16>, Scalar)> {
    data.admissible_six_indices()
        .into_iter()
        .map(|[a, b, c, d, e, f]| {
            let symbol = if sign > 0 { data.f(&[a, b, c, d, e, f]).cloned() } else { data.f_inv(a, b, c, d, f, e).cloned() }
                .unwrap_or_else(|| data.field().zero());
            let key = [a, b, c, d, e, f].iter().map(|&x| x as u16).collect();
            (key, symbol * data.qdim(d))
        })
        .collect()
}

/// `1/d_{ik}` on admissible `(ij, jk, ik)`.
pub(crate) fn face_table(data: &FusionData) -> Vec<(Vec<u16>, Scalar)> {
    data.fusion_triples().map(|&(x, y, z)| (vec![x as u16, y as u16, z as u16], data.qdim(z).inv().expect("nonzero dimension"))).collect()
}

pub(crate) fn edge_table(data: &FusionData) -> Vec<(Vec<u16>, Scalar)> {
    (0..data.rank()).map(|l| (vec![l as u16], data.qdim(l).clone())).collect()
}

/// The labeled network; returns it with the edge-class variables. Vertices,
/// edges and triangles on the boundary carry no weight when `interior_weights_only`.
pub(crate) fn tv_network(
    t: &OrderedTriangulation,
    data: &FusionData,
    phi_squared: &Scalar,
    interior_weights_only: bool,
) -> (Network, Vec<VarId>) {
    let mut network = Network::new(data.field());
    let edges: Vec<VarId> = (0..t.cell_count(1)).map(|_| network.add_var(data.rank())).collect();
    let (boundary_vertex, boundary_edge) = boundary_cells(t);
    let interior_vertices = (0..t.vertex_count()).filter(|&v| !(interior_weights_only && boundary_vertex[v])).count();
    network.add_factor(Factor::scalar(phi_squared.pow(interior_vertices as i64).expect("nonzero φ²")));
    let edge_weights = edge_table(data);
    for (e, &var) in edges.iter().enumerate() {
        if !(interior_weights_only && boundary_edge[e]) {
            network.add_factor(Factor::new(vec![var], edge_weights.clone()));
        }
    }
    let faces = face_table(data);
    let mut seen = HashSet::new();
    for s in 0..t.simplices().len() {
        for omit in 0..4 {
            if !seen.insert(t.facet_class(s, omit)) || (interior_weights_only && t.neighbor(s, omit).is_none()) {
                continue;
            }
            let p: Vec<usize> = (0..4).filter(|&x| x != omit).collect();
            let vars = vec![edges[t.edge_of(s, p[0], p[1])], edges[t.edge_of(s, p[1], p[2])], edges[t.edge_of(s, p[0], p[2])]];
            network.add_factor(Factor::new(vars, faces.clone()));
        }
    }
    let positive = tet_table(data, 1);
    let negative = tet_table(data, -1);
    for s in 0..t.simplices().len() {
        let vars = TET_EDGES.iter().map(|&(p, q)| edges[t.edge_of(s, p, q)]).collect();
        let table = if t.sign(s) > 0 { positive.clone() } else { negative.clone() };
        network.add_factor(Factor::new(vars, table));
    }
    (network, edges)
}

/// Vertices and edge classes lying on boundary triangles.
pub(crate) fn boundary_cells(t: &OrderedTriangulation) -> (Vec<bool>, Vec<bool>) {
    let mut vertices = vec![false; t.vertex_count()];
    let mut edges = vec![false; t.cell_count(1)];
    for (s, omit) in t.boundary_facets() {
        let p: Vec<usize> = (0..=t.dim()).filter(|&x| x != omit).collect();
        for &x in &p {
            vertices[t.simplices()[s][x]] = true;
        }
        for a in 0..p.len() {
            for b in a + 1..p.len() {
                edges[t.edge_of(s, p[a], p[b])] = true;
            }
        }
    }
    (vertices, edges)
}

/// Turaev–Viro invariant of a closed oriented 3-manifold.
pub fn tv_evaluate(t: &OrderedTriangulation, data: &FusionData) -> Result<StateSumResult, StateSumError> {
    expect_dim(t, 3)?;
    expect_closed(t)?;
    let phi_squared = data.phi_squared().ok_or(StateSumError::MissingEulerDatum)?;
    let (network, _) = tv_network(t, data, &phi_squared, false);
    let (value, stats) = network.evaluate();
    Ok(StateSumResult { value, stats: ContractionStats { simplices: t.simplices().len(), terms: stats.terms } })
}
