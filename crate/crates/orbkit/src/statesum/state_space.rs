//! State spaces as images of cylinder idempotents.
//!
//! For a closed `(d-1)`-manifold `Σ`, the cylinder `Σ × [0,1]` is evaluated
//! with its two boundary copies left open and only interior cells weighted.
//! Gluing the incoming copy with the weight that a glued `Σ` would receive in
//! the interior turns it into an exactly idempotent matrix whose rank is the
//! dimension of the state space.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::contraction::VarId;
use super::fhk::{copairing, slot_of_facet, surface_network};
use super::fixtures::{cylinder_over, prism_stack};
use super::triangulation::OrderedTriangulation;
use super::tv::{face_table, tv_network};
use super::{expect_closed, StateSumError, Theory};
use crate::frobenius::euler_normalize;
use crate::fusioncat::FusionData;
use crate::linalg::Matrix;
use crate::scalars::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSpaceReport {
    /// Number of boundary states the cylinder matrix acts on.
    pub boundary_states: usize,
    pub idempotent: bool,
    pub rank: usize,
    pub trace: Scalar,
}

/// Rank of the cylinder idempotent on `Σ`: a circle for a 2d theory, a surface for a 3d one.
pub fn state_space_dim(sigma: &OrderedTriangulation, theory: &Theory) -> Result<StateSpaceReport, StateSumError> {
    if sigma.dim() + 1 != theory.dim() {
        return Err(StateSumError::DimensionMismatch { expected: theory.dim() - 1, actual: sigma.dim() });
    }
    expect_closed(sigma)?;
    let m = cylinder_matrix(sigma, theory)?;
    let square = &m * &m;
    Ok(StateSpaceReport { boundary_states: m.rows(), idempotent: square == m, rank: m.rank(), trace: m.trace() })
}

/// The glued cylinder as a matrix from incoming to outgoing boundary states.
pub fn cylinder_matrix(sigma: &OrderedTriangulation, theory: &Theory) -> Result<Matrix, StateSumError> {
    match theory {
        Theory::Frobenius(f) => circle_cylinder(sigma, &euler_normalize(f)?),
        Theory::Fusion(data) => surface_cylinder(sigma, data),
    }
}

fn circle_cylinder(circle: &OrderedTriangulation, f: &crate::frobenius::FrobeniusStructure) -> Result<Matrix, StateSumError> {
    let cyl = cylinder_over(circle);
    let n = circle.vertex_count();
    let net = surface_network(&cyl, f, true);
    let mut leg_of: HashMap<Vec<usize>, VarId> = HashMap::new();
    for (s, i) in cyl.boundary_facets() {
        let tuple: Vec<usize> = cyl.simplices()[s].iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &v)| v).collect();
        leg_of.insert(tuple, net.half_edges[s][slot_of_facet(i)]);
    }
    let incoming: Vec<VarId> = circle.simplices().iter().map(|e| leg_of[&vec![e[0], e[1]]]).collect();
    let outgoing: Vec<VarId> = circle.simplices().iter().map(|e| leg_of[&vec![e[0] + n, e[1] + n]]).collect();
    let open: Vec<VarId> = outgoing.iter().chain(&incoming).copied().collect();
    let (z, _) = net.network.contract(&open);
    let dim = f.dim();
    let k = incoming.len();
    let states = dim.pow(k as u32);
    let digits = |mut x: usize| -> Vec<u16> {
        let mut out = vec![0u16; k];
        for d in out.iter_mut().rev() {
            *d = (x % dim) as u16;
            x /= dim;
        }
        out
    };
    let z_matrix = Matrix::from_fn(states, states, f.field(), |o, i| {
        let mut key = digits(o);
        key.extend(digits(i));
        z.get(&key).cloned().unwrap_or_else(|| f.field().zero())
    });
    // Plain copairing on every incoming leg: the glued circle's edge and vertex weights cancel.
    let pair: HashMap<Vec<u16>, Scalar> = copairing(f, f.algebra().unit()).into_iter().collect();
    let glue = Matrix::from_fn(states, states, f.field(), |a, b| {
        let (da, db) = (digits(a), digits(b));
        da.iter().zip(&db).fold(f.field().one(), |acc, (x, y)| match pair.get(&vec![*x, *y]) {
            Some(v) => acc * v,
            None => f.field().zero(),
        })
    });
    Ok(&z_matrix * &glue)
}

/// Admissible edge labelings of a surface, each with the weight a glued copy
/// of the surface receives in the interior of a 3-manifold.
pub(crate) fn surface_labelings(sigma: &OrderedTriangulation, data: &FusionData, phi_squared: &Scalar) -> Vec<(Vec<u16>, Scalar)> {
    let edges = sigma.cell_count(1);
    let tri_edges: Vec<[usize; 3]> =
        (0..sigma.simplices().len()).map(|s| [sigma.edge_of(s, 0, 1), sigma.edge_of(s, 1, 2), sigma.edge_of(s, 0, 2)]).collect();
    let faces: HashMap<Vec<u16>, Scalar> = face_table(data).into_iter().collect();
    let mut out = Vec::new();
    let mut labels = vec![u16::MAX; edges];
    fn extend(
        e: usize,
        labels: &mut Vec<u16>,
        tri_edges: &[[usize; 3]],
        faces: &HashMap<Vec<u16>, Scalar>,
        rank: usize,
        out: &mut Vec<Vec<u16>>,
    ) {
        if e == labels.len() {
            out.push(labels.clone());
            return;
        }
        for l in 0..rank as u16 {
            labels[e] = l;
            let consistent = tri_edges.iter().all(|te| {
                let key: Vec<u16> = te.iter().map(|&x| labels[x]).collect();
                key.contains(&u16::MAX) || faces.contains_key(&key)
            });
            if consistent {
                extend(e + 1, labels, tri_edges, faces, rank, out);
            }
        }
        labels[e] = u16::MAX;
    }
    let mut found = Vec::new();
    extend(0, &mut labels, &tri_edges, &faces, data.rank(), &mut found);
    let vertex_weight = phi_squared.pow(sigma.vertex_count() as i64).expect("nonzero φ²");
    for labeling in found {
        let mut w = vertex_weight.clone();
        for &l in &labeling {
            w = w * data.qdim(l as usize);
        }
        for te in &tri_edges {
            w = w * &faces[&te.iter().map(|&x| labeling[x]).collect::<Vec<u16>>()];
        }
        out.push((labeling, w));
    }
    out
}

fn surface_cylinder(sigma: &OrderedTriangulation, data: &FusionData) -> Result<Matrix, StateSumError> {
    let phi_squared = data.phi_squared().ok_or(StateSumError::MissingEulerDatum)?;
    let slab = prism_stack(sigma, 1, false)?;
    let (network, edge_vars) = tv_network(&slab, data, &phi_squared, true);
    // Prism `s` consists of tetrahedra 3s, 3s+1, 3s+2; the first carries the
    // bottom copy of triangle s at positions 0,1,2, the last the top copy at 1,2,3.
    let mut bottom = vec![usize::MAX; sigma.cell_count(1)];
    let mut top = vec![usize::MAX; sigma.cell_count(1)];
    for s in 0..sigma.simplices().len() {
        for (p, q) in [(0, 1), (1, 2), (0, 2)] {
            let e = sigma.edge_of(s, p, q);
            bottom[e] = edge_vars[slab.edge_of(3 * s, p, q)];
            top[e] = edge_vars[slab.edge_of(3 * s + 2, p + 1, q + 1)];
        }
    }
    let open: Vec<VarId> = top.iter().chain(&bottom).copied().collect();
    let (z, _) = network.contract(&open);
    let states = surface_labelings(sigma, data, &phi_squared);
    let field = data.field();
    Ok(Matrix::from_fn(states.len(), states.len(), field, |o, i| {
        let mut key = states[o].0.clone();
        key.extend(&states[i].0);
        match z.get(&key) {
            Some(v) => v * &states[i].1,
            None => field.zero(),
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{euler_gamma, examples};
    use crate::fusioncat::examples as fusion;
    use crate::scalars::Field;
    use crate::statesum::fixtures;

    #[test]
    fn circle_with_group_algebra_has_center_dimension() {
        let theory = Theory::Frobenius(euler_gamma(&examples::cyclic_group(2, Field::RATIONALS)).unwrap());
        for k in [3, 4] {
            let report = state_space_dim(&fixtures::circle(k), &theory).unwrap();
            assert!(report.idempotent);
            assert_eq!(report.rank, 2);
            assert_eq!(report.trace, Field::RATIONALS.int(2));
        }
    }

    #[test]
    fn circle_with_matrix_algebra_is_one_dimensional() {
        let theory = Theory::Frobenius(examples::matrices_with_trace(2, Field::RATIONALS.one()));
        let report = state_space_dim(&fixtures::circle(3), &theory).unwrap();
        assert!(report.idempotent);
        assert_eq!(report.rank, 1);
    }

    #[test]
    fn torus_with_z2_has_four_states() {
        let theory = Theory::Fusion(fusion::vec_cyclic(2));
        for sigma in [fixtures::torus_three_vertex(), fixtures::torus_four_vertex()] {
            let report = state_space_dim(&sigma, &theory).unwrap();
            assert!(report.idempotent);
            assert_eq!(report.rank, 4);
        }
        assert_eq!(state_space_dim(&fixtures::torus_three_vertex(), &theory).unwrap().boundary_states, 16);
        assert_eq!(state_space_dim(&fixtures::torus_four_vertex(), &theory).unwrap().boundary_states, 32);
    }

    #[test]
    fn fibonacci_sphere_has_one_state() {
        let report = state_space_dim(&fixtures::sphere_tetrahedron(), &Theory::Fusion(fusion::fibonacci())).unwrap();
        assert!(report.idempotent);
        assert_eq!(report.rank, 1);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let theory = Theory::Fusion(fusion::vec_cyclic(2));
        assert!(matches!(state_space_dim(&fixtures::circle(3), &theory), Err(StateSumError::DimensionMismatch { .. })));
    }
}
