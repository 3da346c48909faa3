//! Shipped triangulations of small surfaces and 3-manifolds.

use std::collections::HashMap;

use super::triangulation::{Gluing, OrderedTriangulation};
use super::StateSumError;

fn closed(dim: usize, vertices: usize, simplices: Vec<Vec<usize>>) -> OrderedTriangulation {
    OrderedTriangulation::new(dim, vertices, simplices).expect("fixture is a closed oriented triangulation")
}

fn all_subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    super::triangulation::subsets(n, size)
}

/// Boundary of the tetrahedron.
pub fn sphere_tetrahedron() -> OrderedTriangulation {
    closed(2, 4, all_subsets(4, 3))
}

/// Suspension of a triangle: poles 0 and 4, equator 1, 2, 3.
pub fn sphere_bipyramid() -> OrderedTriangulation {
    let mut tris = Vec::new();
    for (a, b) in [(1, 2), (2, 3), (1, 3)] {
        tris.push(vec![0, a, b]);
        tris.push(vec![a, b, 4]);
    }
    closed(2, 5, tris)
}

type Point = (i64, i64);

/// Torus `ℝ²/Λ` triangulated by the unit squares of `ℤ²`, each cut along its
/// anti-diagonal. `reduce` maps a lattice point to its vertex label and
/// `fundamental` lists the lower-left corners of one square per class.
fn lattice_torus(vertices: usize, fundamental: &[Point], reduce: impl Fn(Point) -> usize) -> OrderedTriangulation {
    let mut simplices = Vec::new();
    // Facet keys: (label of the start point, direction of the segment).
    let mut facet_keys: Vec<Vec<(usize, Point)>> = Vec::new();
    for &(x, y) in fundamental {
        for corners in [[(x, y), (x + 1, y), (x, y + 1)], [(x + 1, y), (x, y + 1), (x + 1, y + 1)]] {
            let mut by_label: Vec<(usize, Point)> = corners.iter().map(|&p| (reduce(p), p)).collect();
            by_label.sort();
            let keys = (0..3)
                .map(|omit| {
                    let ends: Vec<Point> = (0..3).filter(|&p| p != omit).map(|p| by_label[p].1).collect();
                    let (mut from, mut to) = (ends[0], ends[1]);
                    let dir = (to.0 - from.0, to.1 - from.1);
                    if !matches!(dir, (1, 0) | (0, 1) | (-1, 1)) {
                        std::mem::swap(&mut from, &mut to);
                    }
                    (reduce(from), (to.0 - from.0, to.1 - from.1))
                })
                .collect();
            simplices.push(by_label.iter().map(|&(l, _)| l).collect());
            facet_keys.push(keys);
        }
    }
    let gluings = pair_by_key(&facet_keys);
    OrderedTriangulation::with_gluings(2, vertices, simplices, &gluings).expect("lattice torus is closed")
}

/// Pairs facets with equal keys; every key must occur exactly twice.
fn pair_by_key<K: std::hash::Hash + Eq + Clone + std::fmt::Debug>(keys: &[Vec<K>]) -> Vec<Gluing> {
    let mut seen: HashMap<K, (usize, usize)> = HashMap::new();
    let mut gluings = Vec::new();
    for (s, row) in keys.iter().enumerate() {
        for (i, k) in row.iter().enumerate() {
            match seen.remove(k) {
                Some((t, j)) => gluings.push([t, j, s, i]),
                None => {
                    seen.insert(k.clone(), (s, i));
                }
            }
        }
    }
    assert!(seen.is_empty(), "unpaired facets {:?}", seen.keys().collect::<Vec<_>>());
    gluings
}

/// Torus `ℝ²/⟨(3,0),(1,1)⟩`: 3 vertices, 9 edges, 6 triangles.
pub fn torus_three_vertex() -> OrderedTriangulation {
    lattice_torus(3, &[(0, 0), (1, 0), (2, 0)], |(x, y)| (x - y).rem_euclid(3) as usize)
}

/// Torus `ℝ²/(2ℤ)²`: 4 vertices, 12 edges, 8 triangles.
pub fn torus_four_vertex() -> OrderedTriangulation {
    lattice_torus(4, &[(0, 0), (1, 0), (0, 1), (1, 1)], |(x, y)| (x.rem_euclid(2) + 2 * y.rem_euclid(2)) as usize)
}

fn seven_vertex_torus_triangles() -> Vec<Vec<usize>> {
    let mut tris = Vec::new();
    for i in 0..7 {
        for offsets in [[0, 1, 3], [0, 2, 3]] {
            let mut t: Vec<usize> = offsets.iter().map(|o| (i + o) % 7).collect();
            t.sort_unstable();
            tris.push(t);
        }
    }
    tris
}

/// The 7-vertex simplicial torus.
pub fn torus_seven_vertex() -> OrderedTriangulation {
    closed(2, 7, seven_vertex_torus_triangles())
}

/// Two 7-vertex tori with the triangle `{0,1,3}` removed, glued along its boundary.
pub fn genus_two() -> OrderedTriangulation {
    let removed = vec![0, 1, 3];
    let torus: Vec<Vec<usize>> = seven_vertex_torus_triangles().into_iter().filter(|t| *t != removed).collect();
    let shift = |v: usize| match v {
        0 | 1 | 3 => v,
        2 => 7,
        other => other + 4,
    };
    let mut tris = torus.clone();
    for t in &torus {
        let mut u: Vec<usize> = t.iter().map(|&v| shift(v)).collect();
        u.sort_unstable();
        tris.push(u);
    }
    closed(2, 11, tris)
}

/// A circle with `k ≥ 3` vertices, as a 1-dimensional triangulation.
pub fn circle(k: usize) -> OrderedTriangulation {
    assert!(k >= 3, "a simplicial circle needs at least three vertices");
    closed(1, k, (0..k).map(|i| sorted2(i, (i + 1) % k)).collect())
}

fn sorted2(a: usize, b: usize) -> Vec<usize> {
    vec![a.min(b), a.max(b)]
}

/// `C × [0,1]` for a simplicial circle `C` with `n` vertices: vertex `v` of
/// `C × {0}` keeps its label and `v + n` is its copy in `C × {1}`. Over an
/// edge `uw` lie the triangles `(u, w, w+n)` and `(u, u+n, w+n)`.
pub fn cylinder_over(circle: &OrderedTriangulation) -> OrderedTriangulation {
    assert_eq!(circle.dim(), 1, "cylinder over a circle");
    let n = circle.vertex_count();
    let tris = circle.simplices().iter().flat_map(|e| [vec![e[0], e[1], e[1] + n], vec![e[0], e[0] + n, e[1] + n]]).collect();
    OrderedTriangulation::with_boundary(2, 2 * n, tris, None).expect("annulus")
}

/// Annulus over a `k`-gon.
pub fn cylinder(k: usize) -> OrderedTriangulation {
    cylinder_over(&circle(k))
}

/// `S³` as two tetrahedra glued along their boundaries.
pub fn s3_two_tet() -> OrderedTriangulation {
    closed(3, 4, vec![vec![0, 1, 2, 3]; 2])
}

/// `S³` as the boundary of the 4-simplex.
pub fn s3_pentachoron() -> OrderedTriangulation {
    closed(3, 5, all_subsets(5, 4))
}

/// Prism over `abc` between layers `P < Q`, as three tetrahedra (positions into `[a,b,c]`, layer bit).
const PRISM: [[(usize, usize); 4]; 3] =
    [[(0, 0), (1, 0), (2, 0), (2, 1)], [(0, 0), (1, 0), (1, 1), (2, 1)], [(0, 0), (0, 1), (1, 1), (2, 1)]];

/// For a surface facet index, the lower and upper side triangles of the prism as (tet, omitted position).
const SIDE_FACES: [[(usize, usize); 2]; 3] = [[(0, 0), (1, 0)], [(0, 1), (2, 2)], [(1, 3), (2, 3)]];

/// `Σ × I` with `layers` prism layers; `periodic` closes it up to `Σ × S¹`.
/// Vertex `v` of layer `ℓ` has label `ℓ·|V(Σ)| + v`.
pub fn prism_stack(surface: &OrderedTriangulation, layers: usize, periodic: bool) -> Result<OrderedTriangulation, StateSumError> {
    if surface.dim() != 2 || layers == 0 || (periodic && layers < 2) {
        return Err(StateSumError::InvalidTriangulation("prism stack needs a surface and enough layers".into()));
    }
    let nv = surface.vertex_count();
    let vertex_layers = if periodic { layers } else { layers + 1 };
    let mut simplices = Vec::new();
    let mut gluings = Vec::new();
    let tet_index = |layer: usize, tri: usize, piece: usize| (layer * surface.simplices().len() + tri) * 3 + piece;
    // Which vertex layer each prism's bottom and top faces lie in.
    let mut layer_faces: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vertex_layers];
    for k in 0..layers {
        let (p, q) = {
            let (x, y) = (k, (k + 1) % vertex_layers);
            (x.min(y), x.max(y))
        };
        for (tri, verts) in surface.simplices().iter().enumerate() {
            for piece in PRISM {
                simplices.push(piece.iter().map(|&(pos, up)| (if up == 1 { q } else { p }) * nv + verts[pos]).collect());
            }
            gluings.push([tet_index(k, tri, 0), 2, tet_index(k, tri, 1), 2]);
            gluings.push([tet_index(k, tri, 1), 1, tet_index(k, tri, 2), 1]);
            layer_faces[p].push((tri, tet_index(k, tri, 0), 3));
            layer_faces[q].push((tri, tet_index(k, tri, 2), 0));
        }
        for [s, i, t, j] in surface.gluings() {
            for side in 0..2 {
                let (ps, fs) = SIDE_FACES[i][side];
                let (pt, ft) = SIDE_FACES[j][side];
                gluings.push([tet_index(k, s, ps), fs, tet_index(k, t, pt), ft]);
            }
        }
    }
    for faces in &layer_faces {
        for tri in 0..surface.simplices().len() {
            let here: Vec<&(usize, usize, usize)> = faces.iter().filter(|f| f.0 == tri).collect();
            if let [a, b] = here.as_slice() {
                gluings.push([a.1, a.2, b.1, b.2]);
            }
        }
    }
    OrderedTriangulation::build(3, vertex_layers * nv, simplices, Some(&gluings), !periodic, None)
}

/// `S² × S¹` over the tetrahedron boundary.
pub fn s2_times_s1() -> OrderedTriangulation {
    prism_stack(&sphere_tetrahedron(), 3, true).expect("periodic stack")
}

/// `T³` over the 3-vertex torus: 9 vertices, 54 tetrahedra.
pub fn three_torus() -> OrderedTriangulation {
    prism_stack(&torus_three_vertex(), 3, true).expect("periodic stack")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(sphere_bipyramid().euler_characteristic(), 2);
        assert_eq!(genus_two().simplices().len(), 26);
        assert_eq!(cylinder(3).euler_characteristic(), 0);
        assert_eq!(cylinder(3).boundary_facets().len(), 6);
        assert_eq!(three_torus().simplices().len(), 54);
        assert_eq!(three_torus().vertex_count(), 9);
    }

    #[test]
    fn open_prism_stack_has_two_boundary_copies() {
        let slab = prism_stack(&torus_three_vertex(), 1, false).unwrap();
        assert_eq!(slab.boundary_facets().len(), 12);
        assert_eq!(slab.euler_characteristic(), 0);
    }
}
