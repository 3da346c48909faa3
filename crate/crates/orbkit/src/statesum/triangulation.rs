//! Oriented triangulations whose vertices carry a strict total order.
//!
//! A top simplex is its strictly increasing vertex tuple. Facets are glued
//! order-preservingly, so glued facets always carry the same vertex tuple;
//! when a tuple occurs exactly twice the gluing is inferred, otherwise it is
//! listed explicitly. Several simplices may share a vertex set and several
//! edges may share endpoints (Δ-complexes), but no simplex repeats a vertex.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::StateSumError;
use crate::schema::SCHEMA_VERSION;

/// Facet `i` of simplex `s` is the facet omitting the vertex in position `i`.
pub type FacetRef = (usize, usize);

/// `[s, i, t, j]`: facet `i` of simplex `s` is glued to facet `j` of simplex `t`.
pub type Gluing = [usize; 4];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationFile {
    pub schema_version: u32,
    pub dim: usize,
    pub vertices: usize,
    pub simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gluings: Option<Vec<Gluing>>,
}

/// Equivalence classes of `k`-dimensional faces of the top simplices.
#[derive(Debug, Clone, PartialEq, Eq)]
struct CellClasses {
    /// Vertex tuple of each class.
    tuples: Vec<Vec<usize>>,
    /// Per simplex, the class of each position subset (lexicographic order).
    of_simplex: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedTriangulation {
    dim: usize,
    vertices: usize,
    simplices: Vec<Vec<usize>>,
    neighbors: Vec<Vec<Option<FacetRef>>>,
    signs: Vec<i8>,
    /// Index `k - 1` holds the `k`-cells for `1 ≤ k < dim`.
    cells: Vec<CellClasses>,
}

/// Position subsets of `0..n` with `size` elements, lexicographic.
pub(crate) fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn invalid(msg: impl Into<String>) -> StateSumError {
    StateSumError::InvalidTriangulation(msg.into())
}

fn facet_tuple(simplex: &[usize], omit: usize) -> Vec<usize> {
    simplex.iter().enumerate().filter(|&(p, _)| p != omit).map(|(_, &v)| v).collect()
}

impl OrderedTriangulation {
    /// Closed triangulation with gluings inferred from facet vertex sets.
    pub fn new(dim: usize, vertices: usize, simplices: Vec<Vec<usize>>) -> Result<Self, StateSumError> {
        Self::build(dim, vertices, simplices, None, false, None)
    }

    pub fn with_gluings(dim: usize, vertices: usize, simplices: Vec<Vec<usize>>, gluings: &[Gluing]) -> Result<Self, StateSumError> {
        Self::build(dim, vertices, simplices, Some(gluings), false, None)
    }

    /// Like [`Self::new`] or [`Self::with_gluings`], but unglued facets form the boundary.
    pub fn with_boundary(
        dim: usize,
        vertices: usize,
        simplices: Vec<Vec<usize>>,
        gluings: Option<&[Gluing]>,
    ) -> Result<Self, StateSumError> {
        Self::build(dim, vertices, simplices, gluings, true, None)
    }

    pub fn from_file(file: &TriangulationFile) -> Result<Self, StateSumError> {
        if file.schema_version != SCHEMA_VERSION {
            return Err(StateSumError::SchemaVersionMismatch { found: file.schema_version });
        }
        Self::build(file.dim, file.vertices, file.simplices.clone(), file.gluings.as_deref(), false, None)
    }

    pub fn to_file(&self) -> TriangulationFile {
        TriangulationFile {
            schema_version: SCHEMA_VERSION,
            dim: self.dim,
            vertices: self.vertices,
            simplices: self.simplices.clone(),
            gluings: Some(self.gluings()),
        }
    }

    pub(crate) fn build(
        dim: usize,
        vertices: usize,
        simplices: Vec<Vec<usize>>,
        gluings: Option<&[Gluing]>,
        allow_boundary: bool,
        signs: Option<Vec<i8>>,
    ) -> Result<Self, StateSumError> {
        if !(1..=3).contains(&dim) {
            return Err(invalid(format!("dimension {dim} is not supported")));
        }
        for (s, simplex) in simplices.iter().enumerate() {
            if simplex.len() != dim + 1 {
                return Err(invalid(format!("simplex {s} has {} vertices", simplex.len())));
            }
            if simplex.windows(2).any(|w| w[0] >= w[1]) {
                return Err(invalid(format!("simplex {s} is not strictly increasing")));
            }
            if simplex[dim] >= vertices {
                return Err(invalid(format!("simplex {s} uses a vertex outside 0..{vertices}")));
            }
        }
        let mut neighbors = vec![vec![None; dim + 1]; simplices.len()];
        match gluings {
            Some(list) => {
                for &[s, i, t, j] in list {
                    if s >= simplices.len() || t >= simplices.len() || i > dim || j > dim {
                        return Err(invalid(format!("gluing {:?} is out of range", [s, i, t, j])));
                    }
                    if (s, i) == (t, j) {
                        return Err(invalid(format!("facet {i} of simplex {s} is glued to itself")));
                    }
                    if facet_tuple(&simplices[s], i) != facet_tuple(&simplices[t], j) {
                        return Err(invalid(format!("gluing {:?} joins facets with different vertices", [s, i, t, j])));
                    }
                    if neighbors[s][i].is_some() || neighbors[t][j].is_some() {
                        return Err(invalid(format!("gluing {:?} reuses a facet", [s, i, t, j])));
                    }
                    neighbors[s][i] = Some((t, j));
                    neighbors[t][j] = Some((s, i));
                }
            }
            None => {
                let mut by_tuple: HashMap<Vec<usize>, Vec<FacetRef>> = HashMap::new();
                for (s, simplex) in simplices.iter().enumerate() {
                    for i in 0..=dim {
                        by_tuple.entry(facet_tuple(simplex, i)).or_default().push((s, i));
                    }
                }
                for (tuple, refs) in by_tuple {
                    match refs.as_slice() {
                        [a, b] => {
                            neighbors[a.0][a.1] = Some(*b);
                            neighbors[b.0][b.1] = Some(*a);
                        }
                        [_] => {}
                        _ => return Err(invalid(format!("facet {tuple:?} occurs {} times; list gluings explicitly", refs.len()))),
                    }
                }
            }
        }
        if !allow_boundary {
            for (s, row) in neighbors.iter().enumerate() {
                if let Some(i) = row.iter().position(Option::is_none) {
                    return Err(StateSumError::NotClosed(format!("facet {i} of simplex {s} is unglued")));
                }
            }
        }
        let signs = match signs {
            Some(signs) => signs,
            None => orient(&neighbors)?,
        };
        check_orientation(&neighbors, &signs)?;
        let cells = (1..dim).map(|k| classes(&simplices, &neighbors, dim, k)).collect();
        Ok(OrderedTriangulation { dim, vertices, simplices, neighbors, signs, cells })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn sign(&self, s: usize) -> i8 {
        self.signs[s]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn neighbor(&self, s: usize, facet: usize) -> Option<FacetRef> {
        self.neighbors[s][facet]
    }

    pub fn is_closed(&self) -> bool {
        self.neighbors.iter().all(|row| row.iter().all(Option::is_some))
    }

    pub fn boundary_facets(&self) -> Vec<FacetRef> {
        let mut out = Vec::new();
        for (s, row) in self.neighbors.iter().enumerate() {
            for (i, n) in row.iter().enumerate() {
                if n.is_none() {
                    out.push((s, i));
                }
            }
        }
        out
    }

    /// Every gluing once, smaller facet reference first.
    pub fn gluings(&self) -> Vec<Gluing> {
        let mut out = Vec::new();
        for (s, row) in self.neighbors.iter().enumerate() {
            for (i, n) in row.iter().enumerate() {
                if let Some((t, j)) = *n {
                    if (s, i) < (t, j) {
                        out.push([s, i, t, j]);
                    }
                }
            }
        }
        out
    }

    /// Number of `k`-cells; vertices are their labels, top cells are the simplices.
    pub fn cell_count(&self, k: usize) -> usize {
        match k {
            0 => self.vertices,
            k if k == self.dim => self.simplices.len(),
            k if k < self.dim => self.cells[k - 1].tuples.len(),
            _ => 0,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..=self.dim).map(|k| if k % 2 == 0 { 1 } else { -1 } * self.cell_count(k) as i64).sum()
    }

    /// Edge classes as `[low, high]` vertex pairs.
    pub fn edges(&self) -> Vec<[usize; 2]> {
        if self.dim == 1 {
            return self.simplices.iter().map(|s| [s[0], s[1]]).collect();
        }
        self.cells[0].tuples.iter().map(|t| [t[0], t[1]]).collect()
    }

    /// Edge class of the edge through positions `p < q` of simplex `s`.
    pub fn edge_of(&self, s: usize, p: usize, q: usize) -> usize {
        if self.dim == 1 {
            return s;
        }
        let idx = subsets(self.dim + 1, 2).iter().position(|x| x == &[p, q]).expect("position pair");
        self.cells[0].of_simplex[s][idx]
    }

    /// Triangle classes of a 3d triangulation as vertex triples.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        match self.dim {
            2 => self.simplices.iter().map(|s| [s[0], s[1], s[2]]).collect(),
            3 => self.cells[1].tuples.iter().map(|t| [t[0], t[1], t[2]]).collect(),
            _ => Vec::new(),
        }
    }

    /// Class of facet `i` of simplex `s` among the `(dim-1)`-cells.
    pub fn facet_class(&self, s: usize, i: usize) -> usize {
        let positions: Vec<usize> = (0..=self.dim).filter(|&p| p != i).collect();
        let idx = subsets(self.dim + 1, self.dim).iter().position(|x| x == &positions).expect("facet positions");
        self.cells[self.dim - 2].of_simplex[s][idx]
    }

    /// Simplices and positions containing each vertex label.
    pub fn vertex_star(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (s, simplex) in self.simplices.iter().enumerate() {
            if let Some(p) = simplex.iter().position(|&x| x == v) {
                out.push((s, p));
            }
        }
        out
    }

    /// Instances `(simplex, p, q)` of an edge class.
    pub fn edge_star(&self, edge: usize) -> Vec<(usize, usize, usize)> {
        let pairs = subsets(self.dim + 1, 2);
        let mut out = Vec::new();
        for s in 0..self.simplices.len() {
            for (idx, pq) in pairs.iter().enumerate() {
                let class = if self.dim == 1 { s } else { self.cells[0].of_simplex[s][idx] };
                if class == edge {
                    out.push((s, pq[0], pq[1]));
                }
            }
        }
        out
    }

    /// Same complex under a new vertex order; orientations are preserved.
    pub fn relabel(&self, new_label: &[usize]) -> Result<Self, StateSumError> {
        let mut seen = vec![false; self.vertices];
        if new_label.len() != self.vertices || new_label.iter().any(|&v| v >= self.vertices || std::mem::replace(&mut seen[v], true)) {
            return Err(invalid("relabeling is not a permutation of the vertices"));
        }
        let mut simplices = Vec::new();
        let mut signs = Vec::new();
        // Position of each old position after sorting.
        let mut moved = Vec::new();
        for (s, simplex) in self.simplices.iter().enumerate() {
            let mapped: Vec<usize> = simplex.iter().map(|&v| new_label[v]).collect();
            let mut order: Vec<usize> = (0..mapped.len()).collect();
            order.sort_by_key(|&p| mapped[p]);
            let mut inversions = 0;
            for a in 0..order.len() {
                for b in a + 1..order.len() {
                    if order[a] > order[b] {
                        inversions += 1;
                    }
                }
            }
            let mut pos = vec![0; order.len()];
            for (new_p, &old_p) in order.iter().enumerate() {
                pos[old_p] = new_p;
            }
            simplices.push(order.iter().map(|&p| mapped[p]).collect());
            signs.push(if inversions % 2 == 0 { self.signs[s] } else { -self.signs[s] });
            moved.push(pos);
        }
        let gluings: Vec<Gluing> = self.gluings().iter().map(|&[s, i, t, j]| [s, moved[s][i], t, moved[t][j]]).collect();
        Self::build(self.dim, self.vertices, simplices, Some(&gluings), !self.is_closed(), Some(signs))
    }

    /// Disjoint union; the second complex's vertices follow the first's.
    pub fn disjoint_union(&self, other: &Self) -> Result<Self, StateSumError> {
        if self.dim != other.dim {
            return Err(invalid("disjoint union of different dimensions"));
        }
        let shift_v = self.vertices;
        let shift_s = self.simplices.len();
        let mut simplices = self.simplices.clone();
        simplices.extend(other.simplices.iter().map(|s| s.iter().map(|v| v + shift_v).collect()));
        let mut gluings = self.gluings();
        gluings.extend(other.gluings().iter().map(|&[s, i, t, j]| [s + shift_s, i, t + shift_s, j]));
        let mut signs = self.signs.clone();
        signs.extend_from_slice(&other.signs);
        Self::build(
            self.dim,
            self.vertices + other.vertices,
            simplices,
            Some(&gluings),
            !(self.is_closed() && other.is_closed()),
            Some(signs),
        )
    }
}

/// Breadth-first orientation: glued facets must receive opposite induced signs.
fn orient(neighbors: &[Vec<Option<FacetRef>>]) -> Result<Vec<i8>, StateSumError> {
    let mut signs = vec![0i8; neighbors.len()];
    for start in 0..neighbors.len() {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            for (i, n) in neighbors[s].iter().enumerate() {
                let Some((t, j)) = *n else { continue };
                let want = -signs[s] * parity(i) * parity(j);
                if signs[t] == 0 {
                    signs[t] = want;
                    queue.push_back(t);
                } else if signs[t] != want {
                    return Err(StateSumError::NonOrientable);
                }
            }
        }
    }
    Ok(signs)
}

fn check_orientation(neighbors: &[Vec<Option<FacetRef>>], signs: &[i8]) -> Result<(), StateSumError> {
    if signs.len() != neighbors.len() || signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(invalid("one sign ±1 per simplex"));
    }
    for (s, row) in neighbors.iter().enumerate() {
        for (i, n) in row.iter().enumerate() {
            if let Some((t, j)) = *n {
                if signs[s] * parity(i) != -signs[t] * parity(j) {
                    return Err(StateSumError::NonOrientable);
                }
            }
        }
    }
    Ok(())
}

pub(crate) fn parity(i: usize) -> i8 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `k`-cell classes from facet gluings.
fn classes(simplices: &[Vec<usize>], neighbors: &[Vec<Option<FacetRef>>], dim: usize, k: usize) -> CellClasses {
    let combos = subsets(dim + 1, k + 1);
    let index: HashMap<&Vec<usize>, usize> = combos.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let per = combos.len();
    let mut uf = UnionFind::new(simplices.len() * per);
    for (s, row) in neighbors.iter().enumerate() {
        for (i, n) in row.iter().enumerate() {
            let Some((t, j)) = *n else { continue };
            let from: Vec<usize> = (0..=dim).filter(|&p| p != i).collect();
            let to: Vec<usize> = (0..=dim).filter(|&p| p != j).collect();
            for c in &combos {
                if c.iter().all(|p| from.contains(p)) {
                    let mapped: Vec<usize> = c.iter().map(|p| to[from.iter().position(|x| x == p).unwrap()]).collect();
                    uf.union(s * per + index[c], t * per + index[&mapped]);
                }
            }
        }
    }
    let mut class_of_root = HashMap::new();
    let mut tuples = Vec::new();
    let mut of_simplex = vec![vec![0; per]; simplices.len()];
    for (s, simplex) in simplices.iter().enumerate() {
        for (ci, c) in combos.iter().enumerate() {
            let root = uf.find(s * per + ci);
            let class = *class_of_root.entry(root).or_insert_with(|| {
                tuples.push(c.iter().map(|&p| simplex[p]).collect());
                tuples.len() - 1
            });
            of_simplex[s][ci] = class;
        }
    }
    CellClasses { tuples, of_simplex }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statesum::fixtures;

    #[test]
    fn tetrahedron_boundary_is_a_sphere() {
        let t = fixtures::sphere_tetrahedron();
        assert_eq!(t.euler_characteristic(), 2);
        assert_eq!(t.edges().len(), 6);
        assert!(t.is_closed());
    }

    #[test]
    fn lattice_tori_have_vanishing_euler_characteristic() {
        for t in [fixtures::torus_three_vertex(), fixtures::torus_four_vertex(), fixtures::torus_seven_vertex()] {
            assert_eq!(t.euler_characteristic(), 0);
        }
        assert_eq!(fixtures::torus_three_vertex().edges().len(), 9);
        assert_eq!(fixtures::genus_two().euler_characteristic(), -2);
    }

    #[test]
    fn three_manifolds_have_vanishing_euler_characteristic() {
        for t in [fixtures::s3_two_tet(), fixtures::s3_pentachoron(), fixtures::s2_times_s1(), fixtures::three_torus()] {
            assert_eq!(t.euler_characteristic(), 0, "{:?}", t.simplices().len());
            assert!(t.is_closed());
        }
    }

    #[test]
    fn orientation_is_consistent_and_survives_relabeling() {
        let t = fixtures::s3_pentachoron();
        let r = t.relabel(&[4, 2, 0, 1, 3]).unwrap();
        assert_eq!(r.euler_characteristic(), 0);
        // Reversing the order of a 3-simplex is an even permutation.
        let rev = t.relabel(&[4, 3, 2, 1, 0]).unwrap();
        assert_eq!(rev.signs(), t.signs());
    }

    #[test]
    fn unglued_facets_are_rejected_unless_boundary_is_allowed() {
        let simplices = vec![vec![0, 1, 2]];
        assert!(matches!(OrderedTriangulation::new(2, 3, simplices.clone()), Err(StateSumError::NotClosed(_))));
        let disk = OrderedTriangulation::with_boundary(2, 3, simplices, None).unwrap();
        assert_eq!(disk.boundary_facets().len(), 3);
    }

    #[test]
    fn mismatched_gluing_is_rejected() {
        let err = OrderedTriangulation::with_gluings(2, 4, vec![vec![0, 1, 2], vec![1, 2, 3]], &[[0, 0, 1, 0]]).unwrap_err();
        assert!(matches!(err, StateSumError::InvalidTriangulation(_)));
    }

    #[test]
    fn file_roundtrip() {
        let t = fixtures::torus_three_vertex();
        let back = OrderedTriangulation::from_file(&t.to_file()).unwrap();
        assert_eq!(back, t);
    }
}
