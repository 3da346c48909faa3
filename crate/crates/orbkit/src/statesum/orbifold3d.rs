//! 3d defect sums: regions labeled by spherical fusion data, separated by a
//! defect surface labeled by a bimodule category with traces.
//!
//! Every vertex on the left region precedes every vertex on the right one, so
//! each tetrahedron has side pattern `0⁴`, `0³1`, `0²1²`, `01³` or `1⁴` along
//! its vertex order. These carry `F` of the left data, the left action
//! associator, the middle associator, the right action associator and `F` of
//! the right data, always in the shape `X^{abc}_{d;ef}` with the edge labels
//! of the ordinary sum. Edges weigh the dimension or trace of their label,
//! faces `(ij, jk, ik)` weigh `1/trace(ik)`, tetrahedra `trace(03)`, and
//! vertices `φ²` of their region.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::contraction::{Factor, Network, VarId};
use super::orbifold::{unique_edge, vertex_regions, Stratum, StratumLabel};
use super::triangulation::OrderedTriangulation;
use super::tv::TET_EDGES;
use super::StateSumError;
use crate::fusioncat::{examples, FusionData, FusionError, ModuleCategoryData, SixIndex};
use crate::linalg::Matrix;
use crate::scalars::{Field, Scalar};

/// Label positions of the four faces, indexed by the omitted vertex.
const FACE_LABELS: [[usize; 3]; 4] = [[1, 2, 5], [4, 2, 3], [0, 5, 3], [0, 1, 4]];

/// Associators of a multiplicity-free bimodule category, by tetrahedron pattern.
/// Sparse weights keyed by edge labels.
type WeightTable = Vec<(Vec<u16>, Scalar)>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefectAssociator {
    /// `(c c') ▷ m → c ▷ (c' ▷ m)`, pattern `0³1`.
    Left,
    /// `(c ▷ m) ◁ d → c ▷ (m ◁ d)`, pattern `0²1²`.
    Middle,
    /// `(m ◁ d) ◁ d' → m ◁ (d d')`, pattern `01³`.
    Right,
}

impl DefectAssociator {
    /// Number of left-side vertices of the tetrahedra carrying this associator.
    fn left_vertices(self) -> usize {
        match self {
            DefectAssociator::Left => 3,
            DefectAssociator::Middle => 2,
            DefectAssociator::Right => 1,
        }
    }
}

/// A `C`-`D` bimodule category: simples, both actions, associators and traces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceDefectData {
    left: FusionData,
    right: FusionData,
    objects: usize,
    /// `(c, m, n)` with `c ▷ m → n`.
    left_action: BTreeSet<(usize, usize, usize)>,
    /// `(m, d, n)` with `m ◁ d → n`.
    right_action: BTreeSet<(usize, usize, usize)>,
    symbols: HashMap<(DefectAssociator, SixIndex), Scalar>,
    traces: Vec<Scalar>,
}

impl SurfaceDefectData {
    pub fn new(
        left: FusionData,
        right: FusionData,
        objects: usize,
        left_action: impl IntoIterator<Item = (usize, usize, usize)>,
        right_action: impl IntoIterator<Item = (usize, usize, usize)>,
        symbols: impl IntoIterator<Item = ((DefectAssociator, SixIndex), Scalar)>,
        traces: Vec<Scalar>,
    ) -> Result<Self, FusionError> {
        if left.field() != right.field() {
            return Err(FusionError::Shape("both sides must live over one field".into()));
        }
        if traces.len() != objects {
            return Err(FusionError::Shape("one trace scalar per defect simple".into()));
        }
        let field = left.field();
        let traces = traces.into_iter().map(|t| t.lift(field)).collect::<Result<Vec<_>, _>>()?;
        let mut out = SurfaceDefectData {
            left,
            right,
            objects,
            left_action: left_action.into_iter().collect(),
            right_action: right_action.into_iter().collect(),
            symbols: HashMap::new(),
            traces,
        };
        for ((kind, index), value) in symbols {
            if !out.tet_admissible(kind.left_vertices(), &index) {
                return Err(FusionError::Shape(format!("{kind:?} symbol {index:?} is not admissible")));
            }
            out.symbols.insert((kind, index), value.lift(field)?);
        }
        for kind in [DefectAssociator::Left, DefectAssociator::Middle, DefectAssociator::Right] {
            if let Some(index) = out.labelings(kind.left_vertices()).into_iter().find(|i| !out.symbols.contains_key(&(kind, *i))) {
                return Err(FusionError::Shape(format!("missing {kind:?} symbol {index:?}")));
            }
        }
        Ok(out)
    }

    /// Fusion data as a bimodule over itself: every associator is `F`, traces are dimensions.
    pub fn regular(base: &FusionData) -> Self {
        let fusion: Vec<_> = base.fusion_triples().copied().collect();
        let symbols = base.f_entries().into_iter().flat_map(|(index, value)| {
            [DefectAssociator::Left, DefectAssociator::Middle, DefectAssociator::Right].map(|kind| ((kind, index), value.clone()))
        });
        let traces = (0..base.rank()).map(|a| base.qdim(a).clone()).collect();
        Self::new(base.clone(), base.clone(), base.rank(), fusion.clone(), fusion, symbols, traces).expect("regular bimodule category")
    }

    /// A left module category, with the trivial fusion category acting on the right.
    pub fn from_left_module(module: &ModuleCategoryData) -> Result<Self, FusionError> {
        let field = module.base.field();
        let trivial = examples::cyclic_with_cocycle(1, field, |_, _, _| field.one());
        let right_action: Vec<_> = (0..module.objects).map(|m| (m, 0, m)).collect();
        let mut symbols: Vec<((DefectAssociator, SixIndex), Scalar)> =
            module.symbols.iter().map(|(k, v)| ((DefectAssociator::Left, *k), v.clone())).collect();
        for &(c, m, n) in &module.action {
            symbols.push(((DefectAssociator::Middle, [c, m, 0, n, n, m]), field.one()));
        }
        for m in 0..module.objects {
            symbols.push(((DefectAssociator::Right, [m, 0, 0, m, m, 0]), field.one()));
        }
        Self::new(module.base.clone(), trivial, module.objects, module.action.iter().copied(), right_action, symbols, module.traces.clone())
    }

    pub fn left(&self) -> &FusionData {
        &self.left
    }

    pub fn right(&self) -> &FusionData {
        &self.right
    }

    pub fn objects(&self) -> usize {
        self.objects
    }

    pub fn traces(&self) -> &[Scalar] {
        &self.traces
    }

    fn field(&self) -> Field {
        self.left.field()
    }

    /// Number of simple labels on an edge with `c` left-side endpoints.
    fn edge_domain(&self, c: usize) -> usize {
        match c {
            2 => self.left.rank(),
            1 => self.objects,
            _ => self.right.rank(),
        }
    }

    fn edge_weight(&self, c: usize, label: usize) -> Scalar {
        match c {
            2 => self.left.qdim(label).clone(),
            1 => self.traces[label].clone(),
            _ => self.right.qdim(label).clone(),
        }
    }

    /// Whether `(ij, jk, ik)` is admissible on a face with `c` left-side vertices.
    fn face_admissible(&self, c: usize, [x, y, z]: [usize; 3]) -> bool {
        match c {
            3 => self.left.fuses(x, y, z),
            2 => self.left_action.contains(&(x, y, z)),
            1 => self.right_action.contains(&(x, y, z)),
            _ => self.right.fuses(x, y, z),
        }
    }

    fn tet_admissible(&self, c: usize, labels: &SixIndex) -> bool {
        TET_EDGES.iter().enumerate().all(|(k, &(p, q))| labels[k] < self.edge_domain(usize::from(p < c) + usize::from(q < c)))
            && FACE_LABELS.iter().enumerate().all(|(omit, pos)| self.face_admissible(c - usize::from(omit < c), pos.map(|p| labels[p])))
    }

    /// Admissible labelings of a tetrahedron with `c` left-side vertices.
    fn labelings(&self, c: usize) -> Vec<SixIndex> {
        let domains = TET_EDGES.map(|(p, q)| self.edge_domain(usize::from(p < c) + usize::from(q < c)));
        let mut out = Vec::new();
        let total: usize = domains.iter().product();
        for mut code in 0..total {
            let mut labels = [0; 6];
            for (slot, &d) in labels.iter_mut().zip(&domains) {
                *slot = code % d;
                code /= d;
            }
            if self.tet_admissible(c, &labels) {
                out.push(labels);
            }
        }
        out
    }

    fn symbol(&self, c: usize, labels: &SixIndex) -> Option<Scalar> {
        match c {
            4 => self.left.f(labels).cloned(),
            3 => self.symbols.get(&(DefectAssociator::Left, *labels)).cloned(),
            2 => self.symbols.get(&(DefectAssociator::Middle, *labels)).cloned(),
            1 => self.symbols.get(&(DefectAssociator::Right, *labels)).cloned(),
            _ => self.right.f(labels).cloned(),
        }
    }

    /// Tetrahedron weights for both orientations, keyed by the six edge labels.
    fn tet_tables(&self, c: usize) -> Result<(WeightTable, WeightTable), StateSumError> {
        let field = self.field();
        let labelings = self.labelings(c);
        let d_trace = |l: &SixIndex| self.edge_weight(usize::from(c > 0) + usize::from(c > 3), l[3]);
        let key = |l: &SixIndex| l.iter().map(|&x| x as u16).collect::<Vec<u16>>();
        let positive =
            labelings.iter().filter_map(|l| self.symbol(c, l).map(|v| (key(l), v * d_trace(l)))).filter(|(_, v)| !v.is_zero()).collect();
        // Each block with fixed outer labels `(a, b, c, d)` is a matrix from `f` to `e`.
        let mut blocks: HashMap<[usize; 4], (Vec<usize>, Vec<usize>)> = HashMap::new();
        for l in &labelings {
            let block = blocks.entry([l[0], l[1], l[2], l[3]]).or_default();
            if !block.0.contains(&l[4]) {
                block.0.push(l[4]);
            }
            if !block.1.contains(&l[5]) {
                block.1.push(l[5]);
            }
        }
        let mut negative = Vec::new();
        for (outer, (es, fs)) in blocks {
            let entry =
                |e: usize, f: usize| self.symbol(c, &[outer[0], outer[1], outer[2], outer[3], e, f]).unwrap_or_else(|| field.zero());
            let matrix = Matrix::from_fn(es.len(), fs.len(), field, |i, j| entry(es[i], fs[j]));
            let inverse = matrix
                .inverse()
                .map_err(|_| StateSumError::LabelAdjacencyViolation(format!("associator block {outer:?} is not invertible")))?;
            for (j, &f) in fs.iter().enumerate() {
                for (i, &e) in es.iter().enumerate() {
                    let value = inverse.get(j, i);
                    let labels = [outer[0], outer[1], outer[2], outer[3], e, f];
                    if !value.is_zero() && self.tet_admissible(c, &labels) {
                        negative.push((key(&labels), value * &d_trace(&labels)));
                    }
                }
            }
        }
        Ok((positive, negative))
    }
}

/// Side assignment of a 3d stratified complex.
#[derive(Debug, Clone)]
pub(crate) struct SolidLayout {
    /// `true` for vertices of the left (lower) region.
    left_side: Vec<bool>,
    left_region: usize,
    surface: Option<usize>,
    crossed_edges: usize,
}

impl SolidLayout {
    pub(crate) fn derive(t: &OrderedTriangulation, strata: &[Stratum]) -> Result<Self, StateSumError> {
        for s in strata {
            let ok = match s.dim {
                3 => matches!(s.label, StratumLabel::Fusion(_)),
                2 => matches!(s.label, StratumLabel::SurfaceDefect(_)),
                _ => return Err(StateSumError::UnsupportedStratification(format!("{}-dimensional strata in a 3-manifold", s.dim))),
            };
            if !ok {
                return Err(StateSumError::LabelAdjacencyViolation(format!("wrong label kind on a {}-dimensional stratum", s.dim)));
            }
        }
        let region_of_vertex = vertex_regions(t, strata)?;
        let left_region = region_of_vertex[0];
        let left_side: Vec<bool> = region_of_vertex.iter().map(|&r| r == left_region).collect();
        let mut regions: Vec<usize> = region_of_vertex.clone();
        regions.sort_unstable();
        regions.dedup();
        let surfaces: Vec<usize> = (0..strata.len()).filter(|&k| strata[k].dim == 2).collect();
        let (right_region, surface): (Option<usize>, Option<usize>) = match (regions.as_slice(), surfaces.as_slice()) {
            ([_], []) => (None, None),
            ([_, _], [surface]) => {
                let right = *regions.iter().find(|&&r| r != left_region).expect("two regions");
                (Some(right), Some(*surface))
            }
            _ => {
                return Err(StateSumError::UnsupportedStratification(
                    "only one region, or two regions with one defect surface, are supported".into(),
                ))
            }
        };
        let last_left = left_side.iter().rposition(|&l| l).expect("vertex 0");
        if left_side[..=last_left].iter().any(|&l| !l) {
            return Err(StateSumError::TransversalityViolation("left-region vertices must precede right-region vertices".into()));
        }
        let edges = t.edges();
        let crossed: HashSet<usize> = (0..edges.len()).filter(|&e| left_side[edges[e][0]] != left_side[edges[e][1]]).collect();
        if let Some(k) = surface {
            let stratum = &strata[k];
            if stratum.orient < 0 {
                return Err(StateSumError::TransversalityViolation("the defect surface must face the right region".into()));
            }
            let listed = stratum.support.iter().map(|pair| unique_edge(t, pair)).collect::<Result<HashSet<_>, _>>()?;
            if listed != crossed {
                return Err(StateSumError::TransversalityViolation(
                    "the defect surface must cross exactly the edges joining the regions".into(),
                ));
            }
            let StratumLabel::SurfaceDefect(data) = &stratum.label else { unreachable!("checked kind") };
            let region_label = |r: usize| match &strata[r].label {
                StratumLabel::Fusion(f) => f,
                _ => unreachable!("checked kind"),
            };
            if region_label(left_region) != data.left() || region_label(right_region.expect("two regions")) != data.right() {
                return Err(StateSumError::LabelAdjacencyViolation("region labels differ from the sides of the defect surface".into()));
            }
        }
        Ok(SolidLayout { left_side, left_region, surface, crossed_edges: crossed.len() })
    }

    /// Edges crossing the defect surface, one per new dual 2-cell inside it.
    pub(crate) fn defect_dual_cells(&self) -> Vec<usize> {
        vec![self.crossed_edges]
    }

    fn left_count(&self, vertices: impl IntoIterator<Item = usize>) -> usize {
        vertices.into_iter().filter(|&v| self.left_side[v]).count()
    }
}

pub(crate) fn solid_evaluate(t: &OrderedTriangulation, strata: &[Stratum], layout: &SolidLayout) -> Result<Network, StateSumError> {
    let region_label = |r: usize| match &strata[r].label {
        StratumLabel::Fusion(f) => f.clone(),
        _ => unreachable!("checked kind"),
    };
    let data = match layout.surface {
        Some(k) => match &strata[k].label {
            StratumLabel::SurfaceDefect(d) => d.clone(),
            _ => unreachable!("checked kind"),
        },
        None => SurfaceDefectData::regular(&region_label(layout.left_region)),
    };
    let phi_left = data.left().phi_squared().ok_or(StateSumError::MissingEulerDatum)?;
    let phi_right = data.right().phi_squared().ok_or(StateSumError::MissingEulerDatum)?;
    let field = data.field();
    let mut network = Network::new(field);
    let left_vertices = layout.left_count(0..t.vertex_count()) as i64;
    let vertex_weight =
        phi_left.pow(left_vertices).expect("nonzero φ²") * phi_right.pow(t.vertex_count() as i64 - left_vertices).expect("nonzero φ²");
    network.add_factor(Factor::scalar(vertex_weight));

    let edges = t.edges();
    let edge_sides: Vec<usize> = edges.iter().map(|e| layout.left_count(e.iter().copied())).collect();
    let vars: Vec<VarId> = edge_sides.iter().map(|&c| network.add_var(data.edge_domain(c))).collect();
    for (e, &var) in vars.iter().enumerate() {
        let c = edge_sides[e];
        let weights = (0..data.edge_domain(c)).map(|l| (vec![l as u16], data.edge_weight(c, l)));
        network.add_factor(Factor::new(vec![var], weights));
    }

    let mut face_tables: HashMap<usize, Vec<(Vec<u16>, Scalar)>> = HashMap::new();
    let mut seen = HashSet::new();
    for s in 0..t.simplices().len() {
        for omit in 0..4 {
            if !seen.insert(t.facet_class(s, omit)) {
                continue;
            }
            let p: Vec<usize> = (0..4).filter(|&x| x != omit).collect();
            let c = layout.left_count(p.iter().map(|&x| t.simplices()[s][x]));
            let table = face_tables.entry(c).or_insert_with(|| face_table(&data, c));
            let face_vars = vec![vars[t.edge_of(s, p[0], p[1])], vars[t.edge_of(s, p[1], p[2])], vars[t.edge_of(s, p[0], p[2])]];
            network.add_factor(Factor::new(face_vars, table.clone()));
        }
    }

    let mut tet_tables = HashMap::new();
    for (s, simplex) in t.simplices().iter().enumerate() {
        let c = layout.left_count(simplex.iter().copied());
        if let std::collections::hash_map::Entry::Vacant(e) = tet_tables.entry(c) {
            e.insert(data.tet_tables(c)?);
        }
        let (positive, negative) = &tet_tables[&c];
        let tet_vars = TET_EDGES.iter().map(|&(p, q)| vars[t.edge_of(s, p, q)]).collect();
        let table = if t.sign(s) > 0 { positive } else { negative };
        network.add_factor(Factor::new(tet_vars, table.clone()));
    }
    Ok(network)
}

/// `1/trace(ik)` on admissible `(ij, jk, ik)` of a face with `c` left-side vertices.
fn face_table(data: &SurfaceDefectData, c: usize) -> Vec<(Vec<u16>, Scalar)> {
    let (outer, inner) = match c {
        3 => (2, 2),
        2 => (2, 1),
        1 => (1, 0),
        _ => (0, 0),
    };
    // Left endpoints of the edges `ij`, `jk` and `ik`.
    let ik = usize::from(c > 0) + usize::from(c == 3);
    let mut out = Vec::new();
    for x in 0..data.edge_domain(outer) {
        for y in 0..data.edge_domain(inner) {
            for z in 0..data.edge_domain(ik) {
                if data.face_admissible(c, [x, y, z]) {
                    let w = data.edge_weight(ik, z).inv().expect("nonzero trace");
                    out.push((vec![x as u16, y as u16, z as u16], w));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statesum::orbifold::{orbifold_evaluate, StratifiedComplex};
    use crate::statesum::{fixtures, tv_evaluate};

    fn split(t: &OrderedTriangulation, left: usize, c: &FusionData, d: &FusionData, data: &SurfaceDefectData) -> StratifiedComplex {
        let n = t.vertex_count();
        let crossed: Vec<Vec<usize>> = t.edges().into_iter().filter(|e| e[0] < left && e[1] >= left).map(|e| e.to_vec()).collect();
        let strata = vec![
            Stratum { dim: 3, support: (0..left).map(|v| vec![v]).collect(), label: StratumLabel::Fusion(c.clone()), orient: 1 },
            Stratum { dim: 3, support: (left..n).map(|v| vec![v]).collect(), label: StratumLabel::Fusion(d.clone()), orient: 1 },
            Stratum { dim: 2, support: crossed, label: StratumLabel::SurfaceDefect(data.clone()), orient: 1 },
        ];
        StratifiedComplex::new(t.clone(), strata).unwrap()
    }

    #[test]
    fn trivial_stratification_reproduces_the_ordinary_sum() {
        for data in [examples::fibonacci(), examples::vec_z2_twisted(), examples::vec_cyclic(3)] {
            for t in [fixtures::s3_two_tet(), fixtures::s3_pentachoron(), fixtures::s2_times_s1()] {
                let s = StratifiedComplex::trivial(t.clone(), StratumLabel::Fusion(data.clone())).unwrap();
                assert_eq!(orbifold_evaluate(&s).unwrap().value, tv_evaluate(&t, &data).unwrap().value);
            }
        }
    }

    #[test]
    fn regular_defect_surface_is_transparent() {
        for data in [examples::fibonacci(), examples::vec_z2_twisted()] {
            let regular = SurfaceDefectData::regular(&data);
            for (t, left) in [(fixtures::s3_pentachoron(), 2), (fixtures::s3_pentachoron(), 4), (fixtures::s2_times_s1(), 4)] {
                let s = split(&t, left, &data, &data, &regular);
                assert_eq!(orbifold_evaluate(&s).unwrap().value, tv_evaluate(&t, &data).unwrap().value);
            }
        }
    }

    /// Flat `ℤ/2` labelings of the full subcomplex on vertices `0..left`.
    fn flat_cochains(t: &OrderedTriangulation, left: usize) -> usize {
        let edges: Vec<[usize; 2]> = t.edges().into_iter().filter(|e| e[1] < left).collect();
        let faces: Vec<[usize; 3]> = t.triangles().into_iter().filter(|f| f[2] < left).collect();
        let index = |a: usize, b: usize| edges.iter().position(|e| *e == [a, b]).unwrap();
        (0..1usize << edges.len())
            .filter(|bits| {
                faces.iter().all(|f| ((bits >> index(f[0], f[1])) ^ (bits >> index(f[1], f[2])) ^ (bits >> index(f[0], f[2]))) & 1 == 0)
            })
            .count()
    }

    #[test]
    fn dirichlet_surface_matches_the_counting_oracle() {
        let q = Field::RATIONALS;
        let z2 = examples::vec_cyclic(2);
        for lambda in [q.one(), q.int(3)] {
            let module = ModuleCategoryData::new(
                z2.clone(),
                1,
                [(0, 0, 0), (1, 0, 0)],
                [[0, 0, 0, 0, 0, 0], [0, 1, 0, 0, 1, 0], [1, 0, 0, 0, 1, 0], [1, 1, 0, 0, 0, 0]].map(|k| (k, q.one())),
                vec![lambda.clone()],
            )
            .unwrap();
            let data = SurfaceDefectData::from_left_module(&module).unwrap();
            let trivial = data.right().clone();
            for (t, left, surface_euler) in [(fixtures::s3_pentachoron(), 2, 2), (fixtures::s2_times_s1(), 4, 4)] {
                let s = split(&t, left, &z2, &trivial, &data);
                // φ² = 1/2 per left vertex, one weight per flat labeling, λ^χ from the surface.
                let oracle =
                    q.ratio(1, 2).pow(left as i64).unwrap() * q.int(flat_cochains(&t, left) as i64) * lambda.pow(surface_euler).unwrap();
                assert_eq!(orbifold_evaluate(&s).unwrap().value, oracle);
            }
        }
    }

    #[test]
    fn unsorted_sides_are_rejected() {
        let data = examples::vec_cyclic(2);
        let t = fixtures::s3_pentachoron();
        let strata = vec![
            Stratum { dim: 3, support: vec![vec![0], vec![2]], label: StratumLabel::Fusion(data.clone()), orient: 1 },
            Stratum { dim: 3, support: vec![vec![1], vec![3], vec![4]], label: StratumLabel::Fusion(data.clone()), orient: 1 },
            Stratum { dim: 2, support: vec![], label: StratumLabel::SurfaceDefect(SurfaceDefectData::regular(&data)), orient: 1 },
        ];
        assert!(matches!(StratifiedComplex::new(t, strata), Err(StateSumError::TransversalityViolation(_))));
    }

    #[test]
    fn mismatched_sides_are_rejected() {
        let z2 = examples::vec_cyclic(2);
        let t = fixtures::s3_pentachoron();
        let crossed: Vec<Vec<usize>> = t.edges().into_iter().filter(|e| e[0] < 2 && e[1] >= 2).map(|e| e.to_vec()).collect();
        let strata = vec![
            Stratum { dim: 3, support: vec![vec![0], vec![1]], label: StratumLabel::Fusion(z2.clone()), orient: 1 },
            Stratum {
                dim: 3,
                support: (2..5).map(|v| vec![v]).collect(),
                label: StratumLabel::Fusion(examples::vec_z2_twisted()),
                orient: 1,
            },
            Stratum { dim: 2, support: crossed, label: StratumLabel::SurfaceDefect(SurfaceDefectData::regular(&z2)), orient: 1 },
        ];
        assert!(matches!(StratifiedComplex::new(t, strata), Err(StateSumError::LabelAdjacencyViolation(_))));
    }
}
