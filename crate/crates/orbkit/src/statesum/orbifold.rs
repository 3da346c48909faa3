//! Defect state sums on stratified triangulations.
//!
//! A stratified complex is an ordered triangulation with labeled strata.
//! Top strata are given by vertex sets. Codimension-1 strata are given by the
//! edges they cross. Codimension-2 strata sit on one crossed edge.
//!
//! In 2d every triangle meets at most one defect line and then crosses it
//! through exactly two of its edges. Region triangles carry `ε(ψ·e e e)`.
//! Line triangles carry the action of their uncrossed edge on the line's
//! bimodule. Crossed edges carry transport along the line. Each region `R`
//! collects `ψ_R^χ(R)` with `χ(R)` the Euler characteristic of the open
//! region; a closed line has `χ = 0` and collects nothing. With identity
//! bimodules this reproduces [`fhk_evaluate`](super::fhk_evaluate).

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::contraction::{ContractionStats, Factor, Network, VarId};
use super::fhk::{ccw_slots, copairing, slot_of_facet, triple_tensor, SLOT_ENDS};
use super::orbifold3d::{solid_evaluate, SolidLayout, SurfaceDefectData};
use super::triangulation::{OrderedTriangulation, TriangulationFile};
use super::{expect_closed, StateSumError, StateSumResult};
use crate::bimodules::{Bimodule, BimoduleMap};
use crate::frobenius::{euler_normalize, FrobeniusStructure};
use crate::fusioncat::FusionData;
use crate::linalg::Matrix;

/// Label of a stratum, by the dimension it is attached to.
// A complex carries a handful of labels; boxing would only add indirection.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone)]
pub enum StratumLabel {
    /// A region of a surface.
    Algebra(FrobeniusStructure),
    /// A defect line on a surface.
    Bimodule(Bimodule),
    /// A point on a defect line: an endomorphism of the line's bimodule.
    Map(Matrix),
    /// A region of a 3-manifold.
    Fusion(FusionData),
    /// A defect surface in a 3-manifold.
    SurfaceDefect(SurfaceDefectData),
}

impl StratumLabel {
    fn kind(&self) -> &'static str {
        match self {
            StratumLabel::Algebra(_) => "algebra",
            StratumLabel::Bimodule(_) => "bimodule",
            StratumLabel::Map(_) => "map",
            StratumLabel::Fusion(_) => "fusion",
            StratumLabel::SurfaceDefect(_) => "surface defect",
        }
    }
}

/// One original stratum. Top strata list their vertices as one-element
/// supports, codimension-1 strata their crossed edges as `[u, v]`, and
/// codimension-2 strata the single crossed edge hosting them.
#[derive(Debug, Clone)]
pub struct Stratum {
    pub dim: usize,
    pub support: Vec<Vec<usize>>,
    pub label: StratumLabel,
    /// For a line, `+1` puts the first vertex of the first support edge on the left.
    pub orient: i8,
}

/// Serialized stratum; `label` is resolved by the caller.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratumFile {
    pub dim: usize,
    pub support: Vec<Vec<usize>>,
    pub label: String,
    #[serde(default = "default_orient")]
    pub orient: i8,
}

fn default_orient() -> i8 {
    1
}

/// A triangulation file with a `strata` list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifiedFile {
    #[serde(flatten)]
    pub triangulation: TriangulationFile,
    pub strata: Vec<StratumFile>,
}

/// Which admissible cell hosts each free insertion: the first candidate or the last.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HostChoice {
    #[default]
    First,
    Last,
}

impl HostChoice {
    fn pick<T: Copy>(self, candidates: &[T]) -> Option<T> {
        match self {
            HostChoice::First => candidates.first().copied(),
            HostChoice::Last => candidates.last().copied(),
        }
    }
}

/// A closed triangulation with validated strata and their derived dual cells.
#[derive(Debug, Clone)]
pub struct StratifiedComplex {
    base: OrderedTriangulation,
    strata: Vec<Stratum>,
    layout: Layout,
}

#[derive(Debug, Clone)]
enum Layout {
    Surface(SurfaceLayout),
    Solid(SolidLayout),
}

impl StratifiedComplex {
    pub fn new(base: OrderedTriangulation, strata: Vec<Stratum>) -> Result<Self, StateSumError> {
        expect_closed(&base)?;
        let layout = match base.dim() {
            2 => Layout::Surface(SurfaceLayout::derive(&base, &strata)?),
            3 => Layout::Solid(SolidLayout::derive(&base, &strata)?),
            other => return Err(StateSumError::DimensionMismatch { expected: 2, actual: other }),
        };
        Ok(StratifiedComplex { base, strata, layout })
    }

    /// A single region covering every vertex.
    pub fn trivial(base: OrderedTriangulation, label: StratumLabel) -> Result<Self, StateSumError> {
        let support = (0..base.vertex_count()).map(|v| vec![v]).collect();
        let dim = base.dim();
        Self::new(base, vec![Stratum { dim, support, label, orient: 1 }])
    }

    pub fn from_file(
        file: &StratifiedFile,
        mut resolve: impl FnMut(usize, &str) -> Result<StratumLabel, String>,
    ) -> Result<Self, StateSumError> {
        let base = OrderedTriangulation::from_file(&file.triangulation)?;
        let strata = file
            .strata
            .iter()
            .map(|s| {
                let label = resolve(s.dim, &s.label).map_err(StateSumError::LabelAdjacencyViolation)?;
                Ok(Stratum { dim: s.dim, support: s.support.clone(), label, orient: s.orient })
            })
            .collect::<Result<Vec<_>, StateSumError>>()?;
        Self::new(base, strata)
    }

    pub fn base(&self) -> &OrderedTriangulation {
        &self.base
    }

    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    /// Number of new dual cells per dimension that sit inside defect strata.
    pub fn defect_dual_cells(&self) -> Vec<usize> {
        match &self.layout {
            Layout::Surface(l) => {
                let line_triangles = l.triangles.iter().filter(|t| matches!(t, TriangleKind::Line { .. })).count();
                vec![line_triangles, l.line_of_edge.iter().flatten().count()]
            }
            Layout::Solid(l) => l.defect_dual_cells(),
        }
    }
}

/// Evaluates with every free insertion on its first admissible host.
pub fn orbifold_evaluate(s: &StratifiedComplex) -> Result<StateSumResult, StateSumError> {
    orbifold_evaluate_with(s, HostChoice::First)
}

pub fn orbifold_evaluate_with(s: &StratifiedComplex, hosts: HostChoice) -> Result<StateSumResult, StateSumError> {
    let (network, simplices) = match &s.layout {
        Layout::Surface(layout) => (surface_defect_network(&s.base, &s.strata, layout, hosts)?, s.base.simplices().len()),
        Layout::Solid(layout) => (solid_evaluate(&s.base, &s.strata, layout)?, s.base.simplices().len()),
    };
    let (value, stats) = network.evaluate();
    Ok(StateSumResult { value, stats: ContractionStats { simplices, terms: stats.terms } })
}

pub(crate) fn unique_edge(t: &OrderedTriangulation, pair: &[usize]) -> Result<usize, StateSumError> {
    let [u, v] = pair else {
        return Err(StateSumError::TransversalityViolation(format!("{pair:?} is not an edge")));
    };
    let key = [*u.min(v), *u.max(v)];
    let matches: Vec<usize> = t.edges().iter().enumerate().filter(|(_, e)| **e == key).map(|(i, _)| i).collect();
    match matches.as_slice() {
        [e] => Ok(*e),
        [] => Err(StateSumError::TransversalityViolation(format!("no edge joins {u} and {v}"))),
        _ => Err(StateSumError::TransversalityViolation(format!("several edges join {u} and {v}"))),
    }
}

/// Assigns every vertex to the top stratum listing it.
pub(crate) fn vertex_regions(t: &OrderedTriangulation, strata: &[Stratum]) -> Result<Vec<usize>, StateSumError> {
    let mut region = vec![usize::MAX; t.vertex_count()];
    for (k, stratum) in strata.iter().enumerate().filter(|(_, s)| s.dim == t.dim()) {
        for cell in &stratum.support {
            let &[v] = cell.as_slice() else {
                return Err(StateSumError::TransversalityViolation("region supports list single vertices".into()));
            };
            if v >= t.vertex_count() || region[v] != usize::MAX {
                return Err(StateSumError::TransversalityViolation(format!("vertex {v} is not in exactly one region")));
            }
            region[v] = k;
        }
    }
    match region.iter().position(|&r| r == usize::MAX) {
        Some(v) => Err(StateSumError::TransversalityViolation(format!("vertex {v} lies in no region"))),
        None => Ok(region),
    }
}

pub(crate) fn same_frobenius(a: &FrobeniusStructure, b: &FrobeniusStructure) -> bool {
    a.algebra() == b.algebra() && a.counit() == b.counit()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum TriangleKind {
    Region,
    /// Crossed by `line`; `z` is the uncrossed slot, `z_left` whether it lies on the left.
    Line {
        line: usize,
        z: usize,
        z_left: bool,
    },
}

#[derive(Debug, Clone)]
struct LineLayout {
    stratum: usize,
    edges: Vec<usize>,
    /// Left endpoint of every crossed edge of the line.
    left_end: HashMap<usize, usize>,
}

#[derive(Debug, Clone)]
struct SurfaceLayout {
    region_of_vertex: Vec<usize>,
    line_of_edge: Vec<Option<usize>>,
    lines: Vec<LineLayout>,
    triangles: Vec<TriangleKind>,
    /// `(stratum, crossed edge)` of every point insertion.
    points: Vec<(usize, usize)>,
}

fn transversality(msg: String) -> StateSumError {
    StateSumError::TransversalityViolation(msg)
}

impl SurfaceLayout {
    fn derive(t: &OrderedTriangulation, strata: &[Stratum]) -> Result<Self, StateSumError> {
        if let Some(s) = strata.iter().find(|s| s.dim > 2) {
            return Err(transversality(format!("a surface has no {}-dimensional strata", s.dim)));
        }
        for s in strata {
            let expected = ["map", "bimodule", "algebra"][s.dim];
            if s.label.kind() != expected {
                return Err(StateSumError::LabelAdjacencyViolation(format!(
                    "a {}-dimensional stratum needs a {expected} label, got a {}",
                    s.dim,
                    s.label.kind()
                )));
            }
        }
        let region_of_vertex = vertex_regions(t, strata)?;
        let edge_count = t.cell_count(1);
        let mut line_of_edge = vec![None; edge_count];
        let mut lines = Vec::new();
        for (k, stratum) in strata.iter().enumerate().filter(|(_, s)| s.dim == 1) {
            let line = lines.len();
            let mut edges = Vec::new();
            for pair in &stratum.support {
                let e = unique_edge(t, pair)?;
                if line_of_edge[e].replace(line).is_some() {
                    return Err(transversality(format!("edge {pair:?} is crossed twice")));
                }
                edges.push(e);
            }
            if edges.is_empty() {
                return Err(transversality("a defect line crosses no edge".into()));
            }
            lines.push(LineLayout { stratum: k, edges, left_end: HashMap::new() });
        }
        for (e, [u, v]) in t.edges().into_iter().enumerate() {
            if line_of_edge[e].is_none() && region_of_vertex[u] != region_of_vertex[v] {
                return Err(transversality(format!("edge [{u}, {v}] joins two regions without crossing a line")));
            }
        }
        let mut triangles = Vec::with_capacity(t.simplices().len());
        for s in 0..t.simplices().len() {
            let crossed: Vec<usize> =
                (0..3).filter(|&slot| line_of_edge[t.edge_of(s, SLOT_ENDS[slot].0, SLOT_ENDS[slot].1)].is_some()).collect();
            let kind = match crossed.as_slice() {
                [] => TriangleKind::Region,
                [a, b] => {
                    let line_a = line_of_edge[t.edge_of(s, SLOT_ENDS[*a].0, SLOT_ENDS[*a].1)];
                    let line_b = line_of_edge[t.edge_of(s, SLOT_ENDS[*b].0, SLOT_ENDS[*b].1)];
                    if line_a != line_b {
                        return Err(transversality(format!("triangle {s} meets two different lines")));
                    }
                    let z = 3 - a - b;
                    TriangleKind::Line { line: line_a.expect("crossed"), z, z_left: false }
                }
                _ => return Err(transversality(format!("triangle {s} crosses {} defect edges", crossed.len()))),
            };
            triangles.push(kind);
        }
        let mut layout = SurfaceLayout { region_of_vertex, line_of_edge, lines, triangles, points: Vec::new() };
        for line in 0..layout.lines.len() {
            layout.orient_line(t, strata, line)?;
        }
        for (k, stratum) in strata.iter().enumerate().filter(|(_, s)| s.dim == 0) {
            let [pair] = stratum.support.as_slice() else {
                return Err(transversality("a point insertion sits on exactly one crossed edge".into()));
            };
            let e = unique_edge(t, pair)?;
            if layout.line_of_edge[e].is_none() {
                return Err(transversality(format!("point insertion on {pair:?} is off every line")));
            }
            layout.points.push((k, e));
        }
        Ok(layout)
    }

    /// Propagates the left side along the line from its first support edge.
    fn orient_line(&mut self, t: &OrderedTriangulation, strata: &[Stratum], line: usize) -> Result<(), StateSumError> {
        let stratum = &strata[self.lines[line].stratum];
        let first = self.lines[line].edges[0];
        let start_left = if stratum.orient >= 0 { stratum.support[0][0] } else { stratum.support[0][1] };
        let mut left_end = HashMap::from([(first, start_left)]);
        let mut queue = VecDeque::from([first]);
        while let Some(e) = queue.pop_front() {
            let left = left_end[&e];
            for (s, p, q) in t.edge_star(e) {
                let TriangleKind::Line { z, z_left, .. } = &mut self.triangles[s] else {
                    unreachable!("a crossed edge bounds only line triangles")
                };
                let simplex = &t.simplices()[s];
                let (zp, zq) = SLOT_ENDS[*z];
                let apex = 3 - zp - zq;
                let apex_left = simplex[apex] == left;
                let here = SLOT_ENDS.iter().position(|&ends| ends == (p, q)).expect("slot");
                let other = (0..3).find(|&slot| slot != *z && slot != here).expect("second crossed slot");
                *z_left = !apex_left;
                let (op, oq) = SLOT_ENDS[other];
                let other_end = if op == apex { oq } else { op };
                let other_left = if apex_left { simplex[apex] } else { simplex[other_end] };
                let e2 = t.edge_of(s, op, oq);
                match left_end.get(&e2) {
                    Some(&l) if l != other_left => {
                        return Err(transversality(format!("defect line {line} is one-sided")));
                    }
                    Some(_) => {}
                    None => {
                        left_end.insert(e2, other_left);
                        queue.push_back(e2);
                    }
                }
            }
        }
        if left_end.len() != self.lines[line].edges.len() {
            return Err(transversality(format!("defect line {line} is not a single closed curve")));
        }
        self.lines[line].left_end = left_end;
        Ok(())
    }
}

/// Normalized structures of the regions and the bimodule of every line, after label checks.
fn check_labels(
    t: &OrderedTriangulation,
    strata: &[Stratum],
    layout: &SurfaceLayout,
) -> Result<(HashMap<usize, FrobeniusStructure>, Vec<Bimodule>), StateSumError> {
    let mut regions = HashMap::new();
    for (k, s) in strata.iter().enumerate() {
        if let StratumLabel::Algebra(f) = &s.label {
            regions.insert(k, euler_normalize(f)?);
        }
    }
    let mut bimodules = Vec::new();
    for (line, l) in layout.lines.iter().enumerate() {
        let StratumLabel::Bimodule(x) = &strata[l.stratum].label else { unreachable!("checked kind") };
        let (left, right) = (euler_normalize(x.left())?, euler_normalize(x.right())?);
        for (&e, &left_vertex) in &l.left_end {
            let [u, v] = t.edges()[e];
            let right_vertex = if left_vertex == u { v } else { u };
            for (vertex, side, name) in [(left_vertex, &left, "left"), (right_vertex, &right, "right")] {
                if !same_frobenius(&regions[&layout.region_of_vertex[vertex]], side) {
                    return Err(StateSumError::LabelAdjacencyViolation(format!(
                        "region on the {name} of line {line} at vertex {vertex} does not match the bimodule"
                    )));
                }
            }
        }
        bimodules.push(x.with_structures(left, right)?);
    }
    Ok((regions, bimodules))
}

fn matrix_entries(m: &Matrix, extra: &[u16]) -> Vec<(Vec<u16>, crate::scalars::Scalar)> {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let v = m.get(r, c);
            if !v.is_zero() {
                let mut key = vec![r as u16, c as u16];
                key.extend_from_slice(extra);
                out.push((key, v.clone()));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy)]
enum VertexHost {
    Triangle(usize),
    Edge(usize),
    Crossed(usize),
}

fn surface_defect_network(
    t: &OrderedTriangulation,
    strata: &[Stratum],
    layout: &SurfaceLayout,
    hosts: HostChoice,
) -> Result<Network, StateSumError> {
    let (regions, bimodules) = check_labels(t, strata, layout)?;
    let field = regions.values().next().expect("every vertex lies in a region").field();
    let region_of_slot = |s: usize, slot: usize| layout.region_of_vertex[t.simplices()[s][SLOT_ENDS[slot].0]];
    let crossed = |e: usize| layout.line_of_edge[e];

    // Free ψ insertions: one per vertex, on a region triangle, uncrossed edge or crossed edge.
    let mut tri_extra = vec![0usize; t.simplices().len()];
    let mut edge_extra = vec![0usize; t.cell_count(1)];
    let mut transport: HashMap<usize, Matrix> = HashMap::new();
    let transport_of = |transport: &mut HashMap<usize, Matrix>, e: usize| -> Matrix {
        transport.remove(&e).unwrap_or_else(|| Matrix::identity(bimodules[crossed(e).expect("crossed")].dim(), field))
    };
    for v in 0..t.vertex_count() {
        let mut candidates = Vec::new();
        let star = t.vertex_star(v);
        candidates.extend(star.iter().filter(|(s, _)| layout.triangles[*s] == TriangleKind::Region).map(|&(s, _)| VertexHost::Triangle(s)));
        for &(s, pos) in &star {
            for &(p, q) in &SLOT_ENDS {
                if p == pos || q == pos {
                    let e = t.edge_of(s, p, q);
                    candidates.push(if crossed(e).is_some() { VertexHost::Crossed(e) } else { VertexHost::Edge(e) });
                }
            }
        }
        // Triangles, then uncrossed edges, then crossed edges; each tier keeps star order.
        candidates.sort_by_key(|h| match h {
            VertexHost::Triangle(_) => 0,
            VertexHost::Edge(_) => 1,
            VertexHost::Crossed(_) => 2,
        });
        match hosts.pick(&candidates).expect("every vertex has a star") {
            VertexHost::Triangle(s) => tri_extra[s] += 1,
            VertexHost::Edge(e) => edge_extra[e] += 1,
            VertexHost::Crossed(e) => {
                let line = crossed(e).expect("crossed");
                let x = &bimodules[line];
                let psi = regions[&layout.region_of_vertex[v]].psi();
                let action = if layout.lines[line].left_end[&e] == v { x.left_action(&psi) } else { x.right_action(&psi) };
                let m = transport_of(&mut transport, e);
                transport.insert(e, &action * &m);
            }
        }
    }
    for &(k, e) in &layout.points {
        let StratumLabel::Map(map) = &strata[k].label else { unreachable!("checked kind") };
        let x = &bimodules[crossed(e).expect("crossed")];
        BimoduleMap::new(x, x, map.clone())
            .map_err(|err| StateSumError::LabelAdjacencyViolation(format!("point insertion on edge {e}: {err}")))?;
        let m = transport_of(&mut transport, e);
        transport.insert(e, map * &m);
    }

    let mut network = Network::new(field);
    // Half-edge variables and the slot roles of line triangles: `Some(true)` for outgoing.
    let mut vars: Vec<[VarId; 3]> = Vec::with_capacity(t.simplices().len());
    let mut outgoing: Vec<[Option<bool>; 3]> = vec![[None; 3]; t.simplices().len()];
    for (s, kind) in layout.triangles.iter().enumerate() {
        let order = ccw_slots(t.sign(s));
        match *kind {
            TriangleKind::Region => {
                let f = &regions[&region_of_slot(s, 0)];
                let v = [0; 3].map(|_| network.add_var(f.dim()));
                let weight = f.algebra().pow(&f.psi(), 1 + tri_extra[s]);
                network.add_factor(Factor::new(order.iter().map(|&slot| v[slot]).collect(), triple_tensor(f, &weight)));
                vars.push(v);
            }
            TriangleKind::Line { line, z, z_left } => {
                let x = &bimodules[line];
                let f = &regions[&region_of_slot(s, z)];
                let mut v = [0; 3];
                for slot in 0..3 {
                    v[slot] = network.add_var(if slot == z { f.dim() } else { x.dim() });
                }
                let k = order.iter().position(|&slot| slot == z).expect("slot");
                let (p, q) = (order[(k + 1) % 3], order[(k + 2) % 3]);
                // Counterclockwise `(p, q, z)`: a line entering through `p` has `z` on its left.
                let (input, output) = if z_left { (p, q) } else { (q, p) };
                outgoing[s][input] = Some(false);
                outgoing[s][output] = Some(true);
                let actions = if z_left { x.left_basis_actions() } else { x.right_basis_actions() };
                let entries: Vec<_> = actions.iter().enumerate().flat_map(|(a, m)| matrix_entries(m, &[a as u16])).collect();
                network.add_factor(Factor::new(vec![v[output], v[input], v[z]], entries));
                vars.push(v);
            }
        }
    }
    for [s, i, u, j] in t.gluings() {
        let (a_slot, b_slot) = (slot_of_facet(i), slot_of_facet(j));
        let (a, b) = (vars[s][a_slot], vars[u][b_slot]);
        let (p, q) = SLOT_ENDS[a_slot];
        let e = t.edge_of(s, p, q);
        if crossed(e).is_some() {
            let (up, down) = match (outgoing[s][a_slot], outgoing[u][b_slot]) {
                (Some(true), Some(false)) => (a, b),
                (Some(false), Some(true)) => (b, a),
                _ => return Err(transversality(format!("line through edge {e} reverses direction"))),
            };
            let m = transport_of(&mut transport, e);
            network.add_factor(Factor::new(vec![down, up], matrix_entries(&m, &[])));
        } else {
            let f = &regions[&region_of_slot(s, a_slot)];
            let alg = f.algebra();
            let weight = alg.mul(&f.psi_inverse(), &alg.pow(&f.psi(), edge_extra[e]));
            network.add_factor(Factor::new(vec![a, b], copairing(f, &weight)));
        }
    }
    Ok(network)
}
