//! Oriented Pachner moves on ordered triangulations and invariance suites.
//!
//! A move removes a small ball of top simplices and inserts another ball
//! with the same boundary. Boundary facets are matched by vertex tuple, so
//! both balls must have pairwise distinct vertex labels. A new vertex is
//! appended as the maximum of the order; a removed vertex shifts the labels
//! above it down by one.

use std::collections::{HashMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::triangulation::{parity, FacetRef, Gluing, OrderedTriangulation};
use super::{StateSumError, Theory};
use crate::scalars::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    /// Replaces the two triangles across facet `facet` of `triangle`.
    Flip22 { triangle: usize, facet: usize },
    /// Cones a new vertex over `triangle`.
    Subdivide13 { triangle: usize },
    /// Removes a vertex of degree three.
    Remove31 { vertex: usize },
    /// Replaces the two tetrahedra across facet `facet` of `tet` by three.
    Flip23 { tet: usize, facet: usize },
    /// Replaces the three tetrahedra around an edge class of degree three by two.
    Flip32 { edge: usize },
    /// Cones a new vertex over `tet`.
    Subdivide14 { tet: usize },
    /// Removes a vertex of degree four.
    Remove41 { vertex: usize },
}

impl Move {
    pub fn dim(&self) -> usize {
        match self {
            Move::Flip22 { .. } | Move::Subdivide13 { .. } | Move::Remove31 { .. } => 2,
            _ => 3,
        }
    }

    /// Moves that do not lower the number of simplices.
    pub fn is_expanding(&self) -> bool {
        matches!(self, Move::Flip22 { .. } | Move::Subdivide13 { .. } | Move::Flip23 { .. } | Move::Subdivide14 { .. })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Move::Flip22 { .. } => "2-2",
            Move::Subdivide13 { .. } => "1-3",
            Move::Remove31 { .. } => "3-1",
            Move::Flip23 { .. } => "2-3",
            Move::Flip32 { .. } => "3-2",
            Move::Subdivide14 { .. } => "1-4",
            Move::Remove41 { .. } => "4-1",
        }
    }
}

fn invalid(msg: impl Into<String>) -> StateSumError {
    StateSumError::InvalidMove(msg.into())
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn facet_tuple(simplex: &[usize], omit: usize) -> Vec<usize> {
    simplex.iter().enumerate().filter(|&(p, _)| p != omit).map(|(_, &v)| v).collect()
}

fn all_distinct(labels: &[usize]) -> bool {
    let mut seen = labels.to_vec();
    seen.sort_unstable();
    seen.windows(2).all(|w| w[0] != w[1])
}

impl OrderedTriangulation {
    /// Applies one move, returning the new triangulation.
    pub fn apply_move(&self, mv: &Move) -> Result<OrderedTriangulation, StateSumError> {
        if mv.dim() != self.dim() {
            return Err(invalid(format!("{} move on a {}-dimensional triangulation", mv.name(), self.dim())));
        }
        let n = self.simplices().len();
        let check_simplex = |s: usize| if s < n { Ok(()) } else { Err(invalid(format!("no simplex {s}"))) };
        match *mv {
            Move::Flip22 { triangle, facet } | Move::Flip23 { tet: triangle, facet } => {
                check_simplex(triangle)?;
                if facet > self.dim() {
                    return Err(invalid(format!("no facet {facet}")));
                }
                let (other, other_facet) = self.neighbor(triangle, facet).ok_or_else(|| invalid("facet lies on the boundary"))?;
                if other == triangle {
                    return Err(invalid("facet is glued to its own simplex"));
                }
                let shared = facet_tuple(&self.simplices()[triangle], facet);
                let apex_a = self.simplices()[triangle][facet];
                let apex_b = self.simplices()[other][other_facet];
                if apex_a == apex_b {
                    return Err(invalid("opposite vertices coincide"));
                }
                let new: Vec<Vec<usize>> = (0..shared.len())
                    .map(|skip| {
                        let mut v = facet_tuple(&shared, skip);
                        v.extend([apex_a, apex_b]);
                        sorted(v)
                    })
                    .collect();
                self.replace(&[triangle, other], new, self.vertex_count(), None)
            }
            Move::Subdivide13 { triangle: s } | Move::Subdivide14 { tet: s } => {
                check_simplex(s)?;
                let apex = self.vertex_count();
                let base = &self.simplices()[s];
                let new = (0..base.len())
                    .map(|skip| {
                        let mut v = facet_tuple(base, skip);
                        v.push(apex);
                        v
                    })
                    .collect();
                self.replace(&[s], new, apex + 1, None)
            }
            Move::Remove31 { vertex } | Move::Remove41 { vertex } => {
                if vertex >= self.vertex_count() {
                    return Err(invalid(format!("no vertex {vertex}")));
                }
                let star = self.vertex_star(vertex);
                if star.len() != self.dim() + 1 {
                    return Err(invalid(format!("vertex {vertex} has degree {}", star.len())));
                }
                let mut link: Vec<usize> =
                    star.iter().flat_map(|&(s, _)| self.simplices()[s].iter().copied().filter(|&v| v != vertex)).collect();
                link.sort_unstable();
                link.dedup();
                if link.len() != self.dim() + 1 {
                    return Err(invalid("link vertices are not distinct"));
                }
                let removed: Vec<usize> = star.iter().map(|&(s, _)| s).collect();
                self.replace(&removed, vec![link], self.vertex_count() - 1, Some(vertex))
            }
            Move::Flip32 { edge } => {
                if self.dim() != 3 || edge >= self.cell_count(1) {
                    return Err(invalid(format!("no edge {edge}")));
                }
                let star = self.edge_star(edge);
                if star.len() != 3 {
                    return Err(invalid(format!("edge {edge} has degree {}", star.len())));
                }
                let removed: Vec<usize> = star.iter().map(|&(s, _, _)| s).collect();
                if !all_distinct(&removed) {
                    return Err(invalid("edge meets a tetrahedron twice"));
                }
                let (s0, p, q) = star[0];
                let ends = [self.simplices()[s0][p], self.simplices()[s0][q]];
                let mut link: Vec<usize> =
                    removed.iter().flat_map(|&s| self.simplices()[s].iter().copied().filter(|v| !ends.contains(v))).collect();
                link.sort_unstable();
                link.dedup();
                if link.len() != 3 || link.iter().any(|v| ends.contains(v)) {
                    return Err(invalid("link of the edge is not a triangle on distinct vertices"));
                }
                let new = ends
                    .iter()
                    .map(|&e| {
                        let mut v = link.clone();
                        v.push(e);
                        sorted(v)
                    })
                    .collect();
                self.replace(&removed, new, self.vertex_count(), None)
            }
        }
    }

    /// Swaps the simplices `removed` for `new`, matching boundary facets by tuple.
    fn replace(
        &self,
        removed: &[usize],
        new: Vec<Vec<usize>>,
        vertices: usize,
        dropped_vertex: Option<usize>,
    ) -> Result<OrderedTriangulation, StateSumError> {
        let dim = self.dim();
        if !all_distinct(removed) {
            return Err(invalid("a simplex occurs twice in the replaced ball"));
        }
        let in_removed = |s: usize| removed.contains(&s);
        let mut old_facets: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
        for &s in removed {
            for i in 0..=dim {
                old_facets.entry(facet_tuple(&self.simplices()[s], i)).or_default().push((s, i));
            }
        }
        // Boundary tuple -> outside neighbour (None on the boundary of the manifold).
        let mut outside: HashMap<Vec<usize>, (FacetRef, Option<FacetRef>)> = HashMap::new();
        for (tuple, refs) in &old_facets {
            match refs.as_slice() {
                [a] => {
                    let nb = self.neighbor(a.0, a.1);
                    if nb.is_some_and(|(t, _)| in_removed(t)) {
                        return Err(invalid("boundary of the replaced ball is glued to itself"));
                    }
                    outside.insert(tuple.clone(), (*a, nb));
                }
                [a, b] => {
                    if self.neighbor(a.0, a.1) != Some(*b) {
                        return Err(invalid("interior facets of the replaced ball are not glued together"));
                    }
                }
                _ => return Err(invalid("facet tuple repeats inside the replaced ball")),
            }
        }
        let mut new_facets: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
        for (k, simplex) in new.iter().enumerate() {
            for i in 0..=dim {
                new_facets.entry(facet_tuple(simplex, i)).or_default().push((k, i));
            }
        }
        let new_boundary = new_facets.values().filter(|r| r.len() == 1).count();
        if new_boundary != outside.len() || new_facets.values().any(|r| r.len() > 2) {
            return Err(invalid("replacement ball has a different boundary"));
        }
        let kept: Vec<usize> = (0..self.simplices().len()).filter(|&s| !in_removed(s)).collect();
        let mut index = vec![usize::MAX; self.simplices().len()];
        for (k, &s) in kept.iter().enumerate() {
            index[s] = k;
        }
        let offset = kept.len();
        let mut simplices: Vec<Vec<usize>> = kept.iter().map(|&s| self.simplices()[s].clone()).collect();
        simplices.extend(new.iter().cloned());
        let mut signs: Vec<i8> = kept.iter().map(|&s| self.sign(s)).collect();
        signs.extend(std::iter::repeat_n(0, new.len()));
        let mut gluings: Vec<Gluing> = self
            .gluings()
            .into_iter()
            .filter(|&[s, _, t, _]| !in_removed(s) && !in_removed(t))
            .map(|[s, i, t, j]| [index[s], i, index[t], j])
            .collect();
        let mut internal: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); new.len()];
        for (tuple, refs) in &new_facets {
            match refs.as_slice() {
                [(k, j)] => {
                    let ((s, i), nb) = outside.get(tuple).ok_or_else(|| invalid("replacement ball has a different boundary"))?;
                    let want = self.sign(*s) * parity(*i) * parity(*j);
                    if signs[offset + k] != 0 && signs[offset + k] != want {
                        return Err(invalid("orientations of the replacement ball disagree"));
                    }
                    signs[offset + k] = want;
                    if let Some((t, l)) = nb {
                        gluings.push([offset + k, *j, index[*t], *l]);
                    }
                }
                [(k1, j1), (k2, j2)] => {
                    gluings.push([offset + k1, *j1, offset + k2, *j2]);
                    internal[*k1].push((*j1, *k2, *j2));
                    internal[*k2].push((*j2, *k1, *j1));
                }
                _ => unreachable!("checked above"),
            }
        }
        let mut queue: VecDeque<usize> = (0..new.len()).filter(|&k| signs[offset + k] != 0).collect();
        while let Some(k) = queue.pop_front() {
            for &(j, k2, j2) in &internal[k] {
                if signs[offset + k2] == 0 {
                    signs[offset + k2] = -signs[offset + k] * parity(j) * parity(j2);
                    queue.push_back(k2);
                }
            }
        }
        if signs.contains(&0) {
            return Err(invalid("replacement ball is disconnected from its boundary"));
        }
        if let Some(v) = dropped_vertex {
            if simplices.iter().any(|s| s.contains(&v)) {
                return Err(invalid("removed vertex still occurs"));
            }
            for s in simplices.iter_mut() {
                for x in s.iter_mut() {
                    if *x > v {
                        *x -= 1;
                    }
                }
            }
        }
        OrderedTriangulation::build(dim, vertices, simplices, Some(&gluings), !self.is_closed(), Some(signs)).map_err(|e| match e {
            StateSumError::NonOrientable => invalid("move breaks the orientation"),
            other => other,
        })
    }

    /// Every move of the given dimension that currently applies.
    pub fn valid_moves(&self) -> Vec<Move> {
        let mut candidates = Vec::new();
        let n = self.simplices().len();
        for s in 0..n {
            for facet in 0..=self.dim() {
                if self.neighbor(s, facet).is_some_and(|(t, j)| (s, facet) < (t, j)) {
                    candidates.push(if self.dim() == 2 { Move::Flip22 { triangle: s, facet } } else { Move::Flip23 { tet: s, facet } });
                }
            }
            candidates.push(if self.dim() == 2 { Move::Subdivide13 { triangle: s } } else { Move::Subdivide14 { tet: s } });
        }
        for vertex in 0..self.vertex_count() {
            candidates.push(if self.dim() == 2 { Move::Remove31 { vertex } } else { Move::Remove41 { vertex } });
        }
        if self.dim() == 3 {
            candidates.extend((0..self.cell_count(1)).map(|edge| Move::Flip32 { edge }));
        }
        candidates.into_iter().filter(|m| self.apply_move(m).is_ok()).collect()
    }
}

/// Values before and after every move of a sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PachnerReport {
    pub initial: Scalar,
    pub steps: Vec<MoveOutcome>,
    pub all_equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveOutcome {
    pub applied: Move,
    pub simplices: usize,
    pub value: Scalar,
}

impl PachnerReport {
    pub fn expanding_moves(&self) -> usize {
        self.steps.iter().filter(|s| s.applied.is_expanding()).count()
    }
}

/// Applies `moves` in order, evaluating after every step.
pub fn pachner_invariance(t: &OrderedTriangulation, theory: &Theory, moves: &[Move]) -> Result<PachnerReport, StateSumError> {
    let initial = theory.evaluate(t)?.value;
    let mut current = t.clone();
    let mut steps = Vec::with_capacity(moves.len());
    for mv in moves {
        current = current.apply_move(mv)?;
        let value = theory.evaluate(&current)?.value;
        steps.push(MoveOutcome { applied: *mv, simplices: current.simplices().len(), value });
    }
    let all_equal = steps.iter().all(|s| s.value == initial);
    Ok(PachnerReport { initial, steps, all_equal })
}

/// A reproducible sequence with exactly `expanding` moves of the
/// non-shrinking kinds (2-2 and 1-3, or 2-3 and 1-4). Shrinking moves are
/// interleaved whenever the triangulation grows past its start size plus `slack`.
pub fn random_moves(t: &OrderedTriangulation, expanding: usize, seed: u64, slack: usize) -> Vec<Move> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = t.simplices().len();
    let mut current = t.clone();
    let mut out = Vec::new();
    let mut done = 0;
    while done < expanding {
        let valid = current.valid_moves();
        let (grow, shrink): (Vec<Move>, Vec<Move>) = valid.into_iter().partition(Move::is_expanding);
        let pick = if current.simplices().len() > start + slack && !shrink.is_empty() {
            *shrink.choose(&mut rng).expect("nonempty")
        } else {
            // Favour flips over subdivisions so the triangulation keeps changing shape.
            let flips: Vec<Move> = grow.iter().copied().filter(|m| matches!(m, Move::Flip22 { .. } | Move::Flip23 { .. })).collect();
            if !flips.is_empty() && rng.gen_bool(0.6) {
                *flips.choose(&mut rng).expect("nonempty")
            } else {
                *grow.choose(&mut rng).expect("subdivisions always apply")
            }
        };
        current = current.apply_move(&pick).expect("move was validated");
        if pick.is_expanding() {
            done += 1;
        }
        out.push(pick);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::{euler_gamma, examples};
    use crate::fusioncat::examples as fusion;
    use crate::scalars::Field;
    use crate::statesum::fixtures;

    #[test]
    fn subdivision_and_removal_are_inverse() {
        let t = fixtures::s3_two_tet();
        let up = t.apply_move(&Move::Subdivide14 { tet: 0 }).unwrap();
        assert_eq!(up.simplices().len(), 5);
        assert_eq!(up.euler_characteristic(), 0);
        let down = up.apply_move(&Move::Remove41 { vertex: 4 }).unwrap();
        assert_eq!(down.simplices().len(), 2);
        assert_eq!(down.euler_characteristic(), 0);
    }

    #[test]
    fn flip_and_inverse_flip() {
        let t = fixtures::s3_pentachoron();
        let up = t.apply_move(&Move::Flip23 { tet: 0, facet: 0 }).unwrap();
        assert_eq!(up.simplices().len(), 6);
        let edge = (0..up.cell_count(1)).find(|&e| up.edge_star(e).len() == 3 && up.apply_move(&Move::Flip32 { edge: e }).is_ok());
        let down = up.apply_move(&Move::Flip32 { edge: edge.unwrap() }).unwrap();
        assert_eq!(down.simplices().len(), 5);
    }

    #[test]
    fn degenerate_flip_is_rejected() {
        // Every triangle of the 3-vertex torus has vertex set {0,1,2}.
        let t = fixtures::torus_three_vertex();
        assert!(matches!(t.apply_move(&Move::Flip22 { triangle: 0, facet: 0 }), Err(StateSumError::InvalidMove(_))));
        assert!(matches!(t.apply_move(&Move::Remove31 { vertex: 0 }), Err(StateSumError::InvalidMove(_))));
        assert!(matches!(t.apply_move(&Move::Flip23 { tet: 0, facet: 0 }), Err(StateSumError::InvalidMove(_))));
    }

    #[test]
    fn torus_subdivision_keeps_the_value() {
        let theory = Theory::Frobenius(euler_gamma(&examples::cyclic_group(2, Field::RATIONALS)).unwrap());
        let report = pachner_invariance(&fixtures::torus_three_vertex(), &theory, &[Move::Subdivide13 { triangle: 2 }]).unwrap();
        assert!(report.all_equal);
        assert_eq!(report.initial, Field::RATIONALS.int(2));
    }

    #[test]
    fn fibonacci_flip_keeps_the_value() {
        let theory = Theory::Fusion(fusion::fibonacci());
        let report = pachner_invariance(&fixtures::s3_pentachoron(), &theory, &[Move::Flip23 { tet: 1, facet: 2 }]).unwrap();
        assert!(report.all_equal);
    }

    #[test]
    fn z3_subdivision_keeps_the_value() {
        let theory = Theory::Fusion(fusion::vec_cyclic(3));
        let report = pachner_invariance(&fixtures::s3_two_tet(), &theory, &[Move::Subdivide14 { tet: 1 }]).unwrap();
        assert!(report.all_equal);
        assert_eq!(report.initial, Field::RATIONALS.ratio(1, 3));
    }

    #[test]
    fn empty_move_list_is_trivially_equal() {
        let theory = Theory::Fusion(fusion::vec_cyclic(2));
        let report = pachner_invariance(&fixtures::s3_two_tet(), &theory, &[]).unwrap();
        assert!(report.all_equal && report.steps.is_empty());
    }

    #[test]
    fn random_sequences_are_reproducible_and_reach_the_count() {
        let t = fixtures::sphere_tetrahedron();
        let a = random_moves(&t, 20, 7, 6);
        assert_eq!(a, random_moves(&t, 20, 7, 6));
        assert_eq!(a.iter().filter(|m| m.is_expanding()).count(), 20);
    }

    #[test]
    fn random_2d_suite_is_invariant() {
        let theory = Theory::Frobenius(examples::matrices_with_trace(2, Field::RATIONALS.one()));
        let t = fixtures::torus_three_vertex();
        let report = pachner_invariance(&t, &theory, &random_moves(&t, 20, 3, 6)).unwrap();
        assert!(report.all_equal);
    }

    #[test]
    fn random_3d_suite_is_invariant() {
        let theory = Theory::Fusion(fusion::fibonacci());
        let t = fixtures::s3_two_tet();
        let report = pachner_invariance(&t, &theory, &random_moves(&t, 12, 11, 6)).unwrap();
        assert!(report.all_equal, "{:?}", report.steps.iter().map(|s| (s.applied.name(), s.value.pretty())).collect::<Vec<_>>());
    }
}
