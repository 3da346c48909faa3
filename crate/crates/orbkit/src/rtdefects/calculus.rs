//! Morphisms between tensor products of objects in a multiplicity-free braided
//! fusion category, stored in the basis of left-associated fusion trees.
//!
//! A tree over objects `X_1 ⊗ … ⊗ X_n` picks a summand of each factor and
//! intermediate charges `t_1 = x_1, t_j ∈ t_{j-1} ⊗ x_j`; it names the map
//! `v^{t_n}_{t_{n-1} x_n} ∘ … ∘ (v^{t_2}_{t_1 x_2} ⊗ 1)` to the total charge `t_n`.
//! A morphism `φ` is stored per total charge as the matrix `M` with
//! `T_Y ∘ φ = Σ_X M[Y][X] T_X`, so composition is matrix multiplication.

use std::collections::HashMap;

use super::braided::{BraidedFusionData, VertexGauge};
use super::RtDefectError;
use crate::fusioncat::Simple;
use crate::linalg::Matrix;
use crate::scalars::Scalar;

/// An object as its list of simple summands; repeated summands are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Object(Vec<Simple>);

impl Object {
    pub fn new(summands: Vec<Simple>) -> Self {
        Object(summands)
    }

    /// The monoidal unit as a one-summand object.
    pub fn unit() -> Self {
        Object(vec![0])
    }

    pub fn summands(&self) -> &[Simple] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Every simple once; stands in for a regrouped block whose summand index is its charge.
    fn all_simples(rank: usize) -> Self {
        Object((0..rank).collect())
    }
}

/// Summand choices per factor and the running charges; `charges.last()` is the total.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    pub leaves: Vec<usize>,
    pub charges: Vec<Simple>,
}

impl Tree {
    fn total(&self) -> Simple {
        self.charges.last().copied().unwrap_or(0)
    }
}

/// The fusion-tree basis of `Hom(X_1 ⊗ … ⊗ X_n, s)`.
#[derive(Debug, Clone)]
pub(crate) struct Basis {
    pub trees: Vec<Tree>,
    index: HashMap<Tree, usize>,
}

impl Basis {
    pub fn new(cat: &BraidedFusionData, objects: &[Object], total: Simple) -> Self {
        let mut trees = Vec::new();
        if objects.is_empty() {
            if total == 0 {
                trees.push(Tree { leaves: vec![], charges: vec![] });
            }
        } else {
            let mut leaves = Vec::new();
            let mut charges = Vec::new();
            extend(cat, objects, total, &mut leaves, &mut charges, &mut trees);
        }
        let index = trees.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        Basis { trees, index }
    }

    pub fn len(&self) -> usize {
        self.trees.len()
    }

    pub fn position(&self, tree: &Tree) -> Option<usize> {
        self.index.get(tree).copied()
    }
}

fn extend(
    cat: &BraidedFusionData,
    objects: &[Object],
    total: Simple,
    leaves: &mut Vec<usize>,
    charges: &mut Vec<Simple>,
    out: &mut Vec<Tree>,
) {
    let depth = leaves.len();
    if depth == objects.len() {
        if charges.last() == Some(&total) {
            out.push(Tree { leaves: leaves.clone(), charges: charges.clone() });
        }
        return;
    }
    for (i, &x) in objects[depth].summands().iter().enumerate() {
        let next: Vec<Simple> = match charges.last() {
            None => vec![x],
            Some(&t) => cat.fusion().products(t, x),
        };
        for c in next {
            leaves.push(i);
            charges.push(c);
            extend(cat, objects, total, leaves, charges, out);
            leaves.pop();
            charges.pop();
        }
    }
}

/// A morphism `source → target` between tensor products of objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Morphism {
    source: Vec<Object>,
    target: Vec<Object>,
    /// One block per total charge: rows are target trees, columns source trees.
    blocks: Vec<Matrix>,
}

impl Morphism {
    /// Builds a morphism from its tree-basis entries `entry(total, target_tree, source_tree)`.
    pub fn from_fn(
        cat: &BraidedFusionData,
        source: Vec<Object>,
        target: Vec<Object>,
        entry: impl Fn(Simple, &Tree, &Tree) -> Scalar,
    ) -> Self {
        let field = cat.field();
        let blocks = (0..cat.rank())
            .map(|s| {
                let (src, tgt) = (Basis::new(cat, &source, s), Basis::new(cat, &target, s));
                Matrix::from_fn(tgt.len(), src.len(), field, |r, c| entry(s, &tgt.trees[r], &src.trees[c]))
            })
            .collect();
        Morphism { source, target, blocks }
    }

    pub fn identity(cat: &BraidedFusionData, objects: Vec<Object>) -> Self {
        let field = cat.field();
        let blocks = (0..cat.rank()).map(|s| Matrix::identity(Basis::new(cat, &objects, s).len(), field)).collect();
        Morphism { source: objects.clone(), target: objects, blocks }
    }

    pub fn source(&self) -> &[Object] {
        &self.source
    }

    pub fn target(&self) -> &[Object] {
        &self.target
    }

    pub fn block(&self, total: Simple) -> &Matrix {
        &self.blocks[total]
    }

    /// Nonzero entries as `(total, target tree, source tree, value)`, in basis order.
    pub fn nonzero_entries(&self, cat: &BraidedFusionData) -> Vec<(Simple, Tree, Tree, Scalar)> {
        let mut out = Vec::new();
        for (s, block) in self.blocks.iter().enumerate() {
            let (src, tgt) = (Basis::new(cat, &self.source, s), Basis::new(cat, &self.target, s));
            for (r, target) in tgt.trees.iter().enumerate() {
                for (c, source) in src.trees.iter().enumerate() {
                    let value = block.get(r, c);
                    if !value.is_zero() {
                        out.push((s, target.clone(), source.clone(), value.clone()));
                    }
                }
            }
        }
        out
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Morphism) -> Result<Morphism, RtDefectError> {
        if first.target != self.source {
            return Err(RtDefectError::Shape("composed morphisms do not share an object".into()));
        }
        let blocks = self.blocks.iter().zip(&first.blocks).map(|(a, b)| a * b).collect();
        Ok(Morphism { source: first.source.clone(), target: self.target.clone(), blocks })
    }

    pub fn inverse(&self) -> Result<Morphism, RtDefectError> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.inverse().map_err(|_| RtDefectError::Shape("morphism is not invertible".into())))
            .collect::<Result<_, _>>()?;
        Ok(Morphism { source: self.target.clone(), target: self.source.clone(), blocks })
    }

    pub fn scaled(&self, factor: &Scalar) -> Morphism {
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks: self.blocks.iter().map(|b| b.scale(factor)).collect() }
    }

    /// The same morphism in the basis rescaled by `gauge`.
    pub fn regauge(&self, cat: &BraidedFusionData, gauge: &VertexGauge) -> Morphism {
        let field = cat.field();
        let weight = |objects: &[Object], t: &Tree| gauge.tree_factor(objects, &t.leaves, &t.charges, field);
        let blocks = (0..cat.rank())
            .map(|s| {
                let (src, tgt) = (Basis::new(cat, &self.source, s), Basis::new(cat, &self.target, s));
                Matrix::from_fn(tgt.len(), src.len(), field, |r, c| {
                    weight(&self.target, &tgt.trees[r]) * self.blocks[s].get(r, c) / weight(&self.source, &src.trees[c])
                })
            })
            .collect();
        Morphism { source: self.source.clone(), target: self.target.clone(), blocks }
    }

    /// Total charge of the first block where two parallel morphisms differ.
    pub fn first_difference(&self, other: &Morphism) -> Option<Simple> {
        if self.source != other.source || self.target != other.target {
            return Some(0);
        }
        self.blocks.iter().zip(&other.blocks).position(|(a, b)| a != b)
    }

    /// `id ⊗ self ⊗ id` acting on the factors of `ambient` starting at `position`.
    pub fn at(&self, cat: &BraidedFusionData, ambient: &[Object], position: usize) -> Result<Morphism, RtDefectError> {
        let width = self.source.len();
        if ambient.get(position..position + width) != Some(&self.source[..]) {
            return Err(RtDefectError::Shape("morphism does not fit the ambient factors".into()));
        }
        let mut target = ambient[..position].to_vec();
        target.extend(self.target.iter().cloned());
        target.extend(ambient[position + width..].iter().cloned());
        let field = cat.field();
        let local_source: Vec<Basis> = (0..cat.rank()).map(|w| Basis::new(cat, &self.source, w)).collect();
        let local_target: Vec<Basis> = (0..cat.rank()).map(|w| Basis::new(cat, &self.target, w)).collect();
        let mut blocks = Vec::with_capacity(cat.rank());
        for s in 0..cat.rank() {
            let src = Grouping::new(cat, ambient, position, width, s);
            let tgt = Grouping::new(cat, &target, position, self.target.len(), s);
            let mid = Matrix::from_fn(tgt.grouped.len(), src.grouped.len(), field, |r, c| {
                let ((outer_t, inner_t), (outer_s, inner_s)) = (&tgt.grouped[r], &src.grouped[c]);
                if outer_t != outer_s {
                    return field.zero();
                }
                let w = outer_s.leaves[position];
                match (local_target[w].position(inner_t), local_source[w].position(inner_s)) {
                    (Some(i), Some(j)) => self.blocks[w].get(i, j).clone(),
                    _ => field.zero(),
                }
            });
            blocks.push(&(&tgt.regroup * &mid) * &src.regroup.inverse().expect("regrouping is a change of basis"));
        }
        Ok(Morphism { source: ambient.to_vec(), target, blocks })
    }
}

/// Left-associated trees expressed in the basis where `width` consecutive
/// factors from `position` are fused first; the block enters the outer tree
/// as a single leaf whose summand index is its charge.
struct Grouping {
    /// `(outer tree, block tree)` pairs.
    grouped: Vec<(Tree, Tree)>,
    /// Rows: left-associated trees; columns: grouped trees.
    regroup: Matrix,
}

impl Grouping {
    fn new(cat: &BraidedFusionData, objects: &[Object], position: usize, width: usize, total: Simple) -> Self {
        let field = cat.field();
        let left = Basis::new(cat, objects, total);
        let mut outer_objects = objects[..position].to_vec();
        outer_objects.push(Object::all_simples(cat.rank()));
        outer_objects.extend(objects[position + width..].iter().cloned());
        let block = &objects[position..position + width];
        let mut grouped = Vec::new();
        for outer in Basis::new(cat, &outer_objects, total).trees {
            let w = outer.leaves[position];
            for inner in Basis::new(cat, block, w).trees {
                grouped.push((outer.clone(), inner));
            }
        }
        let index: HashMap<(Tree, Tree), usize> = grouped.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
        let mut regroup = Matrix::zeros(left.len(), grouped.len(), field);
        for (row, tree) in left.trees.iter().enumerate() {
            for (g, amplitude) in expand(cat, objects, tree, position, width) {
                let col = index[&g];
                regroup.add_at(row, col, &amplitude);
            }
        }
        Grouping { grouped, regroup }
    }
}

/// F-moves taking one left-associated tree to grouped trees.
fn expand(cat: &BraidedFusionData, objects: &[Object], tree: &Tree, position: usize, width: usize) -> Vec<((Tree, Tree), Scalar)> {
    let field = cat.field();
    let simple = |j: usize| objects[j].summands()[tree.leaves[j]];
    let outer = |w: Simple, after: Simple| {
        let mut leaves = tree.leaves[..position].to_vec();
        leaves.push(w);
        leaves.extend_from_slice(&tree.leaves[position + width..]);
        let mut charges = tree.charges[..position].to_vec();
        charges.push(after);
        charges.extend_from_slice(&tree.charges[position + width..]);
        Tree { leaves, charges }
    };
    let empty = Tree { leaves: vec![], charges: vec![] };
    if width == 0 {
        let before = if position == 0 { 0 } else { tree.charges[position - 1] };
        return vec![((outer(0, before), empty), field.one())];
    }
    let inner_leaves = tree.leaves[position..position + width].to_vec();
    if position == 0 {
        let inner = Tree { leaves: inner_leaves, charges: tree.charges[..width].to_vec() };
        let w = inner.total();
        return vec![((outer(w, tree.charges[width - 1]), inner), field.one())];
    }
    let prefix = tree.charges[position - 1];
    let mut branches: Vec<(Vec<Simple>, Scalar)> = vec![(vec![simple(position)], field.one())];
    let mut fused = tree.charges[position];
    for j in 1..width {
        let x = simple(position + j);
        let next = tree.charges[position + j];
        let mut grown = Vec::new();
        for (inner, amplitude) in branches {
            let g = *inner.last().expect("nonempty block");
            for g2 in cat.fusion().products(g, x) {
                if !cat.fusion().fuses(prefix, g2, next) {
                    continue;
                }
                if let Some(f) = cat.fusion().f(&[prefix, g, x, next, fused, g2]) {
                    if !f.is_zero() {
                        let mut charges = inner.clone();
                        charges.push(g2);
                        grown.push((charges, &amplitude * f));
                    }
                }
            }
        }
        branches = grown;
        fused = next;
    }
    branches
        .into_iter()
        .map(|(charges, amplitude)| {
            let w = *charges.last().expect("nonempty block");
            let inner = Tree { leaves: inner_leaves.clone(), charges };
            ((outer(w, fused), inner), amplitude)
        })
        .collect()
}

/// The braiding `c_{X,Y}: X ⊗ Y → Y ⊗ X` of two lists of factors.
pub fn braiding(cat: &BraidedFusionData, first: &[Object], second: &[Object]) -> Morphism {
    let mut source = first.to_vec();
    source.extend(second.iter().cloned());
    let mut target = second.to_vec();
    target.extend(first.iter().cloned());
    if first.is_empty() || second.is_empty() {
        return Morphism::identity(cat, source);
    }
    let field = cat.field();
    let (k, l) = (first.len(), second.len());
    let blocks = (0..cat.rank())
        .map(|s| {
            // Source grouped with `second` as the block; target with `first` as the block.
            let src = Grouping::new(cat, &source, k, l, s);
            let tgt = Grouping::new(cat, &target, l, k, s);
            let index: HashMap<(Tree, Tree), usize> = src.grouped.iter().enumerate().map(|(i, g)| (g.clone(), i)).collect();
            let mut mid = Matrix::zeros(tgt.grouped.len(), src.grouped.len(), field);
            for (r, (outer_t, inner_t)) in tgt.grouped.iter().enumerate() {
                let u = inner_t.total();
                let v = outer_t.charges[l - 1];
                // Outer target tree: second's tree, then the first block; swap the roles.
                let inner_s = Tree { leaves: outer_t.leaves[..l].to_vec(), charges: outer_t.charges[..l].to_vec() };
                let mut leaves = inner_t.leaves.clone();
                leaves.push(v);
                let mut charges = inner_t.charges.clone();
                charges.push(s);
                let c = index[&(Tree { leaves, charges }, inner_s)];
                mid.set(r, c, cat.r(u, v, s).clone());
            }
            &(&tgt.regroup * &mid) * &src.regroup.inverse().expect("regrouping is a change of basis")
        })
        .collect();
    Morphism { source, target, blocks }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rtdefects::examples::toric_code;
    use crate::scalars::Field;

    /// The toric code in a gauge where no F-symbol on nonunit legs is trivial.
    fn gauged_toric() -> BraidedFusionData {
        let q = Field::RATIONALS;
        let factors = (1..4).flat_map(|a| (1..4).map(move |b| (a, b, a ^ b))).map(|(a, b, c)| ((a, b, c), q.int((a + 2 * b) as i64)));
        VertexGauge::new(q, factors).unwrap().apply(&toric_code()).unwrap()
    }

    fn simples(labels: &[Simple]) -> Vec<Object> {
        labels.iter().map(|&x| Object::new(vec![x])).collect()
    }

    #[test]
    fn gauge_makes_associators_nontrivial() {
        let cat = gauged_toric();
        assert!(cat.fusion().f_entries().iter().any(|(_, v)| !v.is_one()));
    }

    #[test]
    fn braid_relation_holds() {
        let cat = gauged_toric();
        let ambient = simples(&[1, 2, 3]);
        let step = |objects: &[Object], position: usize| {
            let pair = &objects[position..position + 2];
            braiding(&cat, &pair[..1], &pair[1..]).at(&cat, objects, position).unwrap()
        };
        let chain = |positions: [usize; 3]| {
            let mut total = Morphism::identity(&cat, ambient.clone());
            for p in positions {
                total = step(total.target(), p).after(&total).unwrap();
            }
            total
        };
        assert_eq!(chain([0, 1, 0]), chain([1, 0, 1]));
    }

    #[test]
    fn disjoint_blocks_commute() {
        let cat = gauged_toric();
        let ambient = simples(&[1, 2, 1, 3]);
        let left = braiding(&cat, &ambient[..1], &ambient[1..2]);
        let right = braiding(&cat, &ambient[2..3], &ambient[3..]);
        let left_first = right.at(&cat, &simples(&[2, 1, 1, 3]), 2).unwrap().after(&left.at(&cat, &ambient, 0).unwrap()).unwrap();
        let right_first = left.at(&cat, &simples(&[1, 2, 3, 1]), 0).unwrap().after(&right.at(&cat, &ambient, 2).unwrap()).unwrap();
        assert_eq!(left_first, right_first);
    }

    #[test]
    fn monodromy_of_e_and_m_is_minus_one() {
        let cat = gauged_toric();
        let (e, m) = (simples(&[1]), simples(&[2]));
        let double = braiding(&cat, &m, &e).after(&braiding(&cat, &e, &m)).unwrap();
        let minus = Morphism::identity(&cat, simples(&[1, 2])).scaled(&Field::RATIONALS.int(-1));
        assert_eq!(double, minus);
    }

    #[test]
    fn inverse_undoes_a_placed_braiding() {
        let cat = gauged_toric();
        let ambient = simples(&[3, 1, 2]);
        let placed = braiding(&cat, &ambient[1..2], &ambient[2..]).at(&cat, &ambient, 1).unwrap();
        assert_eq!(placed.inverse().unwrap().after(&placed).unwrap(), Morphism::identity(&cat, ambient));
    }
}
