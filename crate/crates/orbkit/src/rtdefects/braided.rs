//! Braided multiplicity-free fusion data: F-symbols plus R-symbols
//! `v^c_{ba} ∘ c_{a,b} = R^{ab}_c v^c_{ab}`, validated by both hexagons.

use std::collections::HashMap;

use super::calculus::{braiding, Morphism, Object};
use super::RtDefectError;
use crate::fusioncat::{FusionData, Simple};
use crate::scalars::{Field, Scalar};

/// Which hexagon failed: braiding past a tensor product on the right or on the left.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hexagon {
    /// `c_{a, b⊗c} = (1 ⊗ c_{a,c})(c_{a,b} ⊗ 1)`.
    PastRight,
    /// `c_{a⊗b, c} = (c_{a,c} ⊗ 1)(1 ⊗ c_{b,c})`.
    PastLeft,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BraidedFusionData {
    fusion: FusionData,
    r_symbols: HashMap<(Simple, Simple, Simple), Scalar>,
    twists: Vec<Scalar>,
}

impl BraidedFusionData {
    /// Requires a nonzero `R^{ab}_c` for every admissible triple, unit-normalized
    /// R- and F-symbols, and both hexagons.
    pub fn new(fusion: FusionData, r_symbols: impl IntoIterator<Item = ((Simple, Simple, Simple), Scalar)>) -> Result<Self, RtDefectError> {
        let data = Self::unchecked(fusion, r_symbols.into_iter().collect())?;
        if let Some((hexagon, witness)) = data.hexagon_failure() {
            return Err(RtDefectError::HexagonViolation { hexagon, witness });
        }
        Ok(data)
    }

    fn unchecked(fusion: FusionData, r_symbols: HashMap<(Simple, Simple, Simple), Scalar>) -> Result<Self, RtDefectError> {
        let field = fusion.field();
        for (&(a, b, c), value) in &r_symbols {
            if !fusion.fuses(a, b, c) {
                return Err(RtDefectError::Shape(format!("R-symbol ({a},{b},{c}) is not admissible")));
            }
            if value.field() != field || value.is_zero() {
                return Err(RtDefectError::Shape(format!("R-symbol ({a},{b},{c}) must be a nonzero element of {field}")));
            }
        }
        for &(a, b, c) in fusion.fusion_triples() {
            if !r_symbols.contains_key(&(a, b, c)) {
                return Err(RtDefectError::MissingRSymbol(a, b, c));
            }
            if (a == 0 || b == 0) && !r_symbols[&(a, b, c)].is_one() {
                return Err(RtDefectError::Shape(format!("R-symbol ({a},{b},{c}) with a unit leg must be 1")));
            }
        }
        let one = field.one();
        let normalized = fusion
            .admissible_six_indices()
            .iter()
            .filter(|idx| idx[0] == 0 || idx[1] == 0 || idx[2] == 0)
            .all(|idx| fusion.f(idx) == Some(&one));
        if !normalized {
            return Err(RtDefectError::Shape("F-symbols with a unit leg must be 1".into()));
        }
        let twists = (0..fusion.rank())
            .map(|a| {
                let sum = fusion.products(a, a).into_iter().fold(field.zero(), |acc, c| acc + fusion.qdim(c) * &r_symbols[&(a, a, c)]);
                sum / fusion.qdim(a)
            })
            .collect();
        Ok(BraidedFusionData { fusion, r_symbols, twists })
    }

    pub fn fusion(&self) -> &FusionData {
        &self.fusion
    }

    pub fn field(&self) -> Field {
        self.fusion.field()
    }

    pub fn rank(&self) -> usize {
        self.fusion.rank()
    }

    /// `R^{ab}_c`; panics on an inadmissible triple.
    pub fn r(&self, a: Simple, b: Simple, c: Simple) -> &Scalar {
        &self.r_symbols[&(a, b, c)]
    }

    /// All R-symbols in a deterministic order.
    pub fn r_entries(&self) -> Vec<((Simple, Simple, Simple), Scalar)> {
        let mut v: Vec<_> = self.r_symbols.iter().map(|(k, s)| (*k, s.clone())).collect();
        v.sort_by_key(|x| x.0);
        v
    }

    /// `θ_a = d_a⁻¹ Σ_c d_c R^{aa}_c`.
    pub fn twist(&self, a: Simple) -> &Scalar {
        &self.twists[a]
    }

    /// Copy with one R-symbol replaced; the result is validated again.
    pub fn with_r_symbol(&self, index: (Simple, Simple, Simple), value: Scalar) -> Result<Self, RtDefectError> {
        let mut r = self.r_symbols.clone();
        r.insert(index, value);
        Self::new(self.fusion.clone(), r)
    }

    /// The first simple triple `(a, b, c)` violating a hexagon.
    fn hexagon_failure(&self) -> Option<(Hexagon, [Simple; 3])> {
        let n = self.rank();
        let simple = |x: Simple| Object::new(vec![x]);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (oa, ob, oc) = (simple(a), simple(b), simple(c));
                    let whole = braiding(self, std::slice::from_ref(&oa), &[ob.clone(), oc.clone()]);
                    let steps = compose_pair(
                        self,
                        &braiding(self, std::slice::from_ref(&oa), std::slice::from_ref(&ob)),
                        &[oa.clone(), ob.clone(), oc.clone()],
                        0,
                        &braiding(self, std::slice::from_ref(&oa), std::slice::from_ref(&oc)),
                        1,
                    );
                    if whole != steps {
                        return Some((Hexagon::PastRight, [a, b, c]));
                    }
                    let whole = braiding(self, &[oa.clone(), ob.clone()], std::slice::from_ref(&oc));
                    let steps = compose_pair(
                        self,
                        &braiding(self, std::slice::from_ref(&ob), std::slice::from_ref(&oc)),
                        &[oa.clone(), ob.clone(), oc.clone()],
                        1,
                        &braiding(self, &[oa], &[oc]),
                        0,
                    );
                    if whole != steps {
                        return Some((Hexagon::PastLeft, [a, b, c]));
                    }
                }
            }
        }
        None
    }
}

/// `second@p2 ∘ first@p1` on `ambient`.
fn compose_pair(cat: &BraidedFusionData, first: &Morphism, ambient: &[Object], p1: usize, second: &Morphism, p2: usize) -> Morphism {
    let a = first.at(cat, ambient, p1).expect("first step fits");
    let b = second.at(cat, a.target(), p2).expect("second step fits");
    b.after(&a).expect("composable")
}

/// Rescaling of the trivalent basis vectors `v^c_{ab} ↦ λ^c_{ab} v^c_{ab}`,
/// with `λ = 1` whenever a leg is the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexGauge {
    factors: HashMap<(Simple, Simple, Simple), Scalar>,
}

impl VertexGauge {
    /// Missing admissible triples default to 1; unit legs are forced to 1.
    pub fn new(field: Field, factors: impl IntoIterator<Item = ((Simple, Simple, Simple), Scalar)>) -> Result<Self, RtDefectError> {
        let mut map = HashMap::new();
        for ((a, b, c), v) in factors {
            if v.is_zero() || v.field() != field {
                return Err(RtDefectError::Shape("gauge factors must be nonzero field elements".into()));
            }
            if a != 0 && b != 0 {
                map.insert((a, b, c), v);
            }
        }
        Ok(VertexGauge { factors: map })
    }

    pub fn factor(&self, a: Simple, b: Simple, c: Simple, field: Field) -> Scalar {
        self.factors.get(&(a, b, c)).cloned().unwrap_or_else(|| field.one())
    }

    /// The same braided category in the rescaled basis.
    pub fn apply(&self, data: &BraidedFusionData) -> Result<BraidedFusionData, RtDefectError> {
        let fusion = &data.fusion;
        let field = fusion.field();
        let lam = |a, b, c| self.factor(a, b, c, field);
        let f_entries: Vec<_> = fusion
            .f_entries()
            .into_iter()
            .map(|([a, b, c, d, e, f], v)| {
                let scale = lam(a, b, e) * lam(e, c, d) / (lam(b, c, f) * lam(a, f, d));
                ([a, b, c, d, e, f], v * scale)
            })
            .collect();
        let gauged = FusionData::new(
            field,
            fusion.labels().to_vec(),
            (0..fusion.rank()).map(|a| fusion.dual(a)).collect(),
            fusion.fusion_triples().copied().collect::<Vec<_>>(),
            f_entries,
            (0..fusion.rank()).map(|a| fusion.qdim(a).clone()).collect(),
            fusion.euler().cloned(),
        )?;
        let r = data.r_entries().into_iter().map(|((a, b, c), v)| ((a, b, c), v * lam(b, a, c) / lam(a, b, c)));
        BraidedFusionData::new(gauged, r)
    }

    /// Product of the factors along a tree's vertices.
    pub(crate) fn tree_factor(&self, objects: &[Object], leaves: &[usize], charges: &[Simple], field: Field) -> Scalar {
        (1..leaves.len()).fold(field.one(), |acc, j| {
            let x = objects[j].summands()[leaves[j]];
            acc * self.factor(charges[j - 1], x, charges[j], field)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusioncat::examples::vec_cyclic;
    use crate::rtdefects::examples::{super_vector_spaces, toric_code};

    #[test]
    fn missing_and_inadmissible_r_symbols_are_rejected() {
        let q = Field::RATIONALS;
        let partial = vec![((0, 0, 0), q.one()), ((0, 1, 1), q.one()), ((1, 0, 1), q.one())];
        assert_eq!(BraidedFusionData::new(vec_cyclic(2), partial.clone()).unwrap_err(), RtDefectError::MissingRSymbol(1, 1, 0));
        let mut bad = partial;
        bad.extend([((1, 1, 0), q.one()), ((1, 1, 1), q.one())]);
        assert!(matches!(BraidedFusionData::new(vec_cyclic(2), bad), Err(RtDefectError::Shape(_))));
    }

    #[test]
    fn gauge_changes_symbols_but_not_twists() {
        let q = Field::RATIONALS;
        let gauge = VertexGauge::new(q, [((1, 1, 0), q.int(3)), ((1, 2, 3), q.int(-2))]).unwrap();
        for cat in [super_vector_spaces(), toric_code()] {
            let gauged = gauge.apply(&cat).unwrap();
            assert!((0..cat.rank()).all(|a| gauged.twist(a) == cat.twist(a)));
        }
        let toric = gauge.apply(&toric_code()).unwrap();
        assert_eq!(toric.r(1, 2, 3), &q.ratio(-1, 2));
        assert_eq!(toric.r(2, 1, 3), &q.int(2));
    }
}
