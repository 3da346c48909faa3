//! Algebra objects in a braided fusion category, Frobenius algebras over a
//! pair of commutative algebras, and bimodules over such pairs.

use super::braided::{BraidedFusionData, VertexGauge};
use super::calculus::{braiding, Basis, Morphism, Object, Tree};
use super::RtDefectError;
use crate::linalg::Matrix;
use crate::scalars::Scalar;

/// `((left summand, right summand, result summand), coefficient)` on the vertex `v^c_{ab}`.
pub type ProductComponent = ((usize, usize, usize), Scalar);

/// Component entries of a map `X ⊗ Y → Z` with every factor given by summand indices.
fn binary_map(cat: &BraidedFusionData, x: &Object, y: &Object, z: &Object, components: &[ProductComponent]) -> Morphism {
    let zero = cat.field().zero();
    Morphism::from_fn(cat, vec![x.clone(), y.clone()], vec![z.clone()], |_, target: &Tree, source: &Tree| {
        let key = (source.leaves[0], source.leaves[1], target.leaves[0]);
        components.iter().find(|(k, _)| *k == key).map(|(_, v)| v.clone()).unwrap_or_else(|| zero.clone())
    })
}

/// Inverse of `binary_map`: the nonzero components of a map `X ⊗ Y → Z`.
pub fn binary_components(cat: &BraidedFusionData, map: &Morphism) -> Vec<ProductComponent> {
    map.nonzero_entries(cat).into_iter().map(|(_, target, source, v)| ((source.leaves[0], source.leaves[1], target.leaves[0]), v)).collect()
}

/// Inverse of `unit_map` for either direction.
pub fn unit_components(cat: &BraidedFusionData, map: &Morphism) -> Vec<(usize, Scalar)> {
    map.nonzero_entries(cat)
        .into_iter()
        .map(|(_, target, source, v)| (target.leaves.first().or(source.leaves.first()).copied().unwrap_or(0), v))
        .collect()
}

/// Components of a map `1 → X` or `X → 1` on the unit summands of `X`.
fn unit_map(cat: &BraidedFusionData, x: &Object, components: &[(usize, Scalar)], into: bool) -> Morphism {
    let zero = cat.field().zero();
    let lookup = |t: &Tree| components.iter().find(|(k, _)| *k == t.leaves[0]).map(|(_, v)| v.clone()).unwrap_or_else(|| zero.clone());
    if into {
        Morphism::from_fn(cat, vec![], vec![x.clone()], |_, target, _| lookup(target))
    } else {
        Morphism::from_fn(cat, vec![x.clone()], vec![], |_, _, source| lookup(source))
    }
}

/// An algebra `(A, μ, η)` with a counit `ε`; the coproduct is the one making
/// `ε ∘ μ` a Frobenius pairing unless given explicitly.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraObject {
    object: Object,
    multiplication: Morphism,
    unit: Morphism,
    counit: Morphism,
    comultiplication: Morphism,
}

impl AlgebraObject {
    /// Builds the algebra and derives `Δ = (μ ⊗ 1)(1 ⊗ copairing)` from `ε ∘ μ`.
    pub fn new(
        cat: &BraidedFusionData,
        object: Object,
        multiplication: &[ProductComponent],
        unit: &[(usize, Scalar)],
        counit: &[(usize, Scalar)],
    ) -> Result<Self, RtDefectError> {
        let mu = binary_map(cat, &object, &object, &object, multiplication);
        let eta = unit_map(cat, &object, unit, true);
        let eps = unit_map(cat, &object, counit, false);
        let delta = derived_coproduct(cat, &object, &mu, &eps)?;
        Ok(AlgebraObject { object, multiplication: mu, unit: eta, counit: eps, comultiplication: delta })
    }

    /// Replaces the derived coproduct by explicit components `c → a ⊗ b`.
    pub fn with_comultiplication(mut self, cat: &BraidedFusionData, components: &[ProductComponent]) -> Self {
        let zero = cat.field().zero();
        let x = self.object.clone();
        self.comultiplication = Morphism::from_fn(cat, vec![x.clone()], vec![x.clone(), x], |_, target, source| {
            let key = (target.leaves[0], target.leaves[1], source.leaves[0]);
            components.iter().find(|(k, _)| *k == key).map(|(_, v)| v.clone()).unwrap_or_else(|| zero.clone())
        });
        self
    }

    pub fn object(&self) -> &Object {
        &self.object
    }

    pub fn multiplication(&self) -> &Morphism {
        &self.multiplication
    }

    pub fn unit(&self) -> &Morphism {
        &self.unit
    }

    pub fn counit(&self) -> &Morphism {
        &self.counit
    }

    pub fn comultiplication(&self) -> &Morphism {
        &self.comultiplication
    }

    /// The same algebra in the basis rescaled by `gauge`; `cat` is the rescaled category.
    pub fn regauge(&self, cat: &BraidedFusionData, gauge: &VertexGauge) -> Self {
        AlgebraObject {
            object: self.object.clone(),
            multiplication: self.multiplication.regauge(cat, gauge),
            unit: self.unit.regauge(cat, gauge),
            counit: self.counit.regauge(cat, gauge),
            comultiplication: self.comultiplication.regauge(cat, gauge),
        }
    }

    fn objects(&self, n: usize) -> Vec<Object> {
        vec![self.object.clone(); n]
    }
}

/// Solves `(p ⊗ 1)(1 ⊗ q) = 1` for the copairing `q` of `p = ε ∘ μ`.
fn derived_coproduct(cat: &BraidedFusionData, object: &Object, mu: &Morphism, eps: &Morphism) -> Result<Morphism, RtDefectError> {
    let field = cat.field();
    let pairing = eps.after(mu)?;
    let pair_objects = vec![object.clone(), object.clone()];
    let unknowns = Basis::new(cat, &pair_objects, 0).trees;
    let triple = vec![object.clone(); 3];
    let flatten = |m: &Morphism| -> Vec<Scalar> { (0..cat.rank()).flat_map(|s| m.block(s).entries().to_vec()).collect() };
    let mut columns = Vec::new();
    for chosen in &unknowns {
        let q = Morphism::from_fn(cat, vec![], pair_objects.clone(), |_, t, _| if t == chosen { field.one() } else { field.zero() });
        let zigzag = pairing.at(cat, &triple, 0)?.after(&q.at(cat, std::slice::from_ref(object), 1)?)?;
        columns.push(flatten(&zigzag));
    }
    let target = flatten(&Morphism::identity(cat, vec![object.clone()]));
    let system = Matrix::from_columns(&columns, target.len(), field);
    let solution =
        system.solve(&Matrix::column(&target, field)).map_err(|_| RtDefectError::NotFrobenius("the pairing ε ∘ μ is degenerate".into()))?;
    let copairing = Morphism::from_fn(cat, vec![], pair_objects.clone(), |_, t, _| {
        unknowns.iter().position(|u| u == t).map(|i| solution.get(i, 0).clone()).unwrap_or_else(|| field.zero())
    });
    mu.at(cat, &triple, 0)?.after(&copairing.at(cat, std::slice::from_ref(object), 1)?)
}

/// The relation whose two sides first differed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Associativity,
    LeftUnit,
    RightUnit,
    Commutativity,
    DeltaSeparability,
    FrobeniusLeft,
    FrobeniusRight,
    Counit,
    LeftActionAssociativity,
    LeftActionUnit,
    RightActionAssociativity,
    RightActionUnit,
    ActionsCommute,
    LeftActionMultiplicative,
    LeftActionUnital,
    RightActionMultiplicative,
    RightActionUnital,
    LeftOverMultiplication,
    LeftOverComultiplication,
    RightOverMultiplication,
    RightOverComultiplication,
    ModuleLeftAssociativity,
    ModuleLeftUnit,
    ModuleRightAssociativity,
    ModuleRightUnit,
    ModuleActionsCommute,
    RightExchange,
    LeftExchange,
}

/// A failing relation and the total charge where its two sides differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Witness {
    pub relation: Relation,
    pub total: usize,
}

/// Accumulates relations; keeps the first failure.
struct Checks {
    witness: Option<Witness>,
}

impl Checks {
    fn new() -> Self {
        Checks { witness: None }
    }

    fn equal(&mut self, relation: Relation, lhs: &Morphism, rhs: &Morphism) -> bool {
        match lhs.first_difference(rhs) {
            None => true,
            Some(total) => {
                self.witness.get_or_insert(Witness { relation, total });
                false
            }
        }
    }
}

fn compose(steps: &[Morphism]) -> Result<Morphism, RtDefectError> {
    let mut out = steps[0].clone();
    for next in &steps[1..] {
        out = next.after(&out)?;
    }
    Ok(out)
}

/// Unit and associativity of `μ`.
fn algebra_axioms(cat: &BraidedFusionData, alg: &AlgebraObject, checks: &mut Checks) -> Result<bool, RtDefectError> {
    let mu = &alg.multiplication;
    let three = alg.objects(3);
    let one = alg.objects(1);
    let left = mu.after(&mu.at(cat, &three, 0)?)?;
    let right = mu.after(&mu.at(cat, &three, 1)?)?;
    let id = Morphism::identity(cat, one.clone());
    let ok_assoc = checks.equal(Relation::Associativity, &left, &right);
    let ok_left = checks.equal(Relation::LeftUnit, &mu.after(&alg.unit.at(cat, &one, 0)?)?, &id);
    let ok_right = checks.equal(Relation::RightUnit, &mu.after(&alg.unit.at(cat, &one, 1)?)?, &id);
    Ok(ok_assoc && ok_left && ok_right)
}

/// Frobenius compatibility, the counit and Δ-separability.
fn frobenius_axioms(cat: &BraidedFusionData, alg: &AlgebraObject, checks: &mut Checks) -> Result<(bool, bool), RtDefectError> {
    let (mu, delta) = (&alg.multiplication, &alg.comultiplication);
    let (one, two, three) = (alg.objects(1), alg.objects(2), alg.objects(3));
    let middle = delta.after(mu)?;
    let via_left = mu.at(cat, &three, 1)?.after(&delta.at(cat, &two, 0)?)?;
    let via_right = mu.at(cat, &three, 0)?.after(&delta.at(cat, &two, 1)?)?;
    let id = Morphism::identity(cat, one.clone());
    let frob_left = checks.equal(Relation::FrobeniusLeft, &via_left, &middle);
    let frob_right = checks.equal(Relation::FrobeniusRight, &via_right, &middle);
    let counit = checks.equal(Relation::Counit, &alg.counit.at(cat, &two, 0)?.after(delta)?, &id);
    let separable = checks.equal(Relation::DeltaSeparability, &mu.after(delta)?, &id);
    Ok((frob_left && frob_right && counit, separable))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeFrobeniusReport {
    pub algebra: bool,
    pub commutative: bool,
    pub frobenius: bool,
    pub delta_separable: bool,
    pub witness: Option<Witness>,
}

impl CommutativeFrobeniusReport {
    pub fn passes(&self) -> bool {
        self.algebra && self.commutative && self.frobenius && self.delta_separable
    }
}

/// `μ ∘ c_{A,A} = μ`, Δ-separability and Frobenius compatibility, after the algebra axioms.
pub fn check_commutative_frobenius(cat: &BraidedFusionData, alg: &AlgebraObject) -> Result<CommutativeFrobeniusReport, RtDefectError> {
    let mut checks = Checks::new();
    let algebra = algebra_axioms(cat, alg, &mut checks)?;
    let one = alg.objects(1);
    let braided = alg.multiplication.after(&braiding(cat, &one, &one))?;
    let commutative = checks.equal(Relation::Commutativity, &braided, &alg.multiplication);
    let (frobenius, delta_separable) = frobenius_axioms(cat, alg, &mut checks)?;
    Ok(CommutativeFrobeniusReport { algebra, commutative, frobenius, delta_separable, witness: checks.witness })
}

/// An algebra `F` with actions `A ⊗ F → F` and `F ⊗ B → F`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairStructure {
    left: AlgebraObject,
    right: AlgebraObject,
    algebra: AlgebraObject,
    left_action: Morphism,
    right_action: Morphism,
}

impl PairStructure {
    /// Actions are given by components `(a, f, f')` and `(f, b, f')` on the vertices `v^{f'}_{af}`, `v^{f'}_{fb}`.
    pub fn new(
        cat: &BraidedFusionData,
        left: AlgebraObject,
        right: AlgebraObject,
        algebra: AlgebraObject,
        left_action: &[ProductComponent],
        right_action: &[ProductComponent],
    ) -> Self {
        let lact = binary_map(cat, &left.object, &algebra.object, &algebra.object, left_action);
        let ract = binary_map(cat, &algebra.object, &right.object, &algebra.object, right_action);
        PairStructure { left, right, algebra, left_action: lact, right_action: ract }
    }

    /// Actions through algebra maps `A → F` and `B → F` followed by multiplication.
    pub fn induced(
        cat: &BraidedFusionData,
        left: AlgebraObject,
        right: AlgebraObject,
        algebra: AlgebraObject,
        left_map: &[((usize, usize), Scalar)],
        right_map: &[((usize, usize), Scalar)],
    ) -> Result<Self, RtDefectError> {
        let map = |from: &Object, entries: &[((usize, usize), Scalar)]| {
            let zero = cat.field().zero();
            Morphism::from_fn(cat, vec![from.clone()], vec![algebra.object.clone()], |_, t, s| {
                entries.iter().find(|(k, _)| *k == (s.leaves[0], t.leaves[0])).map(|(_, v)| v.clone()).unwrap_or_else(|| zero.clone())
            })
        };
        let (iota_a, iota_b) = (map(&left.object, left_map), map(&right.object, right_map));
        let lact = algebra.multiplication.after(&iota_a.at(cat, &[left.object.clone(), algebra.object.clone()], 0)?)?;
        let ract = algebra.multiplication.after(&iota_b.at(cat, &[algebra.object.clone(), right.object.clone()], 1)?)?;
        Ok(PairStructure { left, right, algebra, left_action: lact, right_action: ract })
    }

    pub fn left(&self) -> &AlgebraObject {
        &self.left
    }

    pub fn right(&self) -> &AlgebraObject {
        &self.right
    }

    pub fn algebra(&self) -> &AlgebraObject {
        &self.algebra
    }

    pub fn left_action(&self) -> &Morphism {
        &self.left_action
    }

    pub fn right_action(&self) -> &Morphism {
        &self.right_action
    }

    /// Copy with one right-action component replaced.
    pub fn with_right_action_component(&self, cat: &BraidedFusionData, key: (usize, usize, usize), value: Scalar) -> Self {
        let mut out = self.clone();
        let old = self.right_action.clone();
        out.right_action = Morphism::from_fn(cat, old.source().to_vec(), old.target().to_vec(), |s, t, src| {
            if (src.leaves[0], src.leaves[1], t.leaves[0]) == key {
                return value.clone();
            }
            let (tgt_basis, src_basis) = (Basis::new(cat, old.target(), s), Basis::new(cat, old.source(), s));
            old.block(s).get(tgt_basis.position(t).expect("tree"), src_basis.position(src).expect("tree")).clone()
        });
        out
    }

    pub fn regauge(&self, cat: &BraidedFusionData, gauge: &VertexGauge) -> Self {
        PairStructure {
            left: self.left.regauge(cat, gauge),
            right: self.right.regauge(cat, gauge),
            algebra: self.algebra.regauge(cat, gauge),
            left_action: self.left_action.regauge(cat, gauge),
            right_action: self.right_action.regauge(cat, gauge),
        }
    }

    fn objects(&self) -> (Object, Object, Object) {
        (self.left.object.clone(), self.algebra.object.clone(), self.right.object.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    /// `A`, `B` commutative Δ-separable Frobenius, `F` Δ-separable Frobenius, actions a bimodule.
    pub preconditions: bool,
    /// The actions `A ⊗ F → F` and `F ⊗ B → F` are algebra maps.
    pub via_algebra_maps: bool,
    /// The exchange relations of both actions with `μ_F` and `Δ_F`.
    pub via_exchange_relations: bool,
    pub agree: bool,
    pub witness: Option<Witness>,
}

impl PairReport {
    pub fn passes(&self) -> bool {
        self.preconditions && self.via_algebra_maps && self.via_exchange_relations
    }
}

/// Evaluates both characterizations of a Frobenius algebra over `(A, B)`
/// independently. When the preconditions hold they must agree; a disagreement
/// is reported as an internal inconsistency.
pub fn check_frobenius_over_pair(cat: &BraidedFusionData, pair: &PairStructure) -> Result<PairReport, RtDefectError> {
    let mut checks = Checks::new();
    let preconditions = pair_preconditions(cat, pair, &mut checks)?;
    let mut route_one = Checks::new();
    let via_algebra_maps = actions_are_algebra_maps(cat, pair, &mut route_one)?;
    let mut route_two = Checks::new();
    let via_exchange_relations = exchange_relations(cat, pair, &mut route_two)?;
    let agree = via_algebra_maps == via_exchange_relations;
    if preconditions && !agree {
        return Err(RtDefectError::InternalInconsistency(format!(
            "algebra-map route {via_algebra_maps}, exchange route {via_exchange_relations}"
        )));
    }
    let witness = checks.witness.or(route_one.witness).or(route_two.witness);
    Ok(PairReport { preconditions, via_algebra_maps, via_exchange_relations, agree, witness })
}

fn pair_preconditions(cat: &BraidedFusionData, pair: &PairStructure, checks: &mut Checks) -> Result<bool, RtDefectError> {
    let mut ok = true;
    for side in [&pair.left, &pair.right] {
        let report = check_commutative_frobenius(cat, side)?;
        if let (None, Some(w)) = (checks.witness, report.witness) {
            checks.witness = Some(w);
        }
        ok &= report.passes();
    }
    ok &= algebra_axioms(cat, &pair.algebra, checks)?;
    let (frobenius, separable) = frobenius_axioms(cat, &pair.algebra, checks)?;
    ok &= frobenius && separable;
    let (a, f, b) = pair.objects();
    ok &= left_module(cat, &pair.left, &pair.left_action, &f, checks, [Relation::LeftActionAssociativity, Relation::LeftActionUnit])?;
    ok &= right_module(cat, &pair.right, &pair.right_action, &f, checks, [Relation::RightActionAssociativity, Relation::RightActionUnit])?;
    let afb = [a, f.clone(), b];
    let left_first = pair.right_action.after(&pair.left_action.at(cat, &afb, 0)?)?;
    let right_first = pair.left_action.after(&pair.right_action.at(cat, &afb, 1)?)?;
    ok &= checks.equal(Relation::ActionsCommute, &left_first, &right_first);
    Ok(ok)
}

fn left_module(
    cat: &BraidedFusionData,
    alg: &AlgebraObject,
    action: &Morphism,
    module: &Object,
    checks: &mut Checks,
    relations: [Relation; 2],
) -> Result<bool, RtDefectError> {
    let a = alg.object.clone();
    let aam = [a.clone(), a.clone(), module.clone()];
    let twice = action.after(&action.at(cat, &aam, 1)?)?;
    let multiplied = action.after(&alg.multiplication.at(cat, &aam, 0)?)?;
    let assoc = checks.equal(relations[0], &twice, &multiplied);
    let unital = action.after(&alg.unit.at(cat, std::slice::from_ref(module), 0)?)?;
    let unit = checks.equal(relations[1], &unital, &Morphism::identity(cat, vec![module.clone()]));
    Ok(assoc && unit)
}

fn right_module(
    cat: &BraidedFusionData,
    alg: &AlgebraObject,
    action: &Morphism,
    module: &Object,
    checks: &mut Checks,
    relations: [Relation; 2],
) -> Result<bool, RtDefectError> {
    let b = alg.object.clone();
    let mbb = [module.clone(), b.clone(), b];
    let twice = action.after(&action.at(cat, &mbb, 0)?)?;
    let multiplied = action.after(&alg.multiplication.at(cat, &mbb, 1)?)?;
    let assoc = checks.equal(relations[0], &twice, &multiplied);
    let unital = action.after(&alg.unit.at(cat, std::slice::from_ref(module), 1)?)?;
    let unit = checks.equal(relations[1], &unital, &Morphism::identity(cat, vec![module.clone()]));
    Ok(assoc && unit)
}

/// Route one: `ρ_A ∘ μ_{A⊗F} = μ_F ∘ (ρ_A ⊗ ρ_A)` with `μ_{A⊗F} = (μ_A ⊗ μ_F)(1 ⊗ c_{A,F}⁻¹ ⊗ 1)`,
/// unitality, and the mirror statements for `F ⊗ B` with `c_{F,B}⁻¹`.
fn actions_are_algebra_maps(cat: &BraidedFusionData, pair: &PairStructure, checks: &mut Checks) -> Result<bool, RtDefectError> {
    let (a, f, b) = pair.objects();
    let (mu_a, mu_f, mu_b) = (&pair.left.multiplication, &pair.algebra.multiplication, &pair.right.multiplication);
    let (lact, ract) = (&pair.left_action, &pair.right_action);

    let afaf = [a.clone(), f.clone(), a.clone(), f.clone()];
    let product = compose(&[
        braiding(cat, std::slice::from_ref(&a), std::slice::from_ref(&f)).inverse()?.at(cat, &afaf, 1)?,
        mu_f.at(cat, &[a.clone(), a.clone(), f.clone(), f.clone()], 2)?,
        mu_a.at(cat, &[a.clone(), a.clone(), f.clone()], 0)?,
        lact.clone(),
    ])?;
    let acted = compose(&[lact.at(cat, &afaf, 2)?, lact.at(cat, &[a.clone(), f.clone(), f.clone()], 0)?, mu_f.clone()])?;
    let left_mult = checks.equal(Relation::LeftActionMultiplicative, &product, &acted);
    let units = compose(&[pair.left.unit.clone(), pair.algebra.unit.at(cat, std::slice::from_ref(&a), 1)?, lact.clone()])?;
    let left_unit = checks.equal(Relation::LeftActionUnital, &units, &pair.algebra.unit);

    let fbfb = [f.clone(), b.clone(), f.clone(), b.clone()];
    let product = compose(&[
        braiding(cat, std::slice::from_ref(&f), std::slice::from_ref(&b)).inverse()?.at(cat, &fbfb, 1)?,
        mu_f.at(cat, &[f.clone(), f.clone(), b.clone(), b.clone()], 0)?,
        mu_b.at(cat, &[f.clone(), b.clone(), b.clone()], 1)?,
        ract.clone(),
    ])?;
    let acted = compose(&[ract.at(cat, &fbfb, 2)?, ract.at(cat, &[f.clone(), b.clone(), f.clone()], 0)?, mu_f.clone()])?;
    let right_mult = checks.equal(Relation::RightActionMultiplicative, &product, &acted);
    let units = compose(&[pair.algebra.unit.clone(), pair.right.unit.at(cat, std::slice::from_ref(&f), 1)?, ract.clone()])?;
    let right_unit = checks.equal(Relation::RightActionUnital, &units, &pair.algebra.unit);
    Ok(left_mult && left_unit && right_mult && right_unit)
}

/// Route two: each action commutes with `μ_F` and `Δ_F` on either leg, the
/// acting strand passing `F` by the braiding.
fn exchange_relations(cat: &BraidedFusionData, pair: &PairStructure, checks: &mut Checks) -> Result<bool, RtDefectError> {
    let (a, f, b) = pair.objects();
    let (mu, delta) = (&pair.algebra.multiplication, &pair.algebra.comultiplication);
    let (lact, ract) = (&pair.left_action, &pair.right_action);
    let pass_a = braiding(cat, std::slice::from_ref(&a), std::slice::from_ref(&f));
    let pass_b = braiding(cat, std::slice::from_ref(&f), std::slice::from_ref(&b));

    let aff = [a.clone(), f.clone(), f.clone()];
    let faf = [f.clone(), a.clone(), f.clone()];
    let outer = lact.after(&mu.at(cat, &aff, 1)?)?;
    let first = mu.after(&lact.at(cat, &aff, 0)?)?;
    let second = compose(&[pass_a.at(cat, &aff, 0)?, lact.at(cat, &faf, 1)?, mu.clone()])?;
    let left_mult =
        checks.equal(Relation::LeftOverMultiplication, &outer, &first) & checks.equal(Relation::LeftOverMultiplication, &outer, &second);

    let af = [a.clone(), f.clone()];
    let outer = delta.after(lact)?;
    let first = lact.at(cat, &aff, 0)?.after(&delta.at(cat, &af, 1)?)?;
    let second = compose(&[delta.at(cat, &af, 1)?, pass_a.at(cat, &aff, 0)?, lact.at(cat, &faf, 1)?])?;
    let left_comult = checks.equal(Relation::LeftOverComultiplication, &outer, &first)
        & checks.equal(Relation::LeftOverComultiplication, &outer, &second);

    let ffb = [f.clone(), f.clone(), b.clone()];
    let fbf = [f.clone(), b.clone(), f.clone()];
    let outer = ract.after(&mu.at(cat, &ffb, 0)?)?;
    let first = mu.after(&ract.at(cat, &ffb, 1)?)?;
    let second = compose(&[pass_b.at(cat, &ffb, 1)?, ract.at(cat, &fbf, 0)?, mu.clone()])?;
    let right_mult =
        checks.equal(Relation::RightOverMultiplication, &outer, &first) & checks.equal(Relation::RightOverMultiplication, &outer, &second);

    let fb = [f.clone(), b.clone()];
    let outer = delta.after(ract)?;
    let first = ract.at(cat, &ffb, 1)?.after(&delta.at(cat, &fb, 0)?)?;
    let second = compose(&[delta.at(cat, &fb, 0)?, pass_b.at(cat, &ffb, 1)?, ract.at(cat, &fbf, 0)?])?;
    let right_comult = checks.equal(Relation::RightOverComultiplication, &outer, &first)
        & checks.equal(Relation::RightOverComultiplication, &outer, &second);
    Ok(left_mult && left_comult && right_mult && right_comult)
}

/// How the exchange conditions move a strand past `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Crossing {
    /// The braiding `c`.
    Over,
    /// The inverse braiding.
    Under,
}

/// Crossings used by the two exchange conditions; the default is
/// `c_{M,B}` for `B` and the inverse of `c_{A, G⊗M}` for `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ExchangeCrossings {
    pub right: Crossing,
    pub left: Crossing,
}

impl Default for ExchangeCrossings {
    fn default() -> Self {
        ExchangeCrossings { right: Crossing::Over, left: Crossing::Under }
    }
}

/// A `G`-`F`-bimodule `M` with actions `G ⊗ M → M` and `M ⊗ F → M`.
#[derive(Debug, Clone, PartialEq)]
pub struct BimoduleOverPair {
    object: Object,
    left_action: Morphism,
    right_action: Morphism,
}

impl BimoduleOverPair {
    pub fn new(
        cat: &BraidedFusionData,
        object: Object,
        left_algebra: &PairStructure,
        right_algebra: &PairStructure,
        left_action: &[ProductComponent],
        right_action: &[ProductComponent],
    ) -> Self {
        let lact = binary_map(cat, &left_algebra.algebra.object, &object, &object, left_action);
        let ract = binary_map(cat, &object, &right_algebra.algebra.object, &object, right_action);
        BimoduleOverPair { object, left_action: lact, right_action: ract }
    }

    /// `F` as a bimodule over itself.
    pub fn regular(pair: &PairStructure) -> Self {
        BimoduleOverPair {
            object: pair.algebra.object.clone(),
            left_action: pair.algebra.multiplication.clone(),
            right_action: pair.algebra.multiplication.clone(),
        }
    }

    pub fn object(&self) -> &Object {
        &self.object
    }

    pub fn left_action(&self) -> &Morphism {
        &self.left_action
    }

    pub fn right_action(&self) -> &Morphism {
        &self.right_action
    }

    pub fn regauge(&self, cat: &BraidedFusionData, gauge: &VertexGauge) -> Self {
        BimoduleOverPair {
            object: self.object.clone(),
            left_action: self.left_action.regauge(cat, gauge),
            right_action: self.right_action.regauge(cat, gauge),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleOverPairReport {
    pub bimodule: bool,
    /// `m ◁ (1_F ◁ b)` against `(1_G ◁ b) ▷ m`.
    pub right_exchange: bool,
    /// `m ◁ (a ▷ 1_F)` against `(a ▷ 1_G) ▷ m`.
    pub left_exchange: bool,
    pub witness: Option<Witness>,
}

impl BimoduleOverPairReport {
    pub fn passes(&self) -> bool {
        self.bimodule && self.right_exchange && self.left_exchange
    }
}

/// Checks that `M` is a `G`-`F`-bimodule whose two induced actions of `B` and of `A` agree.
pub fn check_bimodule_over_pair(
    cat: &BraidedFusionData,
    module: &BimoduleOverPair,
    right_algebra: &PairStructure,
    left_algebra: &PairStructure,
) -> Result<BimoduleOverPairReport, RtDefectError> {
    check_bimodule_over_pair_with(cat, module, right_algebra, left_algebra, ExchangeCrossings::default())
}

/// As [`check_bimodule_over_pair`] with explicit crossings.
pub fn check_bimodule_over_pair_with(
    cat: &BraidedFusionData,
    module: &BimoduleOverPair,
    right_algebra: &PairStructure,
    left_algebra: &PairStructure,
    crossings: ExchangeCrossings,
) -> Result<BimoduleOverPairReport, RtDefectError> {
    if right_algebra.left != left_algebra.left || right_algebra.right != left_algebra.right {
        return Err(RtDefectError::Shape("F and G must be algebras over the same pair".into()));
    }
    let mut checks = Checks::new();
    let (a, f, b) = right_algebra.objects();
    let g = left_algebra.algebra.object.clone();
    let m = module.object.clone();
    let (lact, ract) = (&module.left_action, &module.right_action);

    let bimodule =
        left_module(cat, &left_algebra.algebra, lact, &m, &mut checks, [Relation::ModuleLeftAssociativity, Relation::ModuleLeftUnit])?
            & right_module(
                cat,
                &right_algebra.algebra,
                ract,
                &m,
                &mut checks,
                [Relation::ModuleRightAssociativity, Relation::ModuleRightUnit],
            )?
            & {
                let gmf = [g.clone(), m.clone(), f.clone()];
                let left_first = ract.after(&lact.at(cat, &gmf, 0)?)?;
                let right_first = lact.after(&ract.at(cat, &gmf, 1)?)?;
                checks.equal(Relation::ModuleActionsCommute, &left_first, &right_first)
            };

    let mb = [m.clone(), b.clone()];
    let through_f = compose(&[
        right_algebra.algebra.unit.at(cat, &mb, 1)?,
        right_algebra.right_action.at(cat, &[m.clone(), f.clone(), b.clone()], 1)?,
        ract.clone(),
    ])?;
    let pass_b = match crossings.right {
        Crossing::Over => braiding(cat, std::slice::from_ref(&m), std::slice::from_ref(&b)),
        Crossing::Under => braiding(cat, std::slice::from_ref(&b), std::slice::from_ref(&m)).inverse()?,
    };
    let through_g = compose(&[
        left_algebra.algebra.unit.at(cat, &mb, 0)?,
        pass_b.at(cat, &[g.clone(), m.clone(), b.clone()], 1)?,
        left_algebra.right_action.at(cat, &[g.clone(), b.clone(), m.clone()], 0)?,
        lact.clone(),
    ])?;
    let right_exchange = checks.equal(Relation::RightExchange, &through_f, &through_g);

    let ma = [m.clone(), a.clone()];
    let through_f = compose(&[
        right_algebra.algebra.unit.at(cat, &ma, 2)?,
        right_algebra.left_action.at(cat, &[m.clone(), a.clone(), f.clone()], 1)?,
        ract.clone(),
    ])?;
    let pass_a = match crossings.left {
        Crossing::Under => braiding(cat, std::slice::from_ref(&a), &[g.clone(), m.clone()]).inverse()?,
        Crossing::Over => braiding(cat, &[g.clone(), m.clone()], std::slice::from_ref(&a)),
    };
    let through_g = compose(&[
        left_algebra.algebra.unit.at(cat, &ma, 0)?,
        pass_a,
        left_algebra.left_action.at(cat, &[a.clone(), g.clone(), m.clone()], 0)?,
        lact.clone(),
    ])?;
    let left_exchange = checks.equal(Relation::LeftExchange, &through_f, &through_g);
    Ok(BimoduleOverPairReport { bimodule, right_exchange, left_exchange, witness: checks.witness })
}
