//! Braided categories with rational R-symbols and algebra fixtures in them.
//!
//! Braidings whose R-symbols need roots of unity beyond `±1` (semion,
//! Fibonacci, Ising) do not live in a real quadratic field and are absent.

use super::algebra::{AlgebraObject, BimoduleOverPair, PairStructure, ProductComponent};
use super::braided::BraidedFusionData;
use super::calculus::Object;
use crate::fusioncat::examples::{cyclic_with_cocycle, vec_cyclic};
use crate::fusioncat::{EulerDatum, FusionData, Simple};
use crate::scalars::{Field, Scalar};

fn q() -> Field {
    Field::RATIONALS
}

fn pointed_braiding(fusion: FusionData, r: impl Fn(Simple, Simple) -> i64) -> BraidedFusionData {
    let entries: Vec<_> = fusion.fusion_triples().map(|&(a, b, c)| ((a, b, c), q().int(r(a, b)))).collect();
    BraidedFusionData::new(fusion, entries).expect("bicharacter braiding")
}

/// `Vec` over ℚ.
pub fn vector_spaces() -> BraidedFusionData {
    pointed_braiding(cyclic_with_cocycle(1, q(), |_, _, _| q().one()), |_, _| 1)
}

/// `Vec_{ℤ/2}` with the symmetric braiding `R = 1`.
pub fn z2_symmetric() -> BraidedFusionData {
    pointed_braiding(vec_cyclic(2), |_, _| 1)
}

/// Super vector spaces: `Vec_{ℤ/2}` with `R^{gg} = −1`.
pub fn super_vector_spaces() -> BraidedFusionData {
    pointed_braiding(vec_cyclic(2), |a, b| if a * b == 1 { -1 } else { 1 })
}

/// The toric code: `Vec_{ℤ/2×ℤ/2}` with simples `1, e, m, f` at `0, 1, 2, 3`,
/// bits `(k & 1, k >> 1)` and `R^{ab} = (−1)^{a₂ b₁}`.
pub fn toric_code() -> BraidedFusionData {
    let k = q();
    let fusion: Vec<_> = (0..4).flat_map(|a| (0..4).map(move |b| (a, b, a ^ b))).collect();
    let mut symbols = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                symbols.push(([a, b, c, a ^ b ^ c, a ^ b, b ^ c], k.one()));
            }
        }
    }
    let labels = ["1", "e", "m", "f"].iter().map(|s| s.to_string()).collect();
    let data = FusionData::new(k, labels, vec![0, 1, 2, 3], fusion, symbols, vec![k.one(); 4], Some(EulerDatum::PhiSquared(k.ratio(1, 4))))
        .expect("toric code fusion data");
    pointed_braiding(data, |a, b| if (a >> 1) & b & 1 == 1 { -1 } else { 1 })
}

/// The unit object as the trivial algebra.
pub fn ground(cat: &BraidedFusionData) -> AlgebraObject {
    let one = cat.field().one();
    AlgebraObject::new(cat, Object::unit(), &[((0, 0, 0), one.clone())], &[(0, one.clone())], &[(0, one)]).expect("ground algebra")
}

/// The group algebra of a subgroup of simples in a pointed category, with
/// multiplication twisted by `sign(x, y)` and the Δ-separable counit `|H|`.
pub fn group_algebra(cat: &BraidedFusionData, elements: &[Simple], sign: impl Fn(Simple, Simple) -> i64) -> AlgebraObject {
    let k = cat.field();
    let index = |x: Simple| elements.iter().position(|&e| e == x).expect("subgroup is closed");
    let mut mult = Vec::new();
    for (i, &x) in elements.iter().enumerate() {
        for (j, &y) in elements.iter().enumerate() {
            let product = cat.fusion().products(x, y)[0];
            mult.push(((i, j, index(product)), k.int(sign(x, y))));
        }
    }
    let unit = index(0);
    AlgebraObject::new(cat, Object::new(elements.to_vec()), &mult, &[(unit, k.one())], &[(unit, k.int(elements.len() as i64))])
        .expect("group algebra is Frobenius")
}

/// `ℚ[ℤ/2]` inside `Vec`: two copies of the unit, counit `2` on the identity.
pub fn vec_group_algebra_z2(cat: &BraidedFusionData) -> AlgebraObject {
    let one = cat.field().one();
    let mult: Vec<ProductComponent> = (0..2).flat_map(|i| (0..2).map(move |j| (i, j, (i + j) % 2))).map(|key| (key, one.clone())).collect();
    AlgebraObject::new(cat, Object::new(vec![0, 0]), &mult, &[(0, cat.field().one())], &[(0, cat.field().int(2))]).expect("Frobenius")
}

/// `ℚ^n` inside `Vec` with idempotent basis and counit `1` on each idempotent.
pub fn vec_diagonal(cat: &BraidedFusionData, n: usize) -> AlgebraObject {
    let one = cat.field().one();
    let mult: Vec<ProductComponent> = (0..n).map(|i| ((i, i, i), one.clone())).collect();
    let ones: Vec<(usize, Scalar)> = (0..n).map(|i| (i, one.clone())).collect();
    AlgebraObject::new(cat, Object::new(vec![0; n]), &mult, &ones, &ones).expect("Frobenius")
}

/// `Mat_n` inside `Vec` with `E_ij` at `n·i + j` and the Δ-separable counit `n·tr`.
pub fn vec_matrices(cat: &BraidedFusionData, n: usize) -> AlgebraObject {
    let k = cat.field();
    let mut mult = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                mult.push(((n * i + j, n * j + l, n * i + l), k.one()));
            }
        }
    }
    let unit: Vec<(usize, Scalar)> = (0..n).map(|i| (n * i + i, k.one())).collect();
    let counit: Vec<(usize, Scalar)> = (0..n).map(|i| (n * i + i, k.int(n as i64))).collect();
    AlgebraObject::new(cat, Object::new(vec![0; n * n]), &mult, &unit, &counit).expect("Frobenius")
}

/// A named pair structure with its expected verdict.
#[derive(Debug, Clone)]
pub struct PairFixture {
    pub name: &'static str,
    pub category: BraidedFusionData,
    pub pair: PairStructure,
    pub expected: bool,
}

fn identity_map(n: usize) -> Vec<((usize, usize), Scalar)> {
    (0..n).map(|i| ((i, i), q().one())).collect()
}

fn unit_into(target_unit: usize) -> Vec<((usize, usize), Scalar)> {
    vec![((0, target_unit), q().one())]
}

fn induced(
    cat: &BraidedFusionData,
    a: AlgebraObject,
    b: AlgebraObject,
    f: AlgebraObject,
    lmap: &[((usize, usize), Scalar)],
    rmap: &[((usize, usize), Scalar)],
) -> PairStructure {
    PairStructure::induced(cat, a, b, f, lmap, rmap).expect("actions fit")
}

/// Over `(⟨e⟩, ⟨m⟩)` in the toric code: `1, e, m, f` with `μ(x, y) = sign(x, y) · xy`.
fn toric_product(cat: &BraidedFusionData, sign: impl Fn(Simple, Simple) -> i64) -> PairStructure {
    let (a, b) = (group_algebra(cat, &[0, 1], |_, _| 1), group_algebra(cat, &[0, 2], |_, _| 1));
    let f = group_algebra(cat, &[0, 1, 2, 3], sign);
    let one = q().one();
    induced(cat, a, b, f, &[((0, 0), one.clone()), ((1, 1), one.clone())], &[((0, 0), one.clone()), ((1, 2), one)])
}

/// `⟨e⟩` over `(1, ⟨e⟩)` in the toric code.
fn toric_e_over_ground_and_e(cat: &BraidedFusionData) -> PairStructure {
    let e = || group_algebra(cat, &[0, 1], |_, _| 1);
    induced(cat, ground(cat), e(), e(), &unit_into(0), &identity_map(2))
}

pub fn pair_fixtures() -> Vec<PairFixture> {
    let one = q().one();
    let mut out = Vec::new();

    let vec = vector_spaces();
    let pair = induced(&vec, ground(&vec), ground(&vec), vec_group_algebra_z2(&vec), &unit_into(0), &unit_into(0));
    out.push(PairFixture { name: "vec-ground-z2", category: vec.clone(), pair, expected: true });

    let unit_of_matrices = vec![((0, 0), one.clone()), ((0, 3), one.clone())];
    let scalar_left = vec![((0, 0), one.clone()), ((0, 3), one.clone()), ((1, 0), one.clone()), ((1, 3), one.clone())];
    let pair = induced(&vec, vec_group_algebra_z2(&vec), ground(&vec), vec_matrices(&vec, 2), &scalar_left, &unit_of_matrices);
    out.push(PairFixture { name: "vec-matrices-scalar-left", category: vec.clone(), pair, expected: true });

    let diagonal = vec![((0, 0), one.clone()), ((1, 3), one.clone())];
    let pair = induced(&vec, vec_diagonal(&vec, 2), ground(&vec), vec_matrices(&vec, 2), &diagonal, &unit_of_matrices);
    out.push(PairFixture { name: "vec-matrices-diagonal-left", category: vec.clone(), pair, expected: false });

    let pair = induced(&vec, ground(&vec), vec_diagonal(&vec, 2), vec_matrices(&vec, 2), &unit_of_matrices, &diagonal);
    out.push(PairFixture { name: "vec-matrices-diagonal-right", category: vec, pair, expected: false });

    let z2 = z2_symmetric();
    let g = || group_algebra(&z2, &[0, 1], |_, _| 1);
    let regular = induced(&z2, g(), g(), g(), &identity_map(2), &identity_map(2));
    out.push(PairFixture { name: "z2-regular", category: z2.clone(), pair: regular.clone(), expected: true });
    let corrupted = regular.with_right_action_component(&z2, (1, 1, 0), q().int(-1));
    out.push(PairFixture { name: "z2-regular-corrupted-right", category: z2.clone(), pair: corrupted, expected: false });

    let square = tensor_square_z2(&z2);
    let pair =
        induced(&z2, g(), g(), square, &[((0, 0), one.clone()), ((1, 2), one.clone())], &[((0, 0), one.clone()), ((1, 1), one.clone())]);
    out.push(PairFixture { name: "z2-tensor-square", category: z2, pair, expected: true });

    let svec = super_vector_spaces();
    let clifford = group_algebra(&svec, &[0, 1], |_, _| 1);
    let pair = induced(&svec, ground(&svec), ground(&svec), clifford, &unit_into(0), &unit_into(0));
    out.push(PairFixture { name: "svec-clifford-over-ground", category: svec, pair, expected: true });

    let toric = toric_code();
    let e = || group_algebra(&toric, &[0, 1], |_, _| 1);
    let pair = induced(&toric, e(), e(), e(), &identity_map(2), &identity_map(2));
    out.push(PairFixture { name: "toric-e-regular", category: toric.clone(), pair, expected: true });
    out.push(PairFixture {
        name: "toric-e-over-ground-and-e",
        category: toric.clone(),
        pair: toric_e_over_ground_and_e(&toric),
        expected: true,
    });
    out.push(PairFixture {
        name: "toric-e-m-plain-product",
        category: toric.clone(),
        pair: toric_product(&toric, |_, _| 1),
        expected: true,
    });
    let twisted = toric_product(&toric, |x, y| if (x >> 1) & y & 1 == 1 { -1 } else { 1 });
    out.push(PairFixture { name: "toric-e-m-twisted-product", category: toric, pair: twisted, expected: false });
    out
}

/// `ℚ[ℤ/2 × ℤ/2]` in `Vec_{ℤ/2}`: summand `2i + j` is `(i, j)` of degree `i + j`.
fn tensor_square_z2(cat: &BraidedFusionData) -> AlgebraObject {
    let k = cat.field();
    let mut mult = Vec::new();
    for x in 0..4usize {
        for y in 0..4usize {
            mult.push(((x, y, x ^ y), k.one()));
        }
    }
    AlgebraObject::new(cat, Object::new(vec![0, 1, 1, 0]), &mult, &[(0, k.one())], &[(0, k.int(4))]).expect("Frobenius")
}

/// A named bimodule over a pair with its expected verdict; `right_algebra`
/// acts on the right and `left_algebra` on the left.
#[derive(Debug, Clone)]
pub struct BimoduleFixture {
    pub name: &'static str,
    pub category: BraidedFusionData,
    pub module: BimoduleOverPair,
    pub right_algebra: PairStructure,
    pub left_algebra: PairStructure,
    pub expected: bool,
}

pub fn bimodule_fixtures() -> Vec<BimoduleFixture> {
    let mut out = Vec::new();
    let z2 = z2_symmetric();
    let g = || group_algebra(&z2, &[0, 1], |_, _| 1);
    let regular = induced(&z2, g(), g(), g(), &identity_map(2), &identity_map(2));
    out.push(BimoduleFixture {
        name: "z2-regular",
        category: z2.clone(),
        module: BimoduleOverPair::regular(&regular),
        right_algebra: regular.clone(),
        left_algebra: regular,
        expected: true,
    });

    let toric = toric_code();
    let product = toric_product(&toric, |_, _| 1);
    out.push(BimoduleFixture {
        name: "toric-product-regular",
        category: toric.clone(),
        module: BimoduleOverPair::regular(&product),
        right_algebra: product.clone(),
        left_algebra: product,
        expected: true,
    });

    let (line, over) = toric_m_line(&toric);
    out.push(BimoduleFixture {
        name: "toric-m-line",
        category: toric,
        module: line,
        right_algebra: over.clone(),
        left_algebra: over,
        expected: true,
    });
    out
}

/// The `m`-line `m ⊕ f` between two copies of `⟨e⟩` over `(1, ⟨e⟩)`; the
/// right action carries the sign that compensates the braiding of `m` past `e`.
pub fn toric_m_line(cat: &BraidedFusionData) -> (BimoduleOverPair, PairStructure) {
    let k = cat.field();
    let over = toric_e_over_ground_and_e(cat);
    let (one, minus) = (k.one(), k.int(-1));
    let left = [((0, 0, 0), one.clone()), ((0, 1, 1), one.clone()), ((1, 0, 1), one.clone()), ((1, 1, 0), one.clone())];
    let right = [((0, 0, 0), one.clone()), ((1, 0, 1), one), ((0, 1, 1), minus.clone()), ((1, 1, 0), minus)];
    (BimoduleOverPair::new(cat, Object::new(vec![2, 3]), &over, &over, &left, &right), over)
}
