//! Finite-dimensional algebras given by structure constants, Frobenius
//! structures on them, and the Euler normalization to Δ-separable form.
//!
//! Elements are coordinate vectors in the algebra basis. The comultiplication
//! is never stored: it is derived from the multiplication and the counit
//! through the inverse of the pairing `g_ij = ε(e_i e_j)`.

use std::cmp::Ordering;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::roots::roots_in_field;
use crate::scalars::{Field, Scalar, ScalarError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FrobeniusError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("multiplication is not associative at basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("the stored unit does not act as a two-sided identity on basis element {0}")]
    NotUnital(usize),
    #[error("pairing is degenerate; kernel vector {witness:?}")]
    NotFrobenius { witness: Vec<Scalar> },
    #[error("window element is not invertible")]
    NotSeparable,
    #[error("counit is not symmetric on basis pair ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("algebra is not split semisimple over the field: {0}")]
    NotSplitSemisimple(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coordinate-vector helpers shared by the algebraic modules.
pub mod vectors {
    use crate::scalars::{Field, Scalar};

    pub fn zero(n: usize, field: Field) -> Vec<Scalar> {
        vec![field.zero(); n]
    }

    pub fn unit(n: usize, i: usize, field: Field) -> Vec<Scalar> {
        let mut v = zero(n, field);
        v[i] = field.one();
        v
    }

    pub fn add(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(x: &[Scalar], s: &Scalar) -> Vec<Scalar> {
        x.iter().map(|a| a * s).collect()
    }

    pub fn dot(x: &[Scalar], y: &[Scalar]) -> Scalar {
        let field = x.first().or(y.first()).map_or(Field::RATIONALS, Scalar::field);
        x.iter().zip(y).fold(field.zero(), |acc, (a, b)| if a.is_zero() || b.is_zero() { acc } else { acc + a * b })
    }

    pub fn is_zero(x: &[Scalar]) -> bool {
        x.iter().all(Scalar::is_zero)
    }

    /// Indices of nonzero coordinates.
    pub fn support(x: &[Scalar]) -> Vec<usize> {
        (0..x.len()).filter(|&i| !x[i].is_zero()).collect()
    }
}

use vectors as vec_ops;

/// A unital associative algebra with basis `e_0 … e_{n-1}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Algebra {
    field: Field,
    dim: usize,
    unit: Vec<Scalar>,
    /// `table[(i * dim + j) * dim + k]` is the coefficient of `e_k` in `e_i e_j`.
    table: Vec<Scalar>,
}

impl std::fmt::Debug for Algebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Algebra(dim {} over {})", self.dim, self.field)
    }
}

impl Algebra {
    /// Builds and validates an algebra from sparse products `e_i e_j ∋ c·e_k`.
    pub fn new(
        field: Field,
        dim: usize,
        unit: Vec<Scalar>,
        products: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self, FrobeniusError> {
        if dim == 0 || unit.len() != dim {
            return Err(FrobeniusError::Shape(format!("unit has length {} for dimension {dim}", unit.len())));
        }
        let mut table = vec![field.zero(); dim * dim * dim];
        for (i, j, k, c) in products {
            if i >= dim || j >= dim || k >= dim {
                return Err(FrobeniusError::Shape(format!("product index ({i}, {j}, {k}) out of range")));
            }
            let c = c.lift(field)?;
            let slot = (i * dim + j) * dim + k;
            table[slot] = &table[slot] + &c;
        }
        let unit = unit.into_iter().map(|u| u.lift(field)).collect::<Result<_, _>>()?;
        let alg = Algebra { field, dim, unit, table };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<(), FrobeniusError> {
        let n = self.dim;
        for i in 0..n {
            let e = self.basis(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(FrobeniusError::NotUnital(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.basis_product(i, j);
                for k in 0..n {
                    let ek = self.basis(k);
                    let lhs = self.mul(&ij, &ek);
                    let rhs = self.mul(&self.basis(i), &self.basis_product(j, k));
                    if lhs != rhs {
                        return Err(FrobeniusError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.table[(i * self.dim + j) * self.dim + k]
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        vec_ops::unit(self.dim, i, self.field)
    }

    pub fn zero(&self) -> Vec<Scalar> {
        vec_ops::zero(self.dim, self.field)
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vec<Scalar> {
        let start = (i * self.dim + j) * self.dim;
        self.table[start..start + self.dim].to_vec()
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = self.zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let xy = &x[i] * &y[j];
                for k in 0..n {
                    let c = self.structure_constant(i, j, k);
                    if !c.is_zero() {
                        out[k] = &out[k] + &xy * c;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y ↦ x·y`.
    pub fn left_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(x, &self.basis(j))).collect();
        Matrix::from_columns(&cols, self.dim, self.field)
    }

    /// Matrix of `y ↦ y·x`.
    pub fn right_matrix(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(&self.basis(j), x)).collect();
        Matrix::from_columns(&cols, self.dim, self.field)
    }

    pub fn is_central(&self, x: &[Scalar]) -> bool {
        (0..self.dim).all(|j| {
            let e = self.basis(j);
            self.mul(x, &e) == self.mul(&e, x)
        })
    }

    /// Basis of the center, as the kernel of all commutators with basis elements.
    pub fn center(&self) -> Vec<Vec<Scalar>> {
        let n = self.dim;
        let mut stacked = Matrix::zeros(0, n, self.field);
        for j in 0..n {
            let commutator = &self.right_matrix(&self.basis(j)) - &self.left_matrix(&self.basis(j));
            stacked = stacked.vstack(&commutator).expect("same column count");
        }
        stacked.nullspace()
    }

    pub fn inverse_of(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let inv = self.left_matrix(x).inverse().ok()?;
        let y = inv.apply(&self.unit);
        (self.mul(&y, x) == self.unit).then_some(y)
    }

    pub fn pow(&self, x: &[Scalar], k: usize) -> Vec<Scalar> {
        (0..k).fold(self.unit.clone(), |acc, _| self.mul(&acc, x))
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        Algebra::new(field, 1, vec![field.one()], [(0, 0, 0, field.one())]).expect("ground field is an algebra")
    }

    /// Group algebra of ℤ/n with basis `g^0 … g^{n-1}`.
    pub fn cyclic_group(n: usize, field: Field) -> Self {
        let products = (0..n).flat_map(|i| (0..n).map(move |j| (i, j, (i + j) % n, field.one())));
        Algebra::new(field, n, vec_ops::unit(n, 0, field), products).expect("group algebra is an algebra")
    }

    /// `n×n` matrices with basis `E_{ab}` at index `a·n + b`.
    pub fn matrices(n: usize, field: Field) -> Self {
        let mut products = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    products.push((a * n + b, b * n + c, a * n + c, field.one()));
                }
            }
        }
        let mut unit = vec_ops::zero(n * n, field);
        for a in 0..n {
            unit[a * n + a] = field.one();
        }
        Algebra::new(field, n * n, unit, products).expect("matrix algebra is an algebra")
    }

    /// `K[x]/(x^k)` with basis `1, x, …, x^{k-1}`.
    pub fn truncated_polynomials(k: usize, field: Field) -> Self {
        let products = (0..k).flat_map(|i| (0..k).filter(move |j| i + j < k).map(move |j| (i, j, i + j, field.one())));
        Algebra::new(field, k, vec_ops::unit(k, 0, field), products).expect("truncated polynomials form an algebra")
    }

    /// Direct product; the basis is the concatenation of the factor bases.
    pub fn product(factors: &[Algebra]) -> Result<Self, FrobeniusError> {
        let field = factors.first().ok_or_else(|| FrobeniusError::Shape("empty product".into()))?.field;
        let dim: usize = factors.iter().map(|a| a.dim).sum();
        let mut unit = Vec::with_capacity(dim);
        let mut products = Vec::new();
        let mut offset = 0;
        for f in factors {
            if f.field != field {
                return Err(ScalarError::MixedFields { left: field.tag(), right: f.field.tag() }.into());
            }
            unit.extend(f.unit.iter().cloned());
            for i in 0..f.dim {
                for j in 0..f.dim {
                    for k in 0..f.dim {
                        let c = f.structure_constant(i, j, k);
                        if !c.is_zero() {
                            products.push((offset + i, offset + j, offset + k, c.clone()));
                        }
                    }
                }
            }
            offset += f.dim;
        }
        Algebra::new(field, dim, unit, products)
    }
}

/// An algebra with a nondegenerate counit, plus an optional recorded Euler
/// element `ψ` (central, invertible).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FrobeniusStructure {
    algebra: Algebra,
    counit: Vec<Scalar>,
    psi: Option<Vec<Scalar>>,
    pairing: Matrix,
    inverse_pairing: Matrix,
}

impl std::fmt::Debug for FrobeniusStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FrobeniusStructure(dim {} over {}, counit {:?}", self.dim(), self.field(), self.counit)?;
        if let Some(p) = &self.psi {
            write!(f, ", psi {p:?}")?;
        }
        write!(f, ")")
    }
}

/// Verdicts of [`check_frobenius`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FrobeniusReport {
    pub frobenius: bool,
    pub symmetric: bool,
    pub delta_separable: bool,
    pub separable: bool,
}

impl FrobeniusStructure {
    pub fn new(algebra: Algebra, counit: Vec<Scalar>) -> Result<Self, FrobeniusError> {
        if counit.len() != algebra.dim {
            return Err(FrobeniusError::Shape("counit length differs from algebra dimension".into()));
        }
        let counit: Vec<Scalar> = counit.into_iter().map(|c| c.lift(algebra.field)).collect::<Result<_, _>>()?;
        let n = algebra.dim;
        let pairing = Matrix::from_fn(n, n, algebra.field, |i, j| vec_ops::dot(&counit, &algebra.basis_product(i, j)));
        let inverse_pairing = pairing
            .inverse()
            .map_err(|_| FrobeniusError::NotFrobenius { witness: pairing.nullspace().into_iter().next().unwrap_or_default() })?;
        Ok(FrobeniusStructure { algebra, counit, psi: None, pairing, inverse_pairing })
    }

    /// Records an Euler element; it must be central and invertible.
    pub fn with_psi(mut self, psi: Vec<Scalar>) -> Result<Self, FrobeniusError> {
        let psi: Vec<Scalar> = psi.into_iter().map(|c| c.lift(self.field())).collect::<Result<_, _>>()?;
        if psi.len() != self.dim() || !self.algebra.is_central(&psi) || self.algebra.inverse_of(&psi).is_none() {
            return Err(FrobeniusError::Shape("Euler element must be central and invertible".into()));
        }
        self.psi = Some(psi);
        Ok(self)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn counit(&self) -> &[Scalar] {
        &self.counit
    }

    pub fn recorded_psi(&self) -> Option<&[Scalar]> {
        self.psi.as_deref()
    }

    /// The Euler element, defaulting to the unit when none is recorded.
    pub fn psi(&self) -> Vec<Scalar> {
        self.psi.clone().unwrap_or_else(|| self.algebra.unit.clone())
    }

    pub fn psi_inverse(&self) -> Vec<Scalar> {
        self.algebra.inverse_of(&self.psi()).expect("recorded Euler element is invertible")
    }

    pub fn epsilon(&self, x: &[Scalar]) -> Scalar {
        vec_ops::dot(&self.counit, x)
    }

    pub fn pairing(&self) -> &Matrix {
        &self.pairing
    }

    pub fn inverse_pairing(&self) -> &Matrix {
        &self.inverse_pairing
    }

    /// `e^j` with `ε(e_i e^j) = δ_ij`.
    pub fn dual_basis(&self, j: usize) -> Vec<Scalar> {
        self.inverse_pairing.col(j)
    }

    /// Coefficients `D[b][c]` of `Δ(x) = Σ D[b][c] e_b ⊗ e_c`.
    pub fn comultiply(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, n, self.field());
        for i in 0..n {
            let left = self.algebra.mul(x, &self.algebra.basis(i));
            let right = self.dual_basis(i);
            for b in vec_ops::support(&left) {
                for c in vec_ops::support(&right) {
                    out.add_at(b, c, &(&left[b] * &right[c]));
                }
            }
        }
        out
    }

    /// `ω = μ∘Δ(1) = Σ_i e_i e^i`.
    pub fn window(&self) -> Vec<Scalar> {
        (0..self.dim())
            .fold(self.algebra.zero(), |acc, i| vec_ops::add(&acc, &self.algebra.mul(&self.algebra.basis(i), &self.dual_basis(i))))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairing == self.pairing.transpose()
    }

    pub fn is_delta_separable(&self) -> bool {
        self.window() == self.algebra.unit
    }

    pub fn is_separable(&self) -> bool {
        self.algebra.inverse_of(&self.window()).is_some()
    }
}

/// Checks the Frobenius condition and reports symmetry and both separability notions.
pub fn check_frobenius(algebra: &Algebra, counit: &[Scalar]) -> Result<FrobeniusReport, FrobeniusError> {
    let f = FrobeniusStructure::new(algebra.clone(), counit.to_vec())?;
    Ok(FrobeniusReport {
        frobenius: true,
        symmetric: f.is_symmetric(),
        delta_separable: f.is_delta_separable(),
        separable: f.is_separable(),
    })
}

/// `ω = μ∘Δ(1)`, asserted central.
pub fn window_element(f: &FrobeniusStructure) -> Vec<Scalar> {
    let w = f.window();
    assert!(f.algebra.is_central(&w), "window element must be central");
    w
}

/// Γ: keeps `μ`, replaces the counit by `ε(−·ω)` and records `ψ = ω`.
pub fn euler_gamma(f: &FrobeniusStructure) -> Result<FrobeniusStructure, FrobeniusError> {
    if !f.is_symmetric() {
        let n = f.dim();
        let (i, j) = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| f.pairing.get(i, j) != f.pairing.get(j, i))
            .expect("asymmetric pairing has a witness");
        return Err(FrobeniusError::NotSymmetric(i, j));
    }
    let omega = window_element(f);
    if f.algebra.inverse_of(&omega).is_none() {
        return Err(FrobeniusError::NotSeparable);
    }
    let alg = &f.algebra;
    let counit: Vec<Scalar> = (0..f.dim()).map(|i| f.epsilon(&alg.mul(&alg.basis(i), &omega))).collect();
    FrobeniusStructure::new(alg.clone(), counit)?.with_psi(omega)
}

/// Brings a separable symmetric structure into Δ-separable form. Δ-separable
/// input keeps its recorded Euler element; anything else goes through Γ.
pub fn euler_normalize(f: &FrobeniusStructure) -> Result<FrobeniusStructure, FrobeniusError> {
    if f.is_delta_separable() && f.is_symmetric() {
        return Ok(f.clone());
    }
    euler_gamma(f)
}

/// Central idempotents that are primitive among central idempotents, ordered
/// by lexicographically smallest support.
pub fn central_idempotents(alg: &Algebra) -> Result<Vec<Vec<Scalar>>, FrobeniusError> {
    let mut idems = vec![alg.unit.clone()];
    for z in alg.center() {
        let mut next = Vec::new();
        for e in idems {
            let y = alg.mul(&e, &z);
            let minpoly = minimal_polynomial(alg, &y, &e);
            let roots = roots_in_field(&minpoly);
            if roots.len() + 1 != minpoly.len() {
                return Err(FrobeniusError::NotSplitSemisimple(format!(
                    "a central element has minimal polynomial of degree {} with {} distinct roots in {}",
                    minpoly.len() - 1,
                    roots.len(),
                    alg.field
                )));
            }
            if roots.len() == 1 {
                next.push(e);
                continue;
            }
            for (k, r) in roots.iter().enumerate() {
                let mut p = e.clone();
                for (l, s) in roots.iter().enumerate() {
                    if l == k {
                        continue;
                    }
                    let factor = vec_ops::scale(&vec_ops::sub(&y, &vec_ops::scale(&e, s)), &(r - s).inv()?);
                    p = alg.mul(&p, &factor);
                }
                next.push(p);
            }
        }
        idems = next;
    }
    idems.sort_by(|a, b| compare_support(a, b));
    Ok(idems)
}

fn compare_support(a: &[Scalar], b: &[Scalar]) -> Ordering {
    vec_ops::support(a).cmp(&vec_ops::support(b)).then_with(|| {
        let sa: Vec<String> = a.iter().map(Scalar::to_string).collect();
        let sb: Vec<String> = b.iter().map(Scalar::to_string).collect();
        sa.cmp(&sb)
    })
}

/// Monic minimal polynomial of `y` in the unital subalgebra with unit `e`,
/// coefficients lowest degree first.
fn minimal_polynomial(alg: &Algebra, y: &[Scalar], e: &[Scalar]) -> Vec<Scalar> {
    let field = alg.field;
    let mut powers = vec![e.to_vec()];
    loop {
        let next = alg.mul(powers.last().expect("nonempty"), y);
        let basis = Matrix::from_columns(&powers, alg.dim, field);
        if let Ok(sol) = basis.solve(&Matrix::column(&next, field)) {
            let mut coeffs: Vec<Scalar> = sol.col(0).into_iter().map(|c| -c).collect();
            coeffs.push(field.one());
            return coeffs;
        }
        powers.push(next);
    }
}

/// One block `eA ≅ Mat_n` with a chosen simple module.
#[derive(Debug, Clone)]
pub struct Block {
    pub idempotent: Vec<Scalar>,
    pub size: usize,
    /// Columns spanning the simple module as a left ideal inside `A`.
    pub module_basis: Matrix,
    /// Left action of each basis element of `A` on the simple module.
    pub action: Vec<Matrix>,
}

/// Block decomposition of a split semisimple algebra.
#[derive(Debug, Clone)]
pub struct SimpleDecomposition {
    pub blocks: Vec<Block>,
}

impl SimpleDecomposition {
    pub fn simple_module_dims(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.size).collect()
    }

    pub fn central_idempotents(&self) -> Vec<Vec<Scalar>> {
        self.blocks.iter().map(|b| b.idempotent.clone()).collect()
    }
}

/// Central idempotents plus one simple module per block.
pub fn decompose(alg: &Algebra) -> Result<SimpleDecomposition, FrobeniusError> {
    let blocks = central_idempotents(alg)?.into_iter().map(|e| simple_module(alg, e)).collect::<Result<Vec<_>, _>>()?;
    Ok(SimpleDecomposition { blocks })
}

fn simple_module(alg: &Algebra, e: Vec<Scalar>) -> Result<Block, FrobeniusError> {
    let field = alg.field;
    let block_span = alg.left_matrix(&e).column_basis();
    let m = block_span.cols();
    let n = (1..=m).find(|k| k * k >= m).unwrap_or(1);
    if n * n != m {
        return Err(FrobeniusError::NotSplitSemisimple(format!("block of dimension {m} is not a full matrix algebra")));
    }
    let block_elems: Vec<Vec<Scalar>> = (0..m).map(|c| block_span.col(c)).collect();
    let generator = if n == 1 { Some(e.clone()) } else { find_minimal_left_ideal_generator(alg, &e, &block_span, &block_elems, n) };
    let w =
        generator.ok_or_else(|| FrobeniusError::NotSplitSemisimple(format!("no minimal left ideal found in a block of dimension {m}")))?;
    let span: Vec<Vec<Scalar>> = block_elems.iter().map(|b| alg.mul(b, &w)).collect();
    let module_basis = Matrix::from_columns(&span, alg.dim, field).column_basis();
    if module_basis.cols() != n {
        return Err(FrobeniusError::NotSplitSemisimple("left ideal has the wrong dimension".into()));
    }
    let action = (0..alg.dim)
        .map(|i| {
            let image = &alg.left_matrix(&alg.basis(i)) * &module_basis;
            module_basis.solve(&image).map_err(|_| FrobeniusError::NotSplitSemisimple("ideal not stable".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Block { idempotent: e, size: n, module_basis, action })
}

/// Looks for `x` in the block with an eigenvalue whose eigenspace under left
/// multiplication has dimension `n`; any vector there generates a simple left ideal.
fn find_minimal_left_ideal_generator(
    alg: &Algebra,
    e: &[Scalar],
    block_span: &Matrix,
    block_elems: &[Vec<Scalar>],
    n: usize,
) -> Option<Vec<Scalar>> {
    let field = alg.field;
    let mut candidates: Vec<Vec<Scalar>> = block_elems.to_vec();
    for (i, a) in block_elems.iter().enumerate() {
        for (j, b) in block_elems.iter().enumerate() {
            if i < j {
                candidates.push(vec_ops::add(a, &vec_ops::scale(b, &field.int(2 + j as i64))));
            }
        }
    }
    for x in candidates {
        let restricted = block_span.solve(&(&alg.left_matrix(&x) * block_span)).ok()?;
        let minpoly = minimal_polynomial(alg, &x, e);
        for r in roots_in_field(&minpoly) {
            let shifted = &restricted - &Matrix::scalar(restricted.rows(), &r);
            let kernel = shifted.nullspace();
            if kernel.len() == n {
                return Some(block_span.apply(&kernel[0]));
            }
        }
    }
    None
}

/// Central `s` with `s² = ω`, built blockwise with the nonnegative root per block.
pub fn window_sqrt(f: &FrobeniusStructure) -> Result<Vec<Scalar>, FrobeniusError> {
    let omega = window_element(f);
    if f.algebra.inverse_of(&omega).is_none() {
        return Err(FrobeniusError::NotSeparable);
    }
    if omega == f.algebra.unit {
        return Ok(omega);
    }
    let alg = &f.algebra;
    let mut s = alg.zero();
    for e in central_idempotents(alg)? {
        let block = alg.mul(&omega, &e);
        let k =
            block_scalar(&block, &e).ok_or_else(|| FrobeniusError::NotSplitSemisimple("window element is not scalar on a block".into()))?;
        s = vec_ops::add(&s, &vec_ops::scale(&e, &k.sqrt()?));
    }
    Ok(s)
}

/// The scalar `k` with `x = k·e`, if any.
pub(crate) fn block_scalar(x: &[Scalar], e: &[Scalar]) -> Option<Scalar> {
    let i = vec_ops::support(e).into_iter().next()?;
    let k = &x[i] / &e[i];
    (vec_ops::scale(e, &k) == x).then_some(k)
}

/// Frobenius algebras used across the crate and its tests.
pub mod examples {
    use super::*;

    /// `ℚ_λ`: the ground field with `ε(1) = λ`.
    pub fn ground_with_counit(lambda: Scalar) -> FrobeniusStructure {
        let field = lambda.field();
        FrobeniusStructure::new(Algebra::ground(field), vec![lambda]).expect("nonzero counit")
    }

    /// `K[ℤ/n]` with `ε(g^k) = δ_{k0}`.
    pub fn cyclic_group(n: usize, field: Field) -> FrobeniusStructure {
        FrobeniusStructure::new(Algebra::cyclic_group(n, field), vec_ops::unit(n, 0, field))
            .expect("group algebra pairing is nondegenerate")
    }

    /// `Mat_n` with `ε = κ·tr`.
    pub fn matrices_with_trace(n: usize, kappa: Scalar) -> FrobeniusStructure {
        let field = kappa.field();
        let mut counit = vec_ops::zero(n * n, field);
        for a in 0..n {
            counit[a * n + a] = kappa.clone();
        }
        FrobeniusStructure::new(Algebra::matrices(n, field), counit).expect("trace form is nondegenerate")
    }

    /// `K[x]/(x²)` with `ε(1) = 0`, `ε(x) = 1`.
    pub fn dual_numbers(field: Field) -> FrobeniusStructure {
        FrobeniusStructure::new(Algebra::truncated_polynomials(2, field), vec![field.zero(), field.one()])
            .expect("dual numbers are Frobenius")
    }

    /// `K^k` with counit values `λ_i` on the minimal idempotents.
    pub fn diagonal(lambdas: &[Scalar]) -> FrobeniusStructure {
        let field = lambdas[0].field();
        let factors: Vec<Algebra> = lambdas.iter().map(|_| Algebra::ground(field)).collect();
        FrobeniusStructure::new(Algebra::product(&factors).expect("same field"), lambdas.to_vec()).expect("nonzero counit values")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::RATIONALS
    }

    /// Independent oracle: `ω = Σ_{ij} (g^{-1})_{ji} e_i e_j` straight from the
    /// structure constants, without the dual-basis helper.
    fn window_oracle(f: &FrobeniusStructure) -> Vec<Scalar> {
        let n = f.dim();
        let ginv = f.pairing().inverse().unwrap();
        let mut w = vec_ops::zero(n, f.field());
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = f.algebra().structure_constant(i, j, k);
                    w[k] = &w[k] + ginv.get(j, i) * c;
                }
            }
        }
        w
    }

    #[test]
    fn group_algebra_report() {
        let f = cyclic_group(2, q());
        let r = check_frobenius(f.algebra(), f.counit()).unwrap();
        assert_eq!(r, FrobeniusReport { frobenius: true, symmetric: true, delta_separable: false, separable: true });
        assert_eq!(window_element(&f), vec![q().int(2), q().zero()]);
        assert_eq!(window_oracle(&f), window_element(&f));
    }

    #[test]
    fn dual_numbers_report() {
        let f = dual_numbers(q());
        let r = check_frobenius(f.algebra(), f.counit()).unwrap();
        assert!(r.frobenius && r.symmetric && !r.separable && !r.delta_separable);
        assert_eq!(window_element(&f), vec![q().zero(), q().int(2)]);
        assert_eq!(euler_gamma(&f), Err(FrobeniusError::NotSeparable));
    }

    #[test]
    fn matrix_algebra_report() {
        let f = matrices_with_trace(2, q().one());
        let r = check_frobenius(f.algebra(), f.counit()).unwrap();
        assert!(r.symmetric && r.separable && !r.delta_separable);
        assert_eq!(window_element(&f), vec_ops::scale(f.algebra().unit(), &q().int(2)));
        assert_eq!(window_oracle(&f), window_element(&f));
    }

    #[test]
    fn degenerate_counit_is_rejected() {
        let err = check_frobenius(&Algebra::truncated_polynomials(2, q()), &[q().one(), q().zero()]).unwrap_err();
        match err {
            FrobeniusError::NotFrobenius { witness } => assert_eq!(witness, vec![q().zero(), q().one()]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn ground_window_is_inverse_counit() {
        let f = ground_with_counit(q().int(3));
        assert_eq!(window_element(&f), vec![q().ratio(1, 3)]);
        let g = euler_gamma(&f).unwrap();
        assert_eq!(g.counit(), &[q().one()]);
        assert_eq!(g.psi(), vec![q().ratio(1, 3)]);
    }

    #[test]
    fn gamma_of_group_algebra() {
        let g = euler_gamma(&cyclic_group(2, q())).unwrap();
        assert!(g.is_delta_separable() && g.is_symmetric());
        assert_eq!(g.psi(), vec![q().int(2), q().zero()]);
        assert_eq!(g.counit(), &[q().int(2), q().zero()]);
        // Δ'(1) = (e⊗e + g⊗g)/2
        let d = g.comultiply(g.algebra().unit());
        assert_eq!(d.get(0, 0), &q().ratio(1, 2));
        assert_eq!(d.get(1, 1), &q().ratio(1, 2));
        assert!(d.get(0, 1).is_zero());
        let twice = euler_gamma(&g).unwrap();
        assert_eq!(twice.counit(), g.counit());
        assert_eq!(twice.psi(), g.algebra().unit().to_vec());
    }

    #[test]
    fn gamma_of_matrix_algebra() {
        let g = euler_gamma(&matrices_with_trace(2, q().one())).unwrap();
        assert_eq!(g.psi(), vec_ops::scale(g.algebra().unit(), &q().int(2)));
        assert_eq!(g.epsilon(&g.algebra().basis(0)), q().int(2));
    }

    #[test]
    fn window_roots() {
        assert!(matches!(window_sqrt(&cyclic_group(2, q())), Err(FrobeniusError::Scalar(_))));
        let r2 = Field::new(2).unwrap();
        let s = window_sqrt(&cyclic_group(2, r2)).unwrap();
        assert_eq!(s, vec![r2.root(), r2.zero()]);
        let f = diagonal(&[q().ratio(1, 4), q().ratio(1, 9)]);
        assert_eq!(window_element(&f), vec![q().int(4), q().int(9)]);
        assert_eq!(window_sqrt(&f).unwrap(), vec![q().int(2), q().int(3)]);
        let delta_sep = euler_gamma(&cyclic_group(3, q())).unwrap();
        assert_eq!(window_sqrt(&delta_sep).unwrap(), delta_sep.algebra().unit().to_vec());
    }

    #[test]
    fn idempotents_of_group_algebras() {
        let e = central_idempotents(&Algebra::cyclic_group(2, q())).unwrap();
        assert_eq!(e, vec![vec![q().ratio(1, 2), q().ratio(-1, 2)], vec![q().ratio(1, 2), q().ratio(1, 2)]]);
        // ℚ[ℤ/3] = ℚ × ℚ(ω): not split over ℚ
        assert!(matches!(central_idempotents(&Algebra::cyclic_group(3, q())), Err(FrobeniusError::NotSplitSemisimple(_))));
        assert!(matches!(central_idempotents(&Algebra::truncated_polynomials(2, q())), Err(FrobeniusError::NotSplitSemisimple(_))));
        let e4 = central_idempotents(&Algebra::cyclic_group(4, Field::RATIONALS));
        assert!(e4.is_err(), "ℚ[ℤ/4] contains ℚ(i)");
    }

    #[test]
    fn decomposition_of_matrix_product() {
        let alg = Algebra::product(&[Algebra::matrices(2, q()), Algebra::ground(q())]).unwrap();
        let d = decompose(&alg).unwrap();
        let mut dims = d.simple_module_dims();
        dims.sort();
        assert_eq!(dims, vec![1, 2]);
        let total: Scalar = d.central_idempotents().into_iter().reduce(|a, b| vec_ops::add(&a, &b)).unwrap().into_iter().sum();
        assert_eq!(total, q().int(3));
        for b in &d.blocks {
            // the action is a representation
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    let prod = alg.basis_product(i, j);
                    let lhs = &b.action[i] * &b.action[j];
                    let rhs = (0..alg.dim()).fold(Matrix::zeros(b.size, b.size, q()), |acc, k| &acc + &b.action[k].scale(&prod[k]));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    fn arb_structure() -> impl Strategy<Value = FrobeniusStructure> {
        prop_oneof![
            (1i64..6, 1i64..6).prop_map(|(a, b)| ground_with_counit(Field::RATIONALS.ratio(a, b))),
            (2usize..4).prop_map(|n| cyclic_group(n, Field::RATIONALS)),
            (1i64..4).prop_map(|k| matrices_with_trace(2, Field::RATIONALS.int(k))),
            Just(dual_numbers(Field::RATIONALS)),
            (1i64..5, 1i64..5).prop_map(|(a, b)| diagonal(&[Field::RATIONALS.int(a), Field::RATIONALS.ratio(1, b)])),
        ]
    }

    /// `(id⊗μ)(Δ⊗id) = Δμ = (μ⊗id)(id⊗Δ)` on basis pairs, as 4-index tensors.
    fn frobenius_compatible(f: &FrobeniusStructure) -> bool {
        let alg = f.algebra();
        let n = f.dim();
        for i in 0..n {
            for j in 0..n {
                let center = f.comultiply(&alg.basis_product(i, j));
                let left = {
                    let d = f.comultiply(&alg.basis(i));
                    Matrix::from_fn(n, n, f.field(), |b, c| {
                        (0..n).fold(f.field().zero(), |acc, c2| acc + d.get(b, c2) * alg.structure_constant(c2, j, c))
                    })
                };
                let right = {
                    let d = f.comultiply(&alg.basis(j));
                    Matrix::from_fn(n, n, f.field(), |b, c| {
                        (0..n).fold(f.field().zero(), |acc, b2| acc + alg.structure_constant(i, b2, b) * d.get(b2, c))
                    })
                };
                if left != center || right != center {
                    return false;
                }
            }
        }
        true
    }

    proptest! {
        #[test]
        fn frobenius_compatibility_holds(f in arb_structure()) {
            prop_assert!(frobenius_compatible(&f));
        }

        #[test]
        fn gamma_output_is_delta_separable(f in arb_structure()) {
            if let Ok(g) = euler_gamma(&f) {
                prop_assert!(g.is_delta_separable() && g.is_symmetric());
                prop_assert!(frobenius_compatible(&g));
                let again = euler_gamma(&g).unwrap();
                prop_assert_eq!(again.counit(), g.counit());
                prop_assert_eq!(again.psi(), g.algebra().unit().to_vec());
            }
        }

        #[test]
        fn symmetry_matches_brute_force(f in arb_structure()) {
            let n = f.dim();
            let brute = (0..n).all(|i| (0..n).all(|j| {
                f.epsilon(&f.algebra().basis_product(i, j)) == f.epsilon(&f.algebra().basis_product(j, i))
            }));
            prop_assert_eq!(brute, f.is_symmetric());
        }

        #[test]
        fn window_sqrt_squares_to_window(f in arb_structure()) {
            if let Ok(s) = window_sqrt(&f) {
                prop_assert_eq!(f.algebra().mul(&s, &s), window_element(&f));
            }
        }
    }
}
