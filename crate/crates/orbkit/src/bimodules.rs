//! Bimodules between Frobenius algebras: relative products by idempotent
//! splitting, Euler-twisted adjunctions, traces, and the splitting of an
//! orbifold datum as `X^∨ ⊗ X`.
//!
//! Conventions: a bimodule `X` from `A` to `B` carries a left `B`-action and a
//! right `A`-action. Tensor indices follow [`Matrix::kron`]: the basis vector
//! `x_i ⊗ y_j` of `X ⊗ Y` sits at `i · dim Y + j`. Right actions compose
//! contravariantly, `R_{aa'} = R_{a'} R_a`.

use thiserror::Error;

use crate::frobenius::{euler_normalize, vectors as vec_ops, Algebra, FrobeniusError, FrobeniusStructure};
use crate::linalg::Matrix;
use crate::scalars::{Field, Scalar};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BimoduleError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("module axiom fails: {0}")]
    NotAModule(String),
    #[error("matrix does not intertwine the {0} actions")]
    NotABimoduleMap(&'static str),
    #[error("right algebra of the first factor differs from the left algebra of the second")]
    MiddleAlgebraMismatch,
    #[error("middle algebra is not separable")]
    NotSeparable,
    #[error("middle algebra is not symmetric")]
    NotSymmetric,
    #[error("not an orbifold datum: {0}")]
    NotAnOrbifoldDatum(String),
    #[error("no isomorphism found: {0}")]
    NoIsomorphismFound(String),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
}

/// Matrix of `Σ_i x_i M_i`.
fn combine(mats: &[Matrix], x: &[Scalar], size: usize, field: Field) -> Matrix {
    mats.iter().zip(x).fold(Matrix::zeros(size, size, field), |acc, (m, c)| if c.is_zero() { acc } else { &acc + &m.scale(c) })
}

/// A `B`-`A` bimodule, that is a 1-morphism from `A` (right) to `B` (left).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Bimodule {
    left: FrobeniusStructure,
    right: FrobeniusStructure,
    dim: usize,
    /// `lact[i]` is the action of the `i`-th basis element of the left algebra.
    lact: Vec<Matrix>,
    /// `ract[i]` is the action of the `i`-th basis element of the right algebra.
    ract: Vec<Matrix>,
}

impl std::fmt::Debug for Bimodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Bimodule(dim {}, left dim {}, right dim {})", self.dim, self.left.dim(), self.right.dim())
    }
}

impl Bimodule {
    pub fn new(
        left: FrobeniusStructure,
        right: FrobeniusStructure,
        dim: usize,
        lact: Vec<Matrix>,
        ract: Vec<Matrix>,
    ) -> Result<Self, BimoduleError> {
        if lact.len() != left.dim() || ract.len() != right.dim() {
            return Err(BimoduleError::Shape("one action matrix per basis element is required".into()));
        }
        if lact.iter().chain(&ract).any(|m| m.rows() != dim || m.cols() != dim) {
            return Err(BimoduleError::Shape(format!("action matrices must be {dim}x{dim}")));
        }
        let x = Bimodule { left, right, dim, lact, ract };
        x.validate()?;
        Ok(x)
    }

    fn validate(&self) -> Result<(), BimoduleError> {
        let (b, a) = (self.left.algebra(), self.right.algebra());
        if !self.left_action(b.unit()).is_identity() {
            return Err(BimoduleError::NotAModule("left unit does not act as identity".into()));
        }
        if !self.right_action(a.unit()).is_identity() {
            return Err(BimoduleError::NotAModule("right unit does not act as identity".into()));
        }
        for i in 0..b.dim() {
            for j in 0..b.dim() {
                if &self.lact[i] * &self.lact[j] != self.left_action(&b.basis_product(i, j)) {
                    return Err(BimoduleError::NotAModule(format!("left action on basis pair ({i}, {j})")));
                }
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                if &self.ract[j] * &self.ract[i] != self.right_action(&a.basis_product(i, j)) {
                    return Err(BimoduleError::NotAModule(format!("right action on basis pair ({i}, {j})")));
                }
            }
        }
        for (i, l) in self.lact.iter().enumerate() {
            for (j, r) in self.ract.iter().enumerate() {
                if l * r != r * l {
                    return Err(BimoduleError::NotAModule(format!("actions of ({i}, {j}) do not commute")));
                }
            }
        }
        Ok(())
    }

    /// `A` as an `A`-`A` bimodule.
    pub fn regular(f: &FrobeniusStructure) -> Self {
        let alg = f.algebra();
        let lact = (0..alg.dim()).map(|i| alg.left_matrix(&alg.basis(i))).collect();
        let ract = (0..alg.dim()).map(|i| alg.right_matrix(&alg.basis(i))).collect();
        Bimodule::new(f.clone(), f.clone(), alg.dim(), lact, ract).expect("regular bimodule")
    }

    /// A left module over `left`, viewed as a bimodule with the ground field on the right.
    pub fn left_module(left: FrobeniusStructure, right: FrobeniusStructure, lact: Vec<Matrix>) -> Result<Self, BimoduleError> {
        if right.dim() != 1 {
            return Err(BimoduleError::Shape("right algebra must be one-dimensional".into()));
        }
        let dim = lact.first().map_or(0, Matrix::rows);
        let unit = right.algebra().unit()[0].clone();
        let ract = vec![Matrix::scalar(dim, &unit.inv().map_err(FrobeniusError::from)?)];
        Bimodule::new(left, right, dim, lact, ract)
    }

    pub fn left(&self) -> &FrobeniusStructure {
        &self.left
    }

    pub fn right(&self) -> &FrobeniusStructure {
        &self.right
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.left.field()
    }

    pub fn left_basis_actions(&self) -> &[Matrix] {
        &self.lact
    }

    pub fn right_basis_actions(&self) -> &[Matrix] {
        &self.ract
    }

    pub fn left_action(&self, b: &[Scalar]) -> Matrix {
        combine(&self.lact, b, self.dim, self.field())
    }

    pub fn right_action(&self, a: &[Scalar]) -> Matrix {
        combine(&self.ract, a, self.dim, self.field())
    }

    /// Same actions, with the Frobenius structures replaced (algebras must agree).
    pub fn with_structures(&self, left: FrobeniusStructure, right: FrobeniusStructure) -> Result<Self, BimoduleError> {
        if left.algebra() != self.left.algebra() || right.algebra() != self.right.algebra() {
            return Err(BimoduleError::MiddleAlgebraMismatch);
        }
        Ok(Bimodule { left, right, ..self.clone() })
    }

    /// The dual space with transposed actions, an `A`-`B` bimodule.
    pub fn dual(&self) -> Bimodule {
        Bimodule {
            left: self.right.clone(),
            right: self.left.clone(),
            dim: self.dim,
            lact: self.ract.iter().map(Matrix::transpose).collect(),
            ract: self.lact.iter().map(Matrix::transpose).collect(),
        }
    }

    /// Matrix of `B ⊗ X → X`, columns indexed `i · dim X + k`.
    fn left_action_map(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = self.lact.iter().flat_map(|l| (0..self.dim).map(move |k| l.col(k))).collect();
        Matrix::from_columns(&cols, self.dim, self.field())
    }

    /// Matrix of `X ⊗ A → X`, columns indexed `k · dim A + i`.
    fn right_action_map(&self) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).flat_map(|k| self.ract.iter().map(move |r| r.col(k))).collect();
        Matrix::from_columns(&cols, self.dim, self.field())
    }
}

/// A matrix intertwining both actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BimoduleMap {
    pub src: Bimodule,
    pub dst: Bimodule,
    pub matrix: Matrix,
}

impl BimoduleMap {
    pub fn new(src: &Bimodule, dst: &Bimodule, matrix: Matrix) -> Result<Self, BimoduleError> {
        check_intertwines(src, dst, &matrix)?;
        Ok(BimoduleMap { src: src.clone(), dst: dst.clone(), matrix })
    }

    pub fn identity(x: &Bimodule) -> Self {
        BimoduleMap { src: x.clone(), dst: x.clone(), matrix: Matrix::identity(x.dim, x.field()) }
    }
}

fn check_intertwines(src: &Bimodule, dst: &Bimodule, matrix: &Matrix) -> Result<(), BimoduleError> {
    if matrix.rows() != dst.dim || matrix.cols() != src.dim {
        return Err(BimoduleError::Shape("map has the wrong shape".into()));
    }
    if src.left.algebra() != dst.left.algebra() || src.right.algebra() != dst.right.algebra() {
        return Err(BimoduleError::MiddleAlgebraMismatch);
    }
    if src.lact.iter().zip(&dst.lact).any(|(s, d)| matrix * s != d * matrix) {
        return Err(BimoduleError::NotABimoduleMap("left"));
    }
    if src.ract.iter().zip(&dst.ract).any(|(s, d)| matrix * s != d * matrix) {
        return Err(BimoduleError::NotABimoduleMap("right"));
    }
    Ok(())
}

/// Splitting `p = ι ∘ π` of an idempotent on a plain tensor product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitIdempotent {
    pub p: Matrix,
    pub image_dim: usize,
    pub pi: Matrix,
    pub iota: Matrix,
}

impl SplitIdempotent {
    /// Splits through the pivot columns of `p`; deterministic.
    pub fn of(p: Matrix) -> Result<Self, BimoduleError> {
        let iota = p.column_basis();
        let pi = iota.solve(&p).map_err(|_| BimoduleError::Shape("idempotent does not factor".into()))?;
        Ok(SplitIdempotent { image_dim: iota.cols(), p, pi, iota })
    }

    pub fn is_idempotent(&self) -> bool {
        &self.p * &self.p == self.p
    }

    pub fn is_split(&self) -> bool {
        (&self.pi * &self.iota).is_identity() && &self.iota * &self.pi == self.p
    }
}

/// Separability idempotent `Σ_i e_i ⊗ ω^{-1} e^i` of a separable symmetric algebra,
/// as coefficient pairs over basis indices.
fn separability_idempotent(b: &FrobeniusStructure) -> Result<Matrix, BimoduleError> {
    if !b.is_symmetric() {
        return Err(BimoduleError::NotSymmetric);
    }
    let alg = b.algebra();
    let omega_inv = alg.inverse_of(&b.window()).ok_or(BimoduleError::NotSeparable)?;
    let n = b.dim();
    let mut out = Matrix::zeros(n, n, b.field());
    for i in 0..n {
        let partner = alg.mul(&omega_inv, &b.dual_basis(i));
        for j in vec_ops::support(&partner) {
            out.add_at(i, j, &partner[j]);
        }
    }
    Ok(out)
}

/// `X ⊗_B Y` as the image of `p = Σ R^X_{e_i} ⊗ L^Y_{ω^{-1} e^i}`.
pub fn relative_tensor(x: &Bimodule, y: &Bimodule) -> Result<(Bimodule, SplitIdempotent), BimoduleError> {
    if x.right.algebra() != y.left.algebra() {
        return Err(BimoduleError::MiddleAlgebraMismatch);
    }
    let field = x.field();
    let sep = separability_idempotent(&x.right)?;
    let size = x.dim * y.dim;
    let mut p = Matrix::zeros(size, size, field);
    for i in 0..sep.rows() {
        for j in 0..sep.cols() {
            let c = sep.get(i, j);
            if !c.is_zero() {
                p = &p + &x.ract[i].kron(&y.lact[j]).scale(c);
            }
        }
    }
    let split = SplitIdempotent::of(p)?;
    let id_x = Matrix::identity(x.dim, field);
    let id_y = Matrix::identity(y.dim, field);
    let induce = |m: Matrix| &(&split.pi * &m) * &split.iota;
    let lact = x.lact.iter().map(|l| induce(l.kron(&id_y))).collect();
    let ract = y.ract.iter().map(|r| induce(id_x.kron(r))).collect();
    let z = Bimodule::new(x.left.clone(), y.right.clone(), split.image_dim, lact, ract)?;
    Ok((z, split))
}

/// Adjunction 2-morphisms for `X: A → B`, with `A`, `B` in Euler-normalized form.
///
/// Tensor layouts: `ev` is `dim A × (dim X)²` on `X^∨ ⊗ X`; `coev` is
/// `(dim X)² × dim B` into `X ⊗ X^∨`; `ev_tilde` is `dim B × (dim X)²` on
/// `X ⊗ X^∨`; `coev_tilde` is `(dim X)² × dim A` into `X^∨ ⊗ X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjunctionData {
    pub bimodule: Bimodule,
    pub dual: Bimodule,
    pub ev: Matrix,
    pub coev: Matrix,
    pub ev_tilde: Matrix,
    pub coev_tilde: Matrix,
}

/// Adjunction data after Euler-normalizing both algebras.
pub fn adjoint(x: &Bimodule) -> Result<AdjunctionData, BimoduleError> {
    let normalized = x.with_structures(euler_normalize(&x.left)?, euler_normalize(&x.right)?)?;
    Ok(adjunction_with_structures(&normalized))
}

/// Adjunction data using the bimodule's own Frobenius structures and Euler elements.
pub fn adjunction_with_structures(x: &Bimodule) -> AdjunctionData {
    let (b, a) = (&x.left, &x.right);
    let (balg, aalg) = (b.algebra(), a.algebra());
    let field = x.field();
    let m = x.dim;
    let (psi_b, psi_b_inv) = (b.psi(), b.psi_inverse());
    let (psi_a, psi_a_inv) = (a.psi(), a.psi_inverse());

    // ev(x^k ⊗ x_j) = ψ_A^{-1} Σ_i x^k(ψ_B x_j e_i) e^i
    let mut ev = Matrix::zeros(aalg.dim(), m * m, field);
    let lpsi_b = x.left_action(&psi_b);
    for i in 0..aalg.dim() {
        let coeffs = &lpsi_b * &x.ract[i];
        let target = aalg.mul(&psi_a_inv, &a.dual_basis(i));
        for k in 0..m {
            for j in 0..m {
                let c = coeffs.get(k, j);
                if !c.is_zero() {
                    for r in vec_ops::support(&target) {
                        ev.add_at(r, k * m + j, &(c * &target[r]));
                    }
                }
            }
        }
    }

    // coev(b) = Σ_k ψ_B^{-1} b x_k ψ_A ⊗ x^k
    let rpsi_a = x.right_action(&psi_a);
    let coev_cols: Vec<Vec<Scalar>> = (0..balg.dim())
        .map(|bi| {
            let op = &x.left_action(&balg.mul(&psi_b_inv, &balg.basis(bi))) * &rpsi_a;
            (0..m).flat_map(|j| (0..m).map(move |k| (j, k))).map(|(j, k)| op.get(j, k).clone()).collect()
        })
        .collect();
    let coev = Matrix::from_columns(&coev_cols, m * m, field);

    // ẽv(x_j ⊗ x^k) = ψ_B^{-1} Σ_i e_i x^k(e^i x_j ψ_A)
    let mut ev_tilde = Matrix::zeros(balg.dim(), m * m, field);
    for i in 0..balg.dim() {
        let coeffs = &x.left_action(&b.dual_basis(i)) * &rpsi_a;
        let target = balg.mul(&psi_b_inv, &balg.basis(i));
        for j in 0..m {
            for k in 0..m {
                let c = coeffs.get(k, j);
                if !c.is_zero() {
                    for r in vec_ops::support(&target) {
                        ev_tilde.add_at(r, j * m + k, &(c * &target[r]));
                    }
                }
            }
        }
    }

    // c̃oev(a) = Σ_k x^k ⊗ ψ_B x_k ψ_A^{-1} a
    let coev_tilde_cols: Vec<Vec<Scalar>> = (0..aalg.dim())
        .map(|ai| {
            let op = &lpsi_b * &x.right_action(&aalg.mul(&psi_a_inv, &aalg.basis(ai)));
            (0..m).flat_map(|k| (0..m).map(move |j| (k, j))).map(|(k, j)| op.get(j, k).clone()).collect()
        })
        .collect();
    let coev_tilde = Matrix::from_columns(&coev_tilde_cols, m * m, field);

    AdjunctionData { bimodule: x.clone(), dual: x.dual(), ev, coev, ev_tilde, coev_tilde }
}

/// Which Zorro composite failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum ZorroComposite {
    /// `X → X ⊗ X^∨ ⊗ X → X ⊗ A → X` through `coev` and `ev`.
    BimoduleThroughEv,
    /// `X^∨ → X^∨ ⊗ X ⊗ X^∨ → A ⊗ X^∨ → X^∨` through `coev` and `ev`.
    DualThroughEv,
    /// `X → X ⊗ X^∨ ⊗ X → B ⊗ X → X` through `c̃oev` and `ẽv`.
    BimoduleThroughEvTilde,
    /// `X^∨ → X^∨ ⊗ X ⊗ X^∨ → X^∨ ⊗ B → X^∨` through `c̃oev` and `ẽv`.
    DualThroughEvTilde,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZorroVerdict {
    Holds,
    Fails { composite: ZorroComposite, matrix: Matrix },
}

impl ZorroVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, ZorroVerdict::Holds)
    }
}

impl AdjunctionData {
    fn field(&self) -> Field {
        self.bimodule.field()
    }

    fn coev_unit(&self) -> Matrix {
        Matrix::column(&self.coev.apply(self.bimodule.left.algebra().unit()), self.field())
    }

    fn coev_tilde_unit(&self) -> Matrix {
        Matrix::column(&self.coev_tilde.apply(self.bimodule.right.algebra().unit()), self.field())
    }

    /// The four Zorro composites, in the order of [`ZorroComposite`].
    pub fn zorro_composites(&self) -> [(ZorroComposite, Matrix); 4] {
        let x = &self.bimodule;
        let dual = &self.dual;
        let id = Matrix::identity(x.dim, self.field());
        let first = &(&x.right_action_map() * &id.kron(&self.ev)) * &self.coev_unit().kron(&id);
        let second = &(&dual.left_action_map() * &self.ev.kron(&id)) * &id.kron(&self.coev_unit());
        let third = &(&x.left_action_map() * &self.ev_tilde.kron(&id)) * &id.kron(&self.coev_tilde_unit());
        let fourth = &(&dual.right_action_map() * &id.kron(&self.ev_tilde)) * &self.coev_tilde_unit().kron(&id);
        [
            (ZorroComposite::BimoduleThroughEv, first),
            (ZorroComposite::DualThroughEv, second),
            (ZorroComposite::BimoduleThroughEvTilde, third),
            (ZorroComposite::DualThroughEvTilde, fourth),
        ]
    }

    pub fn zorro(&self) -> ZorroVerdict {
        self.zorro_composites()
            .into_iter()
            .find(|(_, m)| !m.is_identity())
            .map_or(ZorroVerdict::Holds, |(composite, matrix)| ZorroVerdict::Fails { composite, matrix })
    }

    /// `ev ∘ (1 ⊗ χ) ∘ c̃oev(1)`, an element of the right algebra.
    pub fn left_trace(&self, chi: &Matrix) -> Vec<Scalar> {
        let id = Matrix::identity(self.bimodule.dim, self.field());
        (&(&self.ev * &id.kron(chi)) * &self.coev_tilde_unit()).col(0)
    }

    /// `ẽv ∘ (χ ⊗ 1) ∘ coev(1)`, an element of the left algebra.
    pub fn right_trace(&self, chi: &Matrix) -> Vec<Scalar> {
        let id = Matrix::identity(self.bimodule.dim, self.field());
        (&(&self.ev_tilde * &chi.kron(&id)) * &self.coev_unit()).col(0)
    }
}

/// Runs the four Zorro composites for the Euler-normalized adjunction of `x`.
pub fn zorro_check(x: &Bimodule) -> Result<ZorroVerdict, BimoduleError> {
    Ok(adjoint(x)?.zorro())
}

/// Traces of an endomorphism and the quantum dimensions of its bimodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceReport {
    /// Lives in the center of the right algebra.
    pub tr_l: Vec<Scalar>,
    /// Lives in the center of the left algebra.
    pub tr_r: Vec<Scalar>,
    pub dim_l: Vec<Scalar>,
    pub dim_r: Vec<Scalar>,
}

pub fn trace_and_qdim(x: &Bimodule, chi: &Matrix) -> Result<TraceReport, BimoduleError> {
    check_intertwines(x, x, chi)?;
    let adj = adjoint(x)?;
    let id = Matrix::identity(x.dim, x.field());
    Ok(TraceReport { tr_l: adj.left_trace(chi), tr_r: adj.right_trace(chi), dim_l: adj.left_trace(&id), dim_r: adj.right_trace(&id) })
}

/// The two mates `ξ^∨: Y^∨ → X^∨` of `ξ: X → Y`, built from the
/// `(ev, coev)` and the `(ẽv, c̃oev)` adjunctions respectively.
pub fn dual_map_pair(xi: &BimoduleMap) -> Result<(Matrix, Matrix), BimoduleError> {
    let adj_x = adjoint(&xi.src)?;
    let adj_y = adjoint(&xi.dst)?;
    let field = xi.src.field();
    let id_xd = Matrix::identity(xi.src.dim, field);
    let id_yd = Matrix::identity(xi.dst.dim, field);
    let via_ev = &(&(&adj_x.dual.left_action_map() * &adj_y.ev.kron(&id_xd)) * &id_yd.kron(&xi.matrix.kron(&id_xd)))
        * &id_yd.kron(&adj_x.coev_unit());
    let via_ev_tilde = &(&(&adj_x.dual.right_action_map() * &id_xd.kron(&adj_y.ev_tilde)) * &id_xd.kron(&xi.matrix.kron(&id_yd)))
        * &adj_x.coev_tilde_unit().kron(&id_yd);
    Ok((via_ev, via_ev_tilde))
}

/// Comparison `(X ⊗_B Y) ⊗_C Z → X ⊗_B (Y ⊗_C Z)` assembled from the splittings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociativityCheck {
    pub left_dim: usize,
    pub right_dim: usize,
    pub comparison: Matrix,
    pub invertible: bool,
    pub intertwining: bool,
}

pub fn associativity_comparison(x: &Bimodule, y: &Bimodule, z: &Bimodule) -> Result<AssociativityCheck, BimoduleError> {
    let field = x.field();
    let (xy, split_xy) = relative_tensor(x, y)?;
    let (xy_z, split_1) = relative_tensor(&xy, z)?;
    let (yz, split_yz) = relative_tensor(y, z)?;
    let (x_yz, split_2) = relative_tensor(x, &yz)?;
    let id_x = Matrix::identity(x.dim, field);
    let id_z = Matrix::identity(z.dim, field);
    let comparison = &(&(&split_2.pi * &id_x.kron(&split_yz.pi)) * &split_xy.iota.kron(&id_z)) * &split_1.iota;
    let invertible = comparison.is_square() && comparison.inverse().is_ok();
    let intertwining = check_intertwines(&xy_z, &x_yz, &comparison).is_ok();
    Ok(AssociativityCheck { left_dim: xy_z.dim, right_dim: x_yz.dim, comparison, invertible, intertwining })
}

/// An algebra `𝒜` over a base `A`, presented through a unital algebra map `f: A → 𝒜`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldDatumInput {
    pub base: FrobeniusStructure,
    pub datum: FrobeniusStructure,
    /// `dim 𝒜 × dim A`; column `i` is `f(e_i)`.
    pub inclusion: Matrix,
}

impl OrbifoldDatumInput {
    /// `𝒜` over the ground field, with `f(1) = 1`.
    pub fn over_ground(datum: FrobeniusStructure) -> Self {
        let field = datum.field();
        let base = FrobeniusStructure::new(Algebra::ground(field), vec![field.one()]).expect("ground field");
        let inclusion = Matrix::column(datum.algebra().unit(), field);
        OrbifoldDatumInput { base, datum, inclusion }
    }

    /// The identity datum `A` over itself.
    pub fn identity(base: FrobeniusStructure) -> Self {
        let inclusion = Matrix::identity(base.dim(), base.field());
        OrbifoldDatumInput { datum: base.clone(), base, inclusion }
    }

    /// `ε_rel(y) = Σ_i ε_𝒜(y f(e_i)) e^i`, the counit relative to the base.
    pub fn relative_counit(&self, y: &[Scalar]) -> Vec<Scalar> {
        let alg = self.datum.algebra();
        (0..self.base.dim()).fold(self.base.algebra().zero(), |acc, i| {
            let c = self.datum.epsilon(&alg.mul(y, &self.inclusion.col(i)));
            vec_ops::add(&acc, &vec_ops::scale(&self.base.dual_basis(i), &c))
        })
    }
}

/// The splitting `X^∨ ⊗_𝒜 X ≅ 𝒜` of an orbifold datum, with the structure maps
/// of both sides so callers can re-verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbifoldSplitting {
    pub bimodule: Bimodule,
    pub composite: Bimodule,
    pub split: SplitIdempotent,
    pub iso: BimoduleMap,
    /// `W ⊗ W → W` on the plain tensor of the composite.
    pub composite_mul: Matrix,
    pub composite_unit: Matrix,
    pub composite_comul: Matrix,
    pub composite_counit: Matrix,
    /// Comultiplication compatibility is only meaningful over a one-dimensional base.
    pub comultiplication_checked: bool,
}

/// Splits `𝒜` as `X^∨ ⊗_𝒜 X` for `X = 𝒜` viewed as an `𝒜`-`A` bimodule.
///
/// Uses the plain pivotal structure (trivial Euler elements). The
/// condensation condition `ẽv ∘ coev = id_𝒜` is checked first.
pub fn split_orbifold_datum(input: &OrbifoldDatumInput) -> Result<OrbifoldSplitting, BimoduleError> {
    let datum = &input.datum;
    let base = &input.base;
    let dalg = datum.algebra();
    let balg = base.algebra();
    let field = datum.field();
    let n = datum.dim();
    check_algebra_map(input)?;

    let lact = (0..n).map(|i| dalg.left_matrix(&dalg.basis(i))).collect();
    let ract = (0..balg.dim()).map(|i| dalg.right_matrix(&input.inclusion.col(i))).collect();
    let plain_datum = FrobeniusStructure::new(dalg.clone(), datum.counit().to_vec())?;
    let plain_base = FrobeniusStructure::new(balg.clone(), base.counit().to_vec())?;
    let x = Bimodule::new(plain_datum, plain_base, n, lact, ract)?;
    let adj = adjunction_with_structures(&x);

    let condensation = &adj.ev_tilde * &adj.coev;
    if !condensation.is_identity() {
        return Err(BimoduleError::NotAnOrbifoldDatum(format!(
            "ẽv ∘ coev has trace {} on a {}-dimensional algebra",
            condensation.trace(),
            n
        )));
    }

    let (w, split) = relative_tensor(&adj.dual, &x)?;
    let id = Matrix::identity(n, field);
    let iota2 = split.iota.kron(&split.iota);

    // μ_W: X^∨ ⊗ (X ⊗ X^∨) ⊗ X → X^∨ ⊗ 𝒜 ⊗ X → X^∨ ⊗ X → W
    let middle = id.kron(&adj.ev_tilde.kron(&id));
    let act = id.kron(&x.left_action_map());
    let composite_mul = &(&(&split.pi * &act) * &middle) * &iota2;
    let composite_unit = &split.pi * &adj.coev_tilde;
    // Δ_W: X^∨ ⊗ X → X^∨ ⊗ (X ⊗ X^∨) ⊗ X → W ⊗ W
    let coev_one = Matrix::column(&adj.coev.apply(dalg.unit()), field);
    let insert = id.kron(&coev_one.kron(&id));
    let composite_comul = &(&split.pi.kron(&split.pi) * &insert) * &split.iota;
    let composite_counit = &adj.ev * &split.iota;

    // Φ_0(φ ⊗ x) = Σ_i φ(x e_i) e^i, corrected by the inverse image of the unit.
    let mut phi0 = Matrix::zeros(n, n * n, field);
    for i in 0..n {
        let coeffs = dalg.right_matrix(&dalg.basis(i));
        let target = datum.dual_basis(i);
        for k in 0..n {
            for j in 0..n {
                let c = coeffs.get(k, j);
                if !c.is_zero() {
                    for r in vec_ops::support(&target) {
                        phi0.add_at(r, k * n + j, &(c * &target[r]));
                    }
                }
            }
        }
    }
    let phi0 = &phi0 * &split.iota;
    let unit_image = (&phi0 * &composite_unit).apply(balg.unit());
    let correction =
        dalg.inverse_of(&unit_image).ok_or_else(|| BimoduleError::NoIsomorphismFound("unit maps to a non-invertible element".into()))?;
    let phi = &dalg.left_matrix(&correction) * &phi0;

    let datum_as_bimodule = Bimodule::new(
        w.left.clone(),
        w.right.clone(),
        n,
        (0..balg.dim()).map(|i| dalg.left_matrix(&input.inclusion.col(i))).collect(),
        (0..balg.dim()).map(|i| dalg.right_matrix(&input.inclusion.col(i))).collect(),
    )?;
    let iso = BimoduleMap::new(&w, &datum_as_bimodule, phi.clone())
        .map_err(|e| BimoduleError::NoIsomorphismFound(format!("candidate is not a bimodule map: {e}")))?;
    if phi.inverse().is_err() {
        return Err(BimoduleError::NoIsomorphismFound("candidate is singular".into()));
    }

    // Re-substitution of every structure map through Φ.
    let datum_mul = Matrix::from_fn(n, n * n, field, |k, c| dalg.structure_constant(c / n, c % n, k).clone());
    if &phi * &composite_mul != &datum_mul * &phi.kron(&phi) {
        return Err(BimoduleError::NoIsomorphismFound("multiplication is not preserved".into()));
    }
    if &phi * &composite_unit != input.inclusion {
        return Err(BimoduleError::NoIsomorphismFound("unit is not preserved".into()));
    }
    let relative_counit =
        Matrix::from_columns(&(0..n).map(|i| input.relative_counit(&dalg.basis(i))).collect::<Vec<_>>(), balg.dim(), field);
    if &relative_counit * &phi != composite_counit {
        return Err(BimoduleError::NoIsomorphismFound("counit is not preserved".into()));
    }
    let comultiplication_checked = balg.dim() == 1;
    if comultiplication_checked {
        let datum_comul =
            Matrix::from_columns(&(0..n).map(|i| datum.comultiply(&dalg.basis(i)).entries().to_vec()).collect::<Vec<_>>(), n * n, field);
        if &phi.kron(&phi) * &composite_comul != &datum_comul * &phi {
            return Err(BimoduleError::NoIsomorphismFound("comultiplication is not preserved".into()));
        }
    }

    Ok(OrbifoldSplitting {
        bimodule: x,
        composite: w,
        split,
        iso,
        composite_mul,
        composite_unit,
        composite_comul,
        composite_counit,
        comultiplication_checked,
    })
}

fn check_algebra_map(input: &OrbifoldDatumInput) -> Result<(), BimoduleError> {
    let (dalg, balg) = (input.datum.algebra(), input.base.algebra());
    let f = &input.inclusion;
    if f.rows() != dalg.dim() || f.cols() != balg.dim() {
        return Err(BimoduleError::Shape("inclusion has the wrong shape".into()));
    }
    if f.apply(balg.unit()) != dalg.unit() {
        return Err(BimoduleError::NotAnOrbifoldDatum("inclusion is not unital".into()));
    }
    for i in 0..balg.dim() {
        for j in 0..balg.dim() {
            if f.apply(&balg.basis_product(i, j)) != dalg.mul(&f.col(i), &f.col(j)) {
                return Err(BimoduleError::NotAnOrbifoldDatum("inclusion is not multiplicative".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frobenius::euler_gamma;
    use crate::frobenius::examples::*;

    fn q() -> Field {
        Field::RATIONALS
    }

    fn ground() -> FrobeniusStructure {
        ground_with_counit(q().one())
    }

    fn one_by_one(s: Scalar) -> Matrix {
        Matrix::scalar(1, &s)
    }

    /// ℚ as a (ℚ×ℚ)-ℚ bimodule through the first projection.
    fn first_projection() -> Bimodule {
        Bimodule::left_module(diagonal(&[q().one(), q().one()]), ground(), vec![one_by_one(q().one()), one_by_one(q().zero())]).unwrap()
    }

    /// ℚ² as a Mat₂-ℚ bimodule.
    fn column_vectors() -> Bimodule {
        let f = matrices_with_trace(2, q().one());
        let lact =
            (0..4).map(|i| Matrix::from_fn(2, 2, q(), |r, c| if (r, c) == (i / 2, i % 2) { q().one() } else { q().zero() })).collect();
        Bimodule::left_module(f, ground(), lact).unwrap()
    }

    /// Brute-force rank oracle: count independent columns greedily.
    fn rank_oracle(m: &Matrix) -> usize {
        let mut kept: Vec<Vec<Scalar>> = Vec::new();
        for c in 0..m.cols() {
            let mut trial = kept.clone();
            trial.push(m.col(c));
            if Matrix::from_columns(&trial, m.rows(), m.field()).nullspace().is_empty() {
                kept = trial;
            }
        }
        kept.len()
    }

    #[test]
    fn regular_relative_product_is_the_algebra() {
        let f = euler_gamma(&cyclic_group(2, q())).unwrap();
        let a = Bimodule::regular(&f);
        let (z, split) = relative_tensor(&a, &a).unwrap();
        assert_eq!(z.dim(), 2);
        assert!(split.is_idempotent() && split.is_split());
        // μ is balanced, so it factors through the image and is invertible there.
        let alg = f.algebra();
        let mu = Matrix::from_fn(2, 4, q(), |k, c| alg.structure_constant(c / 2, c % 2, k).clone());
        assert_eq!(&(&mu * &split.iota) * &split.pi, mu);
        let induced = &mu * &split.iota;
        assert!(induced.inverse().is_ok());
        assert!(BimoduleMap::new(&z, &a, induced).is_ok());
    }

    #[test]
    fn projection_bimodule_composite_is_one_dimensional() {
        let x = first_projection();
        let (z, split) = relative_tensor(&x.dual(), &x).unwrap();
        assert_eq!(z.dim(), 1);
        assert_eq!(rank_oracle(&split.p), 1);
    }

    #[test]
    fn group_algebra_product_has_dimension_two() {
        let f = euler_gamma(&cyclic_group(2, q())).unwrap();
        let a = Bimodule::regular(&f);
        let (_, split) = relative_tensor(&a, &a).unwrap();
        assert_eq!(rank_oracle(&split.p), 2);
        assert_eq!(split.image_dim, 2);
    }

    #[test]
    fn mismatched_middle_algebra_is_refused() {
        let a = Bimodule::regular(&cyclic_group(2, q()));
        let b = Bimodule::regular(&matrices_with_trace(2, q().one()));
        assert_eq!(relative_tensor(&a, &b).unwrap_err(), BimoduleError::MiddleAlgebraMismatch);
        let dual_numbers = Bimodule::regular(&dual_numbers(q()));
        assert_eq!(relative_tensor(&dual_numbers, &dual_numbers).unwrap_err(), BimoduleError::NotSeparable);
    }

    #[test]
    fn regular_bimodule_has_unit_dimensions() {
        for f in [cyclic_group(2, q()), matrices_with_trace(2, q().one()), ground_with_counit(q().int(5))] {
            let a = Bimodule::regular(&f);
            let report = trace_and_qdim(&a, &Matrix::identity(a.dim(), q())).unwrap();
            assert_eq!(report.dim_l, f.algebra().unit());
            assert_eq!(report.dim_r, f.algebra().unit());
            assert!(zorro_check(&a).unwrap().holds());
        }
    }

    #[test]
    fn euler_dimension_scales_by_lambda_squared() {
        for lambda in [q().int(3), q().ratio(-2, 7)] {
            let x = Bimodule::left_module(ground_with_counit(lambda.clone()), ground(), vec![one_by_one(q().one())]).unwrap();
            let report = trace_and_qdim(&x, &Matrix::identity(1, q())).unwrap();
            assert_eq!(report.dim_r, vec![&lambda * &lambda]);
            assert_eq!(report.dim_l, vec![(&lambda * &lambda).inv().unwrap()]);
            assert!(zorro_check(&x).unwrap().holds());
        }
    }

    #[test]
    fn column_vectors_dimensions() {
        let x = column_vectors();
        let report = trace_and_qdim(&x, &Matrix::identity(2, q())).unwrap();
        // plain trace of the identity is 2; the Euler elements ψ = 2 of Γ(Mat₂)
        // contribute ψ² on one side and ψ^{-2} on the other.
        assert_eq!(report.dim_l, vec![q().int(8)]);
        let unit = x.left().algebra().unit().to_vec();
        assert_eq!(report.dim_r, vec_ops::scale(&unit, &q().ratio(1, 8)));
        assert!(zorro_check(&x).unwrap().holds());
    }

    #[test]
    fn nilpotent_endomorphism_has_zero_traces() {
        // ℚ² over (ℚ[x]/x² acting by a nilpotent, ℚ) would be inseparable, so use
        // the trivial bimodule ℚ² over (ℚ, ℚ) with a nilpotent endomorphism.
        let x = Bimodule::left_module(ground(), ground(), vec![Matrix::identity(2, q())]).unwrap();
        let nil = Matrix::from_rows(vec![vec![q().zero(), q().one()], vec![q().zero(), q().zero()]], q()).unwrap();
        let report = trace_and_qdim(&x, &nil).unwrap();
        assert!(vec_ops::is_zero(&report.tr_l) && vec_ops::is_zero(&report.tr_r));
        assert_eq!(report.dim_l, vec![q().int(2)]);
    }

    #[test]
    fn corrupted_coevaluation_fails_zorro() {
        let x = Bimodule::regular(&euler_gamma(&cyclic_group(2, q())).unwrap());
        let mut adj = adjoint(&x).unwrap();
        adj.coev = adj.coev.scale(&q().int(2));
        match adj.zorro() {
            ZorroVerdict::Fails { composite, matrix } => {
                assert_eq!(composite, ZorroComposite::BimoduleThroughEv);
                assert_eq!(matrix, Matrix::identity(2, q()).scale(&q().int(2)));
            }
            ZorroVerdict::Holds => panic!("scaled coevaluation must break the Zorro identity"),
        }
    }

    #[test]
    fn adjunction_maps_are_bimodule_maps() {
        let x = first_projection();
        let adj = adjoint(&x).unwrap();
        let (b, a) = (x.left().algebra(), x.right().algebra());
        let m = x.dim();
        let id = Matrix::identity(m, q());
        for i in 0..a.dim() {
            let ea = a.basis(i);
            // ev(a·φ ⊗ x) = a·ev(φ ⊗ x) and ev(φ ⊗ x·a) = ev(φ ⊗ x)·a
            let left_in = adj.dual.left_action(&ea).kron(&id);
            assert_eq!(&adj.ev * &left_in, &a.left_matrix(&ea) * &adj.ev);
            let right_in = id.kron(&x.right_action(&ea));
            assert_eq!(&adj.ev * &right_in, &a.right_matrix(&ea) * &adj.ev);
        }
        for i in 0..b.dim() {
            let eb = b.basis(i);
            // ev is B-balanced
            assert_eq!(&adj.ev * &adj.dual.right_action(&eb).kron(&id), &adj.ev * &id.kron(&x.left_action(&eb)));
            // ẽv(b·x ⊗ φ) = b·ẽv(x ⊗ φ)
            assert_eq!(&adj.ev_tilde * &x.left_action(&eb).kron(&id), &b.left_matrix(&eb) * &adj.ev_tilde);
        }
    }

    #[test]
    fn double_dual_is_canonically_the_bimodule() {
        let x = column_vectors();
        let dd = x.dual().dual();
        assert!(BimoduleMap::new(&x, &dd, Matrix::identity(x.dim(), q())).is_ok());
    }

    #[test]
    fn mates_agree_for_a_nontrivial_map() {
        let f = euler_gamma(&cyclic_group(2, q())).unwrap();
        let a = Bimodule::regular(&f);
        // right multiplication by g is an A-A bimodule map since A is commutative
        let xi = BimoduleMap::new(&a, &a, f.algebra().right_matrix(&f.algebra().basis(1))).unwrap();
        let (via_ev, via_ev_tilde) = dual_map_pair(&xi).unwrap();
        assert_eq!(via_ev, via_ev_tilde);
        assert_eq!(via_ev, xi.matrix.transpose());
    }

    #[test]
    fn associativity_of_projection_products() {
        let x = first_projection();
        let check = associativity_comparison(&x, &x.dual(), &x).unwrap();
        assert_eq!(check.left_dim, check.right_dim);
        assert!(check.invertible && check.intertwining);
    }

    #[test]
    fn relative_product_dimensions_multiply() {
        let lambda = q().int(3);
        let mu = q().ratio(1, 2);
        let x = Bimodule::left_module(ground_with_counit(lambda.clone()), ground(), vec![one_by_one(q().one())]).unwrap();
        let y =
            Bimodule::new(ground(), ground_with_counit(mu.clone()), 1, vec![one_by_one(q().one())], vec![one_by_one(q().one())]).unwrap();
        let (z, _) = relative_tensor(&x, &y).unwrap();
        let id = Matrix::identity(1, q());
        let dx = trace_and_qdim(&x, &id).unwrap().dim_r[0].clone();
        let dy = trace_and_qdim(&y, &id).unwrap().dim_r[0].clone();
        assert_eq!(trace_and_qdim(&z, &id).unwrap().dim_r, vec![dx * dy]);
    }

    #[test]
    fn splitting_of_group_algebra_datum() {
        let datum = euler_gamma(&cyclic_group(2, q())).unwrap();
        let s = split_orbifold_datum(&OrbifoldDatumInput::over_ground(datum)).unwrap();
        assert_eq!(s.composite.dim(), 2);
        assert!(s.comultiplication_checked);
        assert!(s.iso.matrix.inverse().is_ok());
    }

    #[test]
    fn splitting_of_matrix_datum() {
        let datum = euler_gamma(&matrices_with_trace(2, q().one())).unwrap();
        let s = split_orbifold_datum(&OrbifoldDatumInput::over_ground(datum)).unwrap();
        assert_eq!(s.composite.dim(), 4);
        assert!(s.split.is_idempotent() && s.split.is_split());
    }

    #[test]
    fn identity_datum_splits_through_the_regular_bimodule() {
        let s = split_orbifold_datum(&OrbifoldDatumInput::identity(ground())).unwrap();
        assert_eq!(s.bimodule, Bimodule::regular(&ground()));
        assert!(s.iso.matrix.is_identity());
        let base = euler_gamma(&cyclic_group(2, q())).unwrap();
        let s = split_orbifold_datum(&OrbifoldDatumInput::identity(base)).unwrap();
        assert!(!s.comultiplication_checked);
        assert!(s.iso.matrix.inverse().is_ok());
    }

    #[test]
    fn dual_numbers_are_not_a_datum() {
        let err = split_orbifold_datum(&OrbifoldDatumInput::over_ground(dual_numbers(q()))).unwrap_err();
        assert!(matches!(err, BimoduleError::NotAnOrbifoldDatum(_)));
    }
}
