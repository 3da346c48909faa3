//! Versioned JSON forms of every fixture kind and their conversions to the
//! library types.
//!
//! Every top-level file carries `schema_version`; a mismatch is refused, never
//! migrated. Fields are tagged by the square-free `d` of `ℚ(√d)`, with `1` for
//! ℚ. References to other fixtures are plain names that the caller resolves
//! before calling `build`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bimodules::{Bimodule, BimoduleError, OrbifoldDatumInput};
use crate::frobenius::{Algebra, FrobeniusError, FrobeniusStructure};
use crate::fusioncat::{CYCategoryData, EulerDatum, FusionData, FusionError, ModuleCategoryData, Simple};
use crate::linalg::Matrix;
use crate::rtdefects::algebra::{binary_components, unit_components};
use crate::rtdefects::{
    AlgebraObject, BimoduleOverPair, BraidedFusionData, ExchangeCrossings, Object, PairStructure, ProductComponent, RtDefectError,
};
use crate::scalars::{Field, Scalar, ScalarError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchemaError {
    #[error("schema version {found} differs from the supported version {SCHEMA_VERSION}")]
    VersionMismatch { found: u32 },
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Braided(#[from] RtDefectError),
}

pub fn expect_version(found: u32) -> Result<(), SchemaError> {
    if found == SCHEMA_VERSION {
        Ok(())
    } else {
        Err(SchemaError::VersionMismatch { found })
    }
}

fn field_of(tag: u32) -> Result<Field, SchemaError> {
    Ok(Field::new(i64::from(tag))?)
}

fn lift_all(values: &[Scalar], field: Field) -> Result<Vec<Scalar>, SchemaError> {
    Ok(values.iter().map(|v| v.lift(field)).collect::<Result<_, _>>()?)
}

/// `(i, j, k, c)`: `e_i e_j` has coefficient `c` on `e_k`.
pub type ProductEntry = (usize, usize, usize, Scalar);
/// `(basis element, row, column, value)` of an action matrix.
pub type ActionEntry = (usize, usize, usize, Scalar);

/// A Frobenius algebra by structure constants.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub schema_version: u32,
    pub field: u32,
    pub dim: usize,
    pub unit: Vec<Scalar>,
    pub mul: Vec<ProductEntry>,
    pub counit: Vec<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Scalar>>,
}

impl AlgebraFile {
    /// The algebra and its counit, without requiring the pairing to be nondegenerate.
    pub fn algebra_and_counit(&self) -> Result<(Algebra, Vec<Scalar>), SchemaError> {
        expect_version(self.schema_version)?;
        let field = field_of(self.field)?;
        let algebra = Algebra::new(field, self.dim, self.unit.clone(), self.mul.iter().cloned())?;
        let counit = self.counit.iter().map(|c| c.lift(field)).collect::<Result<Vec<_>, _>>()?;
        Ok((algebra, counit))
    }

    pub fn build(&self) -> Result<FrobeniusStructure, SchemaError> {
        let (algebra, counit) = self.algebra_and_counit()?;
        let f = FrobeniusStructure::new(algebra, counit)?;
        Ok(match &self.psi {
            Some(psi) => f.with_psi(psi.clone())?,
            None => f,
        })
    }

    pub fn from_structure(f: &FrobeniusStructure) -> Self {
        let alg = f.algebra();
        let n = alg.dim();
        let mut mul = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let c = alg.structure_constant(i, j, k);
                    if !c.is_zero() {
                        mul.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        AlgebraFile {
            schema_version: SCHEMA_VERSION,
            field: f.field().tag(),
            dim: n,
            unit: alg.unit().to_vec(),
            mul,
            counit: f.counit().to_vec(),
            psi: f.recorded_psi().map(<[Scalar]>::to_vec),
        }
    }
}

fn action_matrices(entries: &[ActionEntry], count: usize, dim: usize, field: Field) -> Result<Vec<Matrix>, SchemaError> {
    let mut mats = vec![Matrix::zeros(dim, dim, field); count];
    for (i, r, c, v) in entries {
        if *i >= count || *r >= dim || *c >= dim {
            return Err(SchemaError::Shape(format!("action entry ({i}, {r}, {c}) out of range")));
        }
        mats[*i].set(*r, *c, v.lift(field)?);
    }
    Ok(mats)
}

/// A bimodule with a left action of `left` and a right action of `right`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BimoduleFile {
    pub schema_version: u32,
    pub left: String,
    pub right: String,
    pub dim: usize,
    pub lact: Vec<ActionEntry>,
    pub ract: Vec<ActionEntry>,
}

impl BimoduleFile {
    pub fn build(&self, left: FrobeniusStructure, right: FrobeniusStructure) -> Result<Bimodule, SchemaError> {
        expect_version(self.schema_version)?;
        let field = left.field();
        let lact = action_matrices(&self.lact, left.dim(), self.dim, field)?;
        let ract = action_matrices(&self.ract, right.dim(), self.dim, field)?;
        Ok(Bimodule::new(left, right, self.dim, lact, ract)?)
    }
}

/// An algebra `𝒜` over a base algebra through a unital map; without a base,
/// `𝒜` sits over the ground field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbifoldDatumFile {
    pub schema_version: u32,
    pub datum: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<String>,
    /// `(row, column, value)` of the `dim 𝒜 × dim A` inclusion matrix.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inclusion: Vec<(usize, usize, Scalar)>,
}

impl OrbifoldDatumFile {
    pub fn build(&self, datum: FrobeniusStructure, base: Option<FrobeniusStructure>) -> Result<OrbifoldDatumInput, SchemaError> {
        expect_version(self.schema_version)?;
        let Some(base) = base else {
            return Ok(OrbifoldDatumInput::over_ground(datum));
        };
        let field = datum.field();
        let mut inclusion = Matrix::zeros(datum.dim(), base.dim(), field);
        for (r, c, v) in &self.inclusion {
            if *r >= datum.dim() || *c >= base.dim() {
                return Err(SchemaError::Shape(format!("inclusion entry ({r}, {c}) out of range")));
            }
            inclusion.set(*r, *c, v.lift(field)?);
        }
        Ok(OrbifoldDatumInput { base, datum, inclusion })
    }
}

/// `(a, b, c, d, e, f, value)` for `F^{abc}_{d;ef}`.
pub type FEntry = (Simple, Simple, Simple, Simple, Simple, Simple, Scalar);

/// Multiplicity-free spherical fusion data. The Euler datum is given as
/// `phi` or, when `φ` is irrational, as `phi_sq`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionFile {
    pub schema_version: u32,
    pub field: u32,
    pub labels: Vec<String>,
    pub dual: Vec<Simple>,
    #[serde(rename = "N")]
    pub fusion: Vec<(Simple, Simple, Simple)>,
    #[serde(rename = "F")]
    pub f_symbols: Vec<FEntry>,
    pub qdim: Vec<Scalar>,
    #[serde(default)]
    pub phi: Option<Scalar>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_sq: Option<Scalar>,
}

impl FusionFile {
    pub fn build(&self) -> Result<FusionData, SchemaError> {
        expect_version(self.schema_version)?;
        let field = field_of(self.field)?;
        let euler = match (&self.phi, &self.phi_sq) {
            (Some(_), Some(_)) => return Err(SchemaError::Shape("give at most one of phi and phi_sq".into())),
            (Some(p), None) => Some(EulerDatum::Phi(p.clone())),
            (None, Some(p)) => Some(EulerDatum::PhiSquared(p.clone())),
            (None, None) => None,
        };
        let f = self.f_symbols.iter().map(|(a, b, c, d, e, f, v)| ([*a, *b, *c, *d, *e, *f], v.clone()));
        Ok(FusionData::new(field, self.labels.clone(), self.dual.clone(), self.fusion.clone(), f, self.qdim.clone(), euler)?)
    }

    pub fn from_data(data: &FusionData) -> Self {
        let (phi, phi_sq) = match data.euler() {
            Some(EulerDatum::Phi(p)) => (Some(p.clone()), None),
            Some(EulerDatum::PhiSquared(p)) => (None, Some(p.clone())),
            None => (None, None),
        };
        FusionFile {
            schema_version: SCHEMA_VERSION,
            field: data.field().tag(),
            labels: data.labels().to_vec(),
            dual: (0..data.rank()).map(|a| data.dual(a)).collect(),
            fusion: data.fusion_triples().copied().collect(),
            f_symbols: data.f_entries().into_iter().map(|([a, b, c, d, e, f], v)| (a, b, c, d, e, f, v)).collect(),
            qdim: (0..data.rank()).map(|a| data.qdim(a).clone()).collect(),
            phi,
            phi_sq,
        }
    }
}

/// Fusion data with R-symbols `(a, b, c, R^{ab}_c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidedFile {
    #[serde(flatten)]
    pub fusion: FusionFile,
    #[serde(rename = "R")]
    pub r_symbols: Vec<(Simple, Simple, Simple, Scalar)>,
}

impl BraidedFile {
    pub fn build(&self) -> Result<BraidedFusionData, SchemaError> {
        let fusion = self.fusion.build()?;
        let field = fusion.field();
        let r = self.r_symbols.iter().map(|(a, b, c, v)| Ok(((*a, *b, *c), v.lift(field)?))).collect::<Result<Vec<_>, SchemaError>>()?;
        Ok(BraidedFusionData::new(fusion, r)?)
    }

    pub fn from_data(data: &BraidedFusionData) -> Self {
        BraidedFile {
            fusion: FusionFile::from_data(data.fusion()),
            r_symbols: data.r_entries().into_iter().map(|((a, b, c), v)| (a, b, c, v)).collect(),
        }
    }
}

/// A semisimple Calabi–Yau category: one trace scalar per simple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyFile {
    pub schema_version: u32,
    pub field: u32,
    pub simples: usize,
    pub traces: Vec<Scalar>,
}

impl CyFile {
    pub fn build(&self) -> Result<CYCategoryData, SchemaError> {
        expect_version(self.schema_version)?;
        if self.traces.len() != self.simples {
            return Err(SchemaError::Shape("one trace per simple".into()));
        }
        let field = field_of(self.field)?;
        Ok(CYCategoryData::new(field, lift_all(&self.traces, field)?)?)
    }

    pub fn from_data(data: &CYCategoryData) -> Self {
        CyFile { schema_version: SCHEMA_VERSION, field: data.field().tag(), simples: data.simples(), traces: data.traces().to_vec() }
    }
}

/// `(c', c, m, n', e, n, value)` for `L^{c'cm}_{n';en}`.
pub type ModuleEntry = (usize, usize, usize, usize, usize, usize, Scalar);

/// A left module category over the fusion fixture `base`, with traces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleFile {
    pub schema_version: u32,
    pub base: String,
    pub objects: usize,
    pub action: Vec<(Simple, usize, usize)>,
    #[serde(rename = "L")]
    pub symbols: Vec<ModuleEntry>,
    pub traces: Vec<Scalar>,
}

impl ModuleFile {
    pub fn build(&self, base: FusionData) -> Result<ModuleCategoryData, SchemaError> {
        expect_version(self.schema_version)?;
        let symbols = self.symbols.iter().map(|(a, b, c, d, e, f, v)| ([*a, *b, *c, *d, *e, *f], v.clone()));
        Ok(ModuleCategoryData::new(base, self.objects, self.action.clone(), symbols, self.traces.clone())?)
    }

    pub fn from_data(data: &ModuleCategoryData, base: &str) -> Self {
        let mut symbols: Vec<ModuleEntry> = data.symbols.iter().map(|(k, v)| (k[0], k[1], k[2], k[3], k[4], k[5], v.clone())).collect();
        symbols.sort_by_key(|x| (x.0, x.1, x.2, x.3, x.4, x.5));
        ModuleFile {
            schema_version: SCHEMA_VERSION,
            base: base.to_string(),
            objects: data.objects,
            action: data.action.iter().copied().collect(),
            symbols,
            traces: data.traces.clone(),
        }
    }
}

/// A square matrix labeling a point defect, as sparse `(row, column, value)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    pub schema_version: u32,
    pub field: u32,
    pub dim: usize,
    pub entries: Vec<(usize, usize, Scalar)>,
}

impl MapFile {
    pub fn build(&self) -> Result<Matrix, SchemaError> {
        expect_version(self.schema_version)?;
        let field = field_of(self.field)?;
        let mut m = Matrix::zeros(self.dim, self.dim, field);
        for (r, c, v) in &self.entries {
            if *r >= self.dim || *c >= self.dim {
                return Err(SchemaError::Shape(format!("entry ({r}, {c}) out of range")));
            }
            m.set(*r, *c, v.lift(field)?);
        }
        Ok(m)
    }
}

/// An algebra object in a braided category: summands, `(i, j, k, c)` on the
/// vertices `v^{x_k}_{x_i x_j}`, and unit and counit by summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraObjectFile {
    pub object: Vec<Simple>,
    pub mul: Vec<ProductEntry>,
    pub unit: Vec<(usize, Scalar)>,
    pub counit: Vec<(usize, Scalar)>,
}

fn components(entries: &[ProductEntry], field: Field) -> Result<Vec<ProductComponent>, SchemaError> {
    entries.iter().map(|(i, j, k, v)| Ok(((*i, *j, *k), v.lift(field)?))).collect()
}

fn flatten(entries: Vec<ProductComponent>) -> Vec<ProductEntry> {
    entries.into_iter().map(|((i, j, k), v)| (i, j, k, v)).collect()
}

fn weights(entries: &[(usize, Scalar)], field: Field) -> Result<Vec<(usize, Scalar)>, SchemaError> {
    entries.iter().map(|(i, v)| Ok((*i, v.lift(field)?))).collect()
}

impl AlgebraObjectFile {
    pub fn build(&self, cat: &BraidedFusionData) -> Result<AlgebraObject, SchemaError> {
        let field = cat.field();
        let object = Object::new(self.object.clone());
        if self.object.iter().any(|&x| x >= cat.rank()) {
            return Err(SchemaError::Shape("summand is not a simple of the category".into()));
        }
        Ok(AlgebraObject::new(cat, object, &components(&self.mul, field)?, &weights(&self.unit, field)?, &weights(&self.counit, field)?)?)
    }

    /// Drops the coproduct; `build` rederives it from `ε ∘ μ`.
    pub fn from_object(cat: &BraidedFusionData, alg: &AlgebraObject) -> Self {
        AlgebraObjectFile {
            object: alg.object().summands().to_vec(),
            mul: flatten(binary_components(cat, alg.multiplication())),
            unit: unit_components(cat, alg.unit()),
            counit: unit_components(cat, alg.counit()),
        }
    }
}

/// A candidate commutative Frobenius algebra in the braided fixture `category`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommutativeFrobeniusFile {
    pub schema_version: u32,
    pub category: String,
    pub algebra: AlgebraObjectFile,
}

/// A Frobenius algebra `algebra` over `(left, right)`; actions by components
/// `(a, f, f', c)` and `(f, b, f', c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFile {
    pub schema_version: u32,
    pub category: String,
    pub left: AlgebraObjectFile,
    pub right: AlgebraObjectFile,
    pub algebra: AlgebraObjectFile,
    pub left_action: Vec<ProductEntry>,
    pub right_action: Vec<ProductEntry>,
}

impl PairFile {
    pub fn build(&self, cat: &BraidedFusionData) -> Result<PairStructure, SchemaError> {
        expect_version(self.schema_version)?;
        let field = cat.field();
        Ok(PairStructure::new(
            cat,
            self.left.build(cat)?,
            self.right.build(cat)?,
            self.algebra.build(cat)?,
            &components(&self.left_action, field)?,
            &components(&self.right_action, field)?,
        ))
    }

    pub fn from_pair(cat: &BraidedFusionData, category: &str, pair: &PairStructure) -> Self {
        PairFile {
            schema_version: SCHEMA_VERSION,
            category: category.into(),
            left: AlgebraObjectFile::from_object(cat, pair.left()),
            right: AlgebraObjectFile::from_object(cat, pair.right()),
            algebra: AlgebraObjectFile::from_object(cat, pair.algebra()),
            left_action: flatten(binary_components(cat, pair.left_action())),
            right_action: flatten(binary_components(cat, pair.right_action())),
        }
    }
}

/// A bimodule from the pair fixture `right_pair` to the pair fixture
/// `left_pair`: the left pair's algebra acts on the left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairBimoduleFile {
    pub schema_version: u32,
    pub category: String,
    pub left_pair: String,
    pub right_pair: String,
    pub object: Vec<Simple>,
    pub left_action: Vec<ProductEntry>,
    pub right_action: Vec<ProductEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub crossings: Option<ExchangeCrossings>,
}

impl PairBimoduleFile {
    pub fn build(&self, cat: &BraidedFusionData, left: &PairStructure, right: &PairStructure) -> Result<BimoduleOverPair, SchemaError> {
        expect_version(self.schema_version)?;
        let field = cat.field();
        Ok(BimoduleOverPair::new(
            cat,
            Object::new(self.object.clone()),
            left,
            right,
            &components(&self.left_action, field)?,
            &components(&self.right_action, field)?,
        ))
    }

    pub fn from_bimodule(
        cat: &BraidedFusionData,
        category: &str,
        (left_pair, right_pair): (&str, &str),
        module: &BimoduleOverPair,
        crossings: Option<ExchangeCrossings>,
    ) -> Self {
        PairBimoduleFile {
            schema_version: SCHEMA_VERSION,
            category: category.into(),
            left_pair: left_pair.into(),
            right_pair: right_pair.into(),
            object: module.object().summands().to_vec(),
            left_action: flatten(binary_components(cat, module.left_action())),
            right_action: flatten(binary_components(cat, module.right_action())),
            crossings,
        }
    }
}
