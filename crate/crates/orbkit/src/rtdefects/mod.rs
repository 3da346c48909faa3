//! Structures inside a braided fusion category that describe surface and line
//! defects between condensed phases: commutative Δ-separable Frobenius
//! algebras, Frobenius algebras over a pair of them, and bimodules over pairs.
//!
//! Only the braiding is used. Modularity of the ambient category is never
//! checked: no S-matrix is formed and nondegeneracy is not required.

use thiserror::Error;

use crate::fusioncat::{FusionError, Simple};

pub mod algebra;
pub mod braided;
pub mod calculus;
pub mod examples;

pub use algebra::{
    check_bimodule_over_pair, check_bimodule_over_pair_with, check_commutative_frobenius, check_frobenius_over_pair, AlgebraObject,
    BimoduleOverPair, BimoduleOverPairReport, CommutativeFrobeniusReport, Crossing, ExchangeCrossings, PairReport, PairStructure,
    ProductComponent, Relation, Witness,
};
pub use braided::{BraidedFusionData, Hexagon, VertexGauge};
pub use calculus::{braiding, Morphism, Object, Tree};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RtDefectError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("missing R-symbol R^{{{0}{1}}}_{2}")]
    MissingRSymbol(Simple, Simple, Simple),
    #[error("hexagon {hexagon:?} fails at {witness:?}")]
    HexagonViolation { hexagon: Hexagon, witness: [Simple; 3] },
    #[error("not a Frobenius algebra: {0}")]
    NotFrobenius(String),
    #[error("the two characterizations disagree: {0}")]
    InternalInconsistency(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}
