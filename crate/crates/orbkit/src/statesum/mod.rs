//! Triangulations and exact state-sum evaluation: 2d Frobenius-algebra sums,
//! 3d Turaev–Viro sums, their defect versions and Pachner-move suites.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bimodules::BimoduleError;
use crate::frobenius::{FrobeniusError, FrobeniusStructure};
use crate::fusioncat::{FusionData, FusionError};
use crate::scalars::Scalar;

pub mod contraction;
pub mod fhk;
pub mod fixtures;
pub mod moves;
pub mod orbifold;
pub mod orbifold3d;
pub mod state_space;
pub mod triangulation;
pub mod tv;

pub use contraction::ContractionStats;
pub use fhk::fhk_evaluate;
pub use moves::{pachner_invariance, random_moves, Move, MoveOutcome, PachnerReport};
pub use orbifold::{
    orbifold_evaluate, orbifold_evaluate_with, HostChoice, StratifiedComplex, StratifiedFile, Stratum, StratumFile, StratumLabel,
};
pub use orbifold3d::{DefectAssociator, SurfaceDefectData};
pub use state_space::{state_space_dim, StateSpaceReport};
pub use triangulation::{OrderedTriangulation, TriangulationFile};
pub use tv::tv_evaluate;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateSumError {
    #[error("triangulation is not closed: {0}")]
    NotClosed(String),
    #[error("triangulation admits no consistent orientation")]
    NonOrientable,
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("Frobenius algebra is not separable")]
    NotSeparable,
    #[error("fusion data carries no Euler datum")]
    MissingEulerDatum,
    #[error("labels do not match across a defect: {0}")]
    LabelAdjacencyViolation(String),
    #[error("defect is not transversal to the triangulation: {0}")]
    TransversalityViolation(String),
    #[error("unsupported stratification: {0}")]
    UnsupportedStratification(String),
    #[error("schema version {found} is not supported")]
    SchemaVersionMismatch { found: u32 },
    #[error("expected a {expected}-dimensional triangulation, got dimension {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error(transparent)]
    Frobenius(FrobeniusError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

impl From<FrobeniusError> for StateSumError {
    fn from(e: FrobeniusError) -> Self {
        match e {
            FrobeniusError::NotSeparable => StateSumError::NotSeparable,
            other => StateSumError::Frobenius(other),
        }
    }
}

/// An exact partition-function value with the size of the contraction behind it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSumResult {
    pub value: Scalar,
    pub stats: ContractionStats,
}

/// A closed-manifold invariant: a 2d Frobenius theory or a 3d fusion theory.
#[derive(Debug, Clone)]
pub enum Theory {
    Frobenius(FrobeniusStructure),
    Fusion(FusionData),
}

impl Theory {
    pub fn dim(&self) -> usize {
        match self {
            Theory::Frobenius(_) => 2,
            Theory::Fusion(_) => 3,
        }
    }

    pub fn evaluate(&self, t: &OrderedTriangulation) -> Result<StateSumResult, StateSumError> {
        match self {
            Theory::Frobenius(f) => fhk_evaluate(t, f),
            Theory::Fusion(data) => tv_evaluate(t, data),
        }
    }
}

pub(crate) fn expect_dim(t: &OrderedTriangulation, dim: usize) -> Result<(), StateSumError> {
    if t.dim() == dim {
        Ok(())
    } else {
        Err(StateSumError::DimensionMismatch { expected: dim, actual: t.dim() })
    }
}

pub(crate) fn expect_closed(t: &OrderedTriangulation) -> Result<(), StateSumError> {
    match t.boundary_facets().first() {
        None => Ok(()),
        Some((s, i)) => Err(StateSumError::NotClosed(format!("facet {i} of simplex {s} is unglued"))),
    }
}
