use std::path::PathBuf;

use orbkit::bimodules::BimoduleError;
use orbkit::ew::EwError;
use orbkit::frobenius::FrobeniusError;
use orbkit::fusioncat::FusionError;
use orbkit::rtdefects::RtDefectError;
use orbkit::schema::SchemaError;
use orbkit::statesum::StateSumError;
use thiserror::Error;

use crate::registry::Kind;

/// Failures that prevent a command from producing a verdict; exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("fixture {0:?} not found as a path or in the registry")]
    FixtureNotFound(String),
    #[error("{}: schema version {} is not supported (expected {})", path.display(), found.map_or("missing".to_string(), |v| v.to_string()), orbkit::schema::SCHEMA_VERSION)]
    SchemaVersionMismatch { path: PathBuf, found: Option<u64> },
    #[error("{}: expected a {expected} fixture, found {found}", path.display())]
    KindMismatch { path: PathBuf, expected: Kind, found: Kind },
    #[error("{}: cannot determine the fixture kind", path.display())]
    UnknownKind { path: PathBuf },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{}: {source}", path.display())]
    Schema { path: PathBuf, source: SchemaError },
    #[error("label {label:?} of a {dim}-dimensional stratum: {reason}")]
    Label { label: String, dim: usize, reason: String },
    #[error(transparent)]
    Frobenius(#[from] FrobeniusError),
    #[error(transparent)]
    Bimodule(#[from] BimoduleError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error(transparent)]
    Ew(#[from] EwError),
    #[error(transparent)]
    StateSum(#[from] StateSumError),
    #[error(transparent)]
    RtDefect(#[from] RtDefectError),
    #[error("invalid arguments: {0}")]
    Usage(String),
}
