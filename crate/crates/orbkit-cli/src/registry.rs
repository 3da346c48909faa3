//! Fixture lookup: a reference is a path, or a name in the registry index.
//!
//! References inside a fixture that end in `.json` are resolved relative to the
//! referencing file; bare names always go through the registry.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use orbkit::bimodules::{Bimodule, OrbifoldDatumInput};
use orbkit::frobenius::{Algebra, FrobeniusStructure};
use orbkit::fusioncat::{CYCategoryData, FusionData, ModuleCategoryData};
use orbkit::linalg::Matrix;
use orbkit::rtdefects::{AlgebraObject, BimoduleOverPair, BraidedFusionData, ExchangeCrossings, PairStructure};
use orbkit::scalars::Scalar;
use orbkit::schema::*;
use orbkit::statesum::{OrderedTriangulation, StratifiedComplex, StratifiedFile, StratumLabel, SurfaceDefectData, TriangulationFile};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::CliError;

pub const ENV_ROOT: &str = "ORBKIT_FIXTURES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Algebra,
    Bimodule,
    Orbifold,
    Fusion,
    Braided,
    Cy,
    Module,
    Map,
    Triangulation,
    Stratified,
    CommFrob,
    Pair,
    PairBimodule,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = serde_json::to_value(self).expect("kinds serialize");
        f.write_str(text.as_str().unwrap_or("?"))
    }
}

impl Kind {
    /// Infers the kind from the distinguishing top-level keys.
    pub fn sniff(value: &Value) -> Option<Kind> {
        let has = |key: &str| value.get(key).is_some();
        let kind = if has("simplices") {
            if has("strata") {
                Kind::Stratified
            } else {
                Kind::Triangulation
            }
        } else if has("R") {
            Kind::Braided
        } else if has("N") {
            Kind::Fusion
        } else if has("left_pair") {
            Kind::PairBimodule
        } else if has("left_action") {
            Kind::Pair
        } else if has("algebra") {
            Kind::CommFrob
        } else if has("lact") {
            Kind::Bimodule
        } else if has("datum") {
            Kind::Orbifold
        } else if has("action") {
            Kind::Module
        } else if has("simples") {
            Kind::Cy
        } else if has("entries") {
            Kind::Map
        } else if has("mul") {
            Kind::Algebra
        } else {
            return None;
        };
        Some(kind)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexEntry {
    pub name: String,
    pub kind: Kind,
    pub file: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<bool>,
}

/// A command line whose reported `value` is known exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Golden {
    pub args: Vec<String>,
    pub value: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Index {
    pub schema_version: u32,
    pub fixtures: Vec<IndexEntry>,
    pub goldens: Vec<Golden>,
}

/// A parsed fixture file with its inferred kind.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub path: PathBuf,
    pub kind: Kind,
    pub value: Value,
}

impl Loaded {
    fn parse<T: DeserializeOwned>(&self) -> Result<T, CliError> {
        T::deserialize(&self.value).map_err(|source| CliError::Json { path: self.path.clone(), source })
    }

    fn dir(&self) -> &Path {
        self.path.parent().unwrap_or(Path::new("."))
    }

    fn schema<T>(&self, result: Result<T, SchemaError>) -> Result<T, CliError> {
        result.map_err(|source| CliError::Schema { path: self.path.clone(), source })
    }
}

pub struct Registry {
    root: PathBuf,
    index: Index,
    by_name: BTreeMap<String, PathBuf>,
}

impl Registry {
    /// `$ORBKIT_FIXTURES`, else `./fixtures`, else the fixtures shipped with the source tree.
    pub fn discover() -> Result<Self, CliError> {
        let root = match std::env::var_os(ENV_ROOT) {
            Some(dir) => PathBuf::from(dir),
            None if Path::new("fixtures").is_dir() => PathBuf::from("fixtures"),
            None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"),
        };
        Self::open(root)
    }

    /// A missing `index.json` leaves only `<root>/<name>.json` lookups.
    pub fn open(root: PathBuf) -> Result<Self, CliError> {
        let index_path = root.join("index.json");
        let index: Index = if index_path.is_file() {
            let loaded = read(&index_path)?;
            serde_json::from_value(loaded).map_err(|source| CliError::Json { path: index_path.clone(), source })?
        } else {
            Index::default()
        };
        let by_name = index.fixtures.iter().map(|e| (e.name.clone(), root.join(&e.file))).collect();
        Ok(Registry { root, index, by_name })
    }

    pub fn index(&self) -> &Index {
        &self.index
    }

    fn locate(&self, reference: &str, relative_to: Option<&Path>) -> Result<PathBuf, CliError> {
        match relative_to {
            Some(dir) if reference.ends_with(".json") => {
                let candidate = dir.join(reference);
                if candidate.is_file() {
                    return Ok(candidate);
                }
            }
            Some(_) => {}
            None => {
                if Path::new(reference).is_file() {
                    return Ok(PathBuf::from(reference));
                }
            }
        }
        let name = reference.strip_suffix(".json").unwrap_or(reference);
        let path = self.by_name.get(name).cloned().unwrap_or_else(|| self.root.join(format!("{name}.json")));
        if path.is_file() {
            Ok(path)
        } else {
            Err(CliError::FixtureNotFound(reference.to_string()))
        }
    }

    pub fn load(&self, reference: &str, relative_to: Option<&Path>) -> Result<Loaded, CliError> {
        let path = self.locate(reference, relative_to)?;
        let value = read(&path)?;
        let found = value.get("schema_version").and_then(Value::as_u64);
        if found != Some(u64::from(SCHEMA_VERSION)) {
            return Err(CliError::SchemaVersionMismatch { path, found });
        }
        let kind = Kind::sniff(&value).ok_or_else(|| CliError::UnknownKind { path: path.clone() })?;
        Ok(Loaded { path, kind, value })
    }

    fn load_kind(&self, reference: &str, relative_to: Option<&Path>, expected: &[Kind]) -> Result<Loaded, CliError> {
        let loaded = self.load(reference, relative_to)?;
        if expected.contains(&loaded.kind) {
            Ok(loaded)
        } else {
            Err(CliError::KindMismatch { path: loaded.path, expected: expected[0], found: loaded.kind })
        }
    }

    /// The algebra and counit of an algebra file, nondegenerate or not.
    pub fn raw_algebra(&self, reference: &str) -> Result<(Algebra, Vec<Scalar>), CliError> {
        let loaded = self.load_kind(reference, None, &[Kind::Algebra])?;
        let file: AlgebraFile = loaded.parse()?;
        loaded.schema(file.algebra_and_counit())
    }

    pub fn algebra(&self, reference: &str, relative_to: Option<&Path>) -> Result<FrobeniusStructure, CliError> {
        let loaded = self.load_kind(reference, relative_to, &[Kind::Algebra])?;
        let file: AlgebraFile = loaded.parse()?;
        loaded.schema(file.build())
    }

    pub fn bimodule(&self, reference: &str, relative_to: Option<&Path>) -> Result<Bimodule, CliError> {
        let loaded = self.load_kind(reference, relative_to, &[Kind::Bimodule])?;
        let file: BimoduleFile = loaded.parse()?;
        let left = self.algebra(&file.left, Some(loaded.dir()))?;
        let right = self.algebra(&file.right, Some(loaded.dir()))?;
        loaded.schema(file.build(left, right))
    }

    pub fn orbifold(&self, reference: &str) -> Result<OrbifoldDatumInput, CliError> {
        let loaded = self.load_kind(reference, None, &[Kind::Orbifold])?;
        let file: OrbifoldDatumFile = loaded.parse()?;
        let datum = self.algebra(&file.datum, Some(loaded.dir()))?;
        let base = file.base.as_deref().map(|b| self.algebra(b, Some(loaded.dir()))).transpose()?;
        loaded.schema(file.build(datum, base))
    }

    /// Braided files are accepted and forget their braiding.
    pub fn fusion(&self, reference: &str, relative_to: Option<&Path>) -> Result<FusionData, CliError> {
        let loaded = self.load_kind(reference, relative_to, &[Kind::Fusion, Kind::Braided])?;
        self.fusion_of(&loaded)
    }

    fn fusion_of(&self, loaded: &Loaded) -> Result<FusionData, CliError> {
        if loaded.kind == Kind::Braided {
            let file: BraidedFile = loaded.parse()?;
            return Ok(loaded.schema(file.build())?.fusion().clone());
        }
        let file: FusionFile = loaded.parse()?;
        loaded.schema(file.build())
    }

    pub fn braided(&self, reference: &str, relative_to: Option<&Path>) -> Result<BraidedFusionData, CliError> {
        let loaded = self.load_kind(reference, relative_to, &[Kind::Braided])?;
        let file: BraidedFile = loaded.parse()?;
        loaded.schema(file.build())
    }

    pub fn cy(&self, reference: &str) -> Result<CYCategoryData, CliError> {
        let loaded = self.load_kind(reference, None, &[Kind::Cy])?;
        let file: CyFile = loaded.parse()?;
        loaded.schema(file.build())
    }

    pub fn module(&self, reference: &str, relative_to: Option<&Path>) -> Result<ModuleCategoryData, CliError> {
        let loaded = self.load_kind(reference, relative_to, &[Kind::Module])?;
        let file: ModuleFile = loaded.parse()?;
        let base = self.fusion(&file.base, Some(loaded.dir()))?;
        loaded.schema(file.build(base))
    }

    pub fn map(&self, reference: &str, relative_to: Option<&Path>) -> Result<Matrix, CliError> {
        let loaded = self.load_kind(reference, relative_to, &[Kind::Map])?;
        let file: MapFile = loaded.parse()?;
        loaded.schema(file.build())
    }

    pub fn triangulation(&self, reference: &str) -> Result<OrderedTriangulation, CliError> {
        let loaded = self.load_kind(reference, None, &[Kind::Triangulation, Kind::Stratified])?;
        let file: TriangulationFile = loaded.parse()?;
        Ok(OrderedTriangulation::from_file(&file)?)
    }

    /// Labels resolve by fixture kind and stratum dimension: algebras, bimodules
    /// and maps on surfaces; fusion data on 3d regions, and on defect surfaces
    /// as the regular defect; module categories as defect surfaces.
    pub fn stratified(&self, reference: &str) -> Result<StratifiedComplex, CliError> {
        let loaded = self.load_kind(reference, None, &[Kind::Stratified])?;
        let file: StratifiedFile = loaded.parse()?;
        let ambient = file.triangulation.dim;
        let dir = loaded.dir().to_path_buf();
        let mut failure = None;
        let resolve = |dim: usize, label: &str| {
            self.stratum_label(ambient, dim, label, &dir).map_err(|e| {
                let text = e.to_string();
                failure = Some(e);
                text
            })
        };
        let complex = StratifiedComplex::from_file(&file, resolve);
        match (complex, failure) {
            (_, Some(e)) => Err(e),
            (result, None) => Ok(result?),
        }
    }

    fn stratum_label(&self, ambient: usize, dim: usize, label: &str, dir: &Path) -> Result<StratumLabel, CliError> {
        let loaded = self.load(label, Some(dir))?;
        let mismatch = |reason: &str| CliError::Label { label: label.to_string(), dim, reason: reason.to_string() };
        let resolved = match (ambient, loaded.kind) {
            (2, Kind::Algebra) if dim == 2 => StratumLabel::Algebra(self.algebra(label, Some(dir))?),
            (2, Kind::Bimodule) if dim == 1 => StratumLabel::Bimodule(self.bimodule(label, Some(dir))?),
            (2, Kind::Map) if dim == 0 => StratumLabel::Map(self.map(label, Some(dir))?),
            (3, Kind::Fusion | Kind::Braided) if dim == 3 => StratumLabel::Fusion(self.fusion_of(&loaded)?),
            (3, Kind::Fusion | Kind::Braided) if dim == 2 => {
                StratumLabel::SurfaceDefect(SurfaceDefectData::regular(&self.fusion_of(&loaded)?))
            }
            (3, Kind::Module) if dim == 2 => {
                StratumLabel::SurfaceDefect(SurfaceDefectData::from_left_module(&self.module(label, Some(dir))?)?)
            }
            (_, kind) => return Err(mismatch(&format!("a {kind} fixture cannot label this stratum"))),
        };
        Ok(resolved)
    }

    pub fn comm_frob(&self, reference: &str) -> Result<(BraidedFusionData, AlgebraObject), CliError> {
        let loaded = self.load_kind(reference, None, &[Kind::CommFrob])?;
        let file: CommutativeFrobeniusFile = loaded.parse()?;
        let cat = self.braided(&file.category, Some(loaded.dir()))?;
        let algebra = loaded.schema(file.algebra.build(&cat))?;
        Ok((cat, algebra))
    }

    pub fn pair(&self, reference: &str, relative_to: Option<&Path>) -> Result<(BraidedFusionData, PairStructure), CliError> {
        let loaded = self.load_kind(reference, relative_to, &[Kind::Pair])?;
        let file: PairFile = loaded.parse()?;
        let cat = self.braided(&file.category, Some(loaded.dir()))?;
        let pair = loaded.schema(file.build(&cat))?;
        Ok((cat, pair))
    }

    pub fn pair_bimodule(&self, reference: &str) -> Result<PairBimoduleFixture, CliError> {
        let loaded = self.load_kind(reference, None, &[Kind::PairBimodule])?;
        let file: PairBimoduleFile = loaded.parse()?;
        let category = self.braided(&file.category, Some(loaded.dir()))?;
        let (left_cat, left) = self.pair(&file.left_pair, Some(loaded.dir()))?;
        let (right_cat, right) = self.pair(&file.right_pair, Some(loaded.dir()))?;
        if left_cat != category || right_cat != category {
            return Err(CliError::Usage(format!("{}: the pairs live in a different category", loaded.path.display())));
        }
        let module = loaded.schema(file.build(&category, &left, &right))?;
        Ok(PairBimoduleFixture { category, module, left, right, crossings: file.crossings.unwrap_or_default() })
    }
}

pub struct PairBimoduleFixture {
    pub category: BraidedFusionData,
    pub module: BimoduleOverPair,
    pub left: PairStructure,
    pub right: PairStructure,
    pub crossings: ExchangeCrossings,
}

fn read(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json { path: path.to_path_buf(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_sniffed_from_keys() {
        let cases = [
            (r#"{"simplices":[],"strata":[]}"#, Kind::Stratified),
            (r#"{"N":[],"R":[]}"#, Kind::Braided),
            (r#"{"left_pair":"p","left_action":[]}"#, Kind::PairBimodule),
            (r#"{"algebra":{},"left_action":[]}"#, Kind::Pair),
            (r#"{"lact":[],"mul":[]}"#, Kind::Bimodule),
            (r#"{"mul":[]}"#, Kind::Algebra),
        ];
        for (json, kind) in cases {
            assert_eq!(Kind::sniff(&serde_json::from_str(json).unwrap()), Some(kind), "{json}");
        }
        assert_eq!(Kind::sniff(&serde_json::json!({"other": 1})), None);
    }

    #[test]
    fn kind_names_match_the_index_spelling() {
        assert_eq!(Kind::PairBimodule.to_string(), "pair_bimodule");
        assert_eq!(Kind::CommFrob.to_string(), "comm_frob");
    }
}
