//! The shipped fixture files describe the same data as the library examples.

use std::path::{Path, PathBuf};

use orbkit::frobenius::{euler_gamma, examples as algebras};
use orbkit::fusioncat::examples as fusion;
use orbkit::rtdefects::examples as braided;
use orbkit::scalars::Field;
use orbkit::statesum::fixtures as triangulations;
use orbkit_cli::registry::Registry;

fn registry() -> Registry {
    Registry::open(Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")).unwrap()
}

#[test]
fn algebra_and_category_files_match_the_examples() {
    let reg = registry();
    let q = Field::RATIONALS;
    assert_eq!(reg.algebra("q_z2_gamma", None).unwrap(), euler_gamma(&algebras::cyclic_group(2, q)).unwrap());
    assert_eq!(reg.algebra("mat2", None).unwrap(), algebras::matrices_with_trace(2, q.one()));
    assert_eq!(reg.fusion("fib", None).unwrap(), fusion::fibonacci());
    assert_eq!(reg.fusion("vec_z2_twisted", None).unwrap(), fusion::vec_z2_twisted());
    assert_eq!(reg.braided("toric", None).unwrap(), braided::toric_code());
}

#[test]
fn triangulation_files_match_the_constructors() {
    let reg = registry();
    for (name, t) in [
        ("s3_two_tet", triangulations::s3_two_tet()),
        ("genus_two", triangulations::genus_two()),
        ("three_torus", triangulations::three_torus()),
    ] {
        assert_eq!(reg.triangulation(name).unwrap().to_file(), t.to_file(), "{name}");
    }
}

#[test]
fn every_indexed_file_exists_and_loads() {
    let reg = registry();
    let root: PathBuf = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    for entry in &reg.index().fixtures {
        assert!(root.join(&entry.file).is_file(), "{}", entry.file);
        let loaded = reg.load(&entry.name, None).unwrap();
        assert_eq!(loaded.kind, entry.kind, "{}", entry.name);
    }
}
