//! Topological invariance of the closed state sums: long random Pachner
//! sequences, vertex relabelings and multiplicativity under disjoint union.

use orbkit::frobenius::{euler_gamma, examples};
use orbkit::fusioncat::examples as fusion;
use orbkit::scalars::Field;
use orbkit::statesum::{fixtures, pachner_invariance, random_moves, OrderedTriangulation, Theory};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn z2_gamma() -> Theory {
    Theory::Frobenius(euler_gamma(&examples::cyclic_group(2, Field::RATIONALS)).unwrap())
}

fn mat2() -> Theory {
    Theory::Frobenius(examples::matrices_with_trace(2, Field::RATIONALS.one()))
}

fn assert_suite(t: &OrderedTriangulation, theory: &Theory, expanding: usize, seed: u64, slack: usize) {
    let moves = random_moves(t, expanding, seed, slack);
    assert!(moves.iter().filter(|m| m.is_expanding()).count() >= 50);
    let report = pachner_invariance(t, theory, &moves).unwrap();
    assert!(report.all_equal, "seed {seed}: {:?}", report.steps.iter().map(|s| (s.applied.name(), s.value.pretty())).collect::<Vec<_>>());
}

#[test]
fn fifty_move_2d_suites_keep_the_value() {
    for (t, theory) in [
        (fixtures::torus_three_vertex(), z2_gamma()),
        (fixtures::torus_three_vertex(), mat2()),
        (fixtures::sphere_tetrahedron(), z2_gamma()),
        (fixtures::genus_two(), mat2()),
    ] {
        for seed in [1, 2] {
            assert_suite(&t, &theory, 50, seed, 8);
        }
    }
}

#[test]
fn fifty_move_3d_suites_keep_the_value() {
    for (t, theory) in [
        (fixtures::s3_two_tet(), Theory::Fusion(fusion::fibonacci())),
        (fixtures::s3_two_tet(), Theory::Fusion(fusion::vec_z2_twisted())),
        (fixtures::s2_times_s1(), Theory::Fusion(fusion::vec_cyclic(2))),
    ] {
        assert_suite(&t, &theory, 50, 5, 6);
    }
}

#[test]
fn disjoint_union_multiplies_values() {
    let cases_2d = [
        (fixtures::torus_three_vertex(), fixtures::sphere_tetrahedron(), z2_gamma()),
        (fixtures::sphere_bipyramid(), fixtures::torus_four_vertex(), mat2()),
    ];
    let cases_3d = [
        (fixtures::s3_two_tet(), fixtures::s2_times_s1(), Theory::Fusion(fusion::fibonacci())),
        (fixtures::s3_pentachoron(), fixtures::s2_times_s1(), Theory::Fusion(fusion::vec_cyclic(3))),
    ];
    for (a, b, theory) in cases_2d.into_iter().chain(cases_3d) {
        let union = a.disjoint_union(&b).unwrap();
        let product = theory.evaluate(&a).unwrap().value * theory.evaluate(&b).unwrap().value;
        assert_eq!(theory.evaluate(&union).unwrap().value, product);
    }
}

fn shuffled(n: usize, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn relabeling_vertices_keeps_the_2d_value(seed in any::<u64>()) {
        let t = fixtures::torus_seven_vertex();
        let relabeled = t.relabel(&shuffled(t.vertex_count(), seed)).unwrap();
        for theory in [z2_gamma(), mat2()] {
            prop_assert_eq!(theory.evaluate(&relabeled).unwrap().value, theory.evaluate(&t).unwrap().value);
        }
    }

    #[test]
    fn relabeling_vertices_keeps_the_3d_value(seed in any::<u64>()) {
        let t = fixtures::s2_times_s1();
        let relabeled = t.relabel(&shuffled(t.vertex_count(), seed)).unwrap();
        for theory in [Theory::Fusion(fusion::fibonacci()), Theory::Fusion(fusion::vec_z2_twisted())] {
            prop_assert_eq!(theory.evaluate(&relabeled).unwrap().value, theory.evaluate(&t).unwrap().value);
        }
    }
}
