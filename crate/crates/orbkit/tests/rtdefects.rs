use orbkit::rtdefects::examples::{
    bimodule_fixtures, group_algebra, pair_fixtures, super_vector_spaces, toric_code, toric_m_line, vec_diagonal, vec_group_algebra_z2,
    vec_matrices, vector_spaces, z2_symmetric,
};
use orbkit::rtdefects::{
    check_bimodule_over_pair, check_bimodule_over_pair_with, check_commutative_frobenius, check_frobenius_over_pair, BraidedFusionData,
    Crossing, ExchangeCrossings, Hexagon, RtDefectError, VertexGauge,
};
use orbkit::scalars::Field;
use proptest::prelude::*;

fn braided_fixtures() -> Vec<(&'static str, BraidedFusionData)> {
    vec![("vec", vector_spaces()), ("z2", z2_symmetric()), ("svec", super_vector_spaces()), ("toric", toric_code())]
}

#[test]
fn twists_of_the_fixtures() {
    let q = Field::RATIONALS;
    for (_, cat) in braided_fixtures() {
        assert_eq!(cat.twist(0), &q.one());
    }
    assert_eq!(z2_symmetric().twist(1), &q.one());
    assert_eq!(super_vector_spaces().twist(1), &q.int(-1));
    let toric = toric_code();
    let twists: Vec<_> = (0..4).map(|a| toric.twist(a).clone()).collect();
    assert_eq!(twists, vec![q.one(), q.one(), q.one(), q.int(-1)]);
}

#[test]
fn mutated_r_symbol_breaks_a_hexagon() {
    let toric = toric_code();
    let err = toric.with_r_symbol((1, 2, 3), Field::RATIONALS.int(-1)).unwrap_err();
    assert!(matches!(err, RtDefectError::HexagonViolation { .. }), "{err:?}");
    let err = z2_symmetric().with_r_symbol((1, 1, 0), Field::RATIONALS.int(2)).unwrap_err();
    assert!(matches!(err, RtDefectError::HexagonViolation { hexagon: Hexagon::PastRight | Hexagon::PastLeft, .. }), "{err:?}");
}

#[test]
fn commutative_frobenius_verdicts() {
    let vec = vector_spaces();
    assert!(check_commutative_frobenius(&vec, &vec_group_algebra_z2(&vec)).unwrap().passes());
    assert!(check_commutative_frobenius(&vec, &vec_diagonal(&vec, 3)).unwrap().passes());
    let matrices = check_commutative_frobenius(&vec, &vec_matrices(&vec, 2)).unwrap();
    assert!(matrices.frobenius && matrices.delta_separable && !matrices.commutative);

    let z2 = z2_symmetric();
    assert!(check_commutative_frobenius(&z2, &group_algebra(&z2, &[0, 1], |_, _| 1)).unwrap().passes());
    let svec = super_vector_spaces();
    let clifford = check_commutative_frobenius(&svec, &group_algebra(&svec, &[0, 1], |_, _| 1)).unwrap();
    assert!(clifford.algebra && clifford.frobenius && !clifford.commutative);

    let toric = toric_code();
    for bosons in [[0, 1], [0, 2]] {
        assert!(check_commutative_frobenius(&toric, &group_algebra(&toric, &bosons, |_, _| 1)).unwrap().passes());
    }
    let fermion = check_commutative_frobenius(&toric, &group_algebra(&toric, &[0, 3], |_, _| 1)).unwrap();
    assert!(!fermion.commutative);
}

#[test]
fn pair_fixture_verdicts_and_route_agreement() {
    let fixtures = pair_fixtures();
    assert!(fixtures.len() >= 10);
    for fixture in fixtures {
        let report = check_frobenius_over_pair(&fixture.category, &fixture.pair).unwrap();
        assert!(report.agree, "{}: routes disagree {report:?}", fixture.name);
        let verdict = report.preconditions && report.via_algebra_maps;
        assert_eq!(verdict, fixture.expected, "{}: {report:?}", fixture.name);
    }
}

#[test]
fn bimodule_fixture_verdicts() {
    for fixture in bimodule_fixtures() {
        let report = check_bimodule_over_pair(&fixture.category, &fixture.module, &fixture.right_algebra, &fixture.left_algebra).unwrap();
        assert_eq!(report.passes(), fixture.expected, "{}: {report:?}", fixture.name);
    }
}

#[test]
fn m_line_needs_the_over_crossing() {
    let toric = toric_code();
    let (line, over) = toric_m_line(&toric);
    let default = check_bimodule_over_pair(&toric, &line, &over, &over).unwrap();
    assert!(default.passes(), "{default:?}");
    let under = ExchangeCrossings { right: Crossing::Under, ..ExchangeCrossings::default() };
    let flipped = check_bimodule_over_pair_with(&toric, &line, &over, &over, under).unwrap();
    assert!(flipped.bimodule && !flipped.right_exchange, "{flipped:?}");
}

fn gauge_strategy() -> impl Strategy<Value = Vec<((usize, usize, usize), i64)>> {
    let triples: Vec<_> = (1..4usize).flat_map(|a| (1..4usize).map(move |b| (a, b, a ^ b))).collect();
    proptest::collection::vec(prop_oneof![Just(-2i64), Just(-1), Just(2), Just(3)], triples.len())
        .prop_map(move |values| triples.iter().copied().zip(values).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn verdicts_are_gauge_invariant(factors in gauge_strategy()) {
        let q = Field::RATIONALS;
        let gauge = VertexGauge::new(q, factors.into_iter().map(|(k, v)| (k, q.int(v)))).unwrap();
        for fixture in pair_fixtures().into_iter().filter(|f| f.category == toric_code()) {
            let cat = gauge.apply(&fixture.category).unwrap();
            let pair = fixture.pair.regauge(&cat, &gauge);
            let report = check_frobenius_over_pair(&cat, &pair).unwrap();
            prop_assert!(report.agree);
            prop_assert_eq!(report.preconditions && report.via_algebra_maps, fixture.expected, "{}", fixture.name);
        }
        let toric = toric_code();
        let cat = gauge.apply(&toric).unwrap();
        let (line, over) = toric_m_line(&toric);
        let (line, over) = (line.regauge(&cat, &gauge), over.regauge(&cat, &gauge));
        prop_assert!(check_bimodule_over_pair(&cat, &line, &over, &over).unwrap().passes());
    }
}
