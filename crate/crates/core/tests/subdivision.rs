use cubechow::blowup::{sd_level, DistinguishedSpace};
use cubechow::subdivision::{
    bidivision, cubical_subdivision, is_general_for, phi, phi_chain, phi_homotopy, phi_homotopy_with, sample_from,
    sample_general_position, vertex_terms, CandidateStream, GeneralPoint, SignConvention, SubdivisionForm,
};
use cubechow::{Ambient, CubeMorphism, Cycle, Scalar, SubdivisionError};
use cubechow_poly::{rat, Rational};
use proptest::prelude::*;

fn point(n: usize, coords: &[&str]) -> Cycle {
    Cycle::parse(Ambient::affine(0), n, -(n as i64), &[(1, coords)]).unwrap()
}

fn at(values: &[(i64, i64)]) -> GeneralPoint {
    GeneralPoint::new(values.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
}

#[test]
fn parameters_on_the_faces_are_rejected() {
    assert!(GeneralPoint::new(vec![rat(0, 1)]).is_err());
    assert!(GeneralPoint::new(vec![rat(1, 2), rat(1, 1)]).is_err());
}

#[test]
fn bidivision_of_a_point() {
    let z = point(1, &["y1 - 2"]);
    let d = bidivision(&z, 1, &rat(1, 3)).unwrap();
    let expected = Cycle::parse(Ambient::affine(0), 1, -1, &[(1, &["y1 - 6"]), (-1, &["y1 + 3/2"])]).unwrap();
    assert_eq!(d, expected);
    assert!(d.face(1, 0).unwrap().is_zero());
    assert!(bidivision(&Cycle::zero(Ambient::affine(0), 1, -1), 1, &rat(1, 3)).unwrap().is_zero());
}

#[test]
fn bidivision_onto_a_face_is_not_general() {
    let z = point(1, &["y1 - 1/2"]);
    let err = bidivision(&z, 1, &rat(1, 2)).unwrap_err();
    assert!(matches!(err, SubdivisionError::NonGeneral { .. }), "{err:?}");
}

#[test]
fn homotopy_of_a_point() {
    let z = point(1, &["y1 - 2"]);
    let c = at(&[(1, 3)]);
    let cert = phi_homotopy(&z, 1, &c).unwrap();
    assert!(cert.pass);
    // Level 0 pulls back to (1 - (2/3)(1 - z)) y = 2, level 1 to 1 - (2/3) y (1 - z) = 2.
    let expected = Cycle::parse(
        Ambient::affine(0),
        2,
        -1,
        &[(1, &["(1 - 2/3*(1 - y2))*y1 - 2"]), (-1, &["1 - 2/3*y1*(1 - y2) - 2"])],
    )
    .unwrap();
    assert_eq!(cert.homotopy, expected);
    let zero = phi_homotopy(&Cycle::zero(Ambient::affine(0), 1, -1), 1, &c).unwrap();
    assert!(zero.pass && zero.homotopy.is_zero());
}

#[test]
fn dropping_the_sign_breaks_the_certificate() {
    let z = point(2, &["y1 - 2", "y2 + 3"]);
    let c = at(&[(1, 3), (2, 5)]);
    assert!(phi_homotopy(&z, 1, &c).unwrap().pass);
    let unsigned = phi_homotopy_with(&z, 1, &c, SignConvention::Unsigned, None).unwrap();
    assert!(!unsigned.pass);
    assert_eq!(unsigned.lhs, unsigned.rhs.scale(-1));
}

#[test]
fn homotopy_needs_trivial_faces() {
    let line = Cycle::parse(Ambient::affine(0), 2, -1, &[(1, &["y1 + y2 - 3"])]).unwrap();
    let c = at(&[(1, 3), (2, 5)]);
    let err = phi_homotopy(&line, 1, &c).unwrap_err();
    assert!(matches!(err, SubdivisionError::NotNormalized { .. }));
    // Accepting every face through the membership hook lets the certificate run.
    let member = |_: &Cycle| true;
    assert!(phi_homotopy_with(&line, 1, &c, SignConvention::Alternating, Some(&member)).unwrap().pass);
}

#[test]
fn both_forms_in_one_dimension() {
    let z = point(1, &["y1 - 2"]);
    let c = at(&[(1, 3)]);
    let sigma = CubeMorphism::scaling(1, 1, &Scalar::constant(rat(1, 3), 0)).unwrap();
    let flipped = CubeMorphism::involution(1, 1, 0)
        .compose(&CubeMorphism::scaling(1, 1, &Scalar::constant(rat(2, 3), 0)).unwrap())
        .unwrap();
    let direct = z.pullback(&sigma).unwrap().try_sub(&z.pullback(&flipped).unwrap()).unwrap();
    for form in [SubdivisionForm::Iterated, SubdivisionForm::VertexSum] {
        assert_eq!(cubical_subdivision(&z, &c, form).unwrap(), direct);
    }
    let expected = Cycle::parse(Ambient::affine(0), 1, -1, &[(1, &["y1 - 6"]), (-1, &["y1 + 3/2"])]).unwrap();
    assert_eq!(direct, expected);
}

#[test]
fn both_forms_on_the_square() {
    let z = Cycle::parse(Ambient::affine(0), 2, -2, &[(2, &["y1 - 2", "y2 - 3"]), (-1, &["y1 + 1", "y2 - 1/2"])]).unwrap();
    let c = sample_general_position(&z, 11, 100).unwrap();
    assert_eq!(
        cubical_subdivision(&z, &c, SubdivisionForm::Iterated).unwrap(),
        cubical_subdivision(&z, &c, SubdivisionForm::VertexSum).unwrap()
    );
}

#[test]
fn vertex_terms_and_signs() {
    let z = point(3, &["y1 - 2", "y2 - 3", "y3 + 1"]);
    let c = at(&[(1, 3), (2, 5), (3, 7)]);
    let terms = vertex_terms(&z, &c).unwrap();
    assert_eq!(terms.len(), 8);
    assert_eq!(terms.iter().map(|(s, _)| s).sum::<i64>(), 0);
}

#[test]
fn chain_certificates() {
    let c = at(&[(1, 3)]);
    let cert = phi_chain(&point(1, &["y1 - 2"]), &c).unwrap();
    assert!(cert.pass);
    assert_eq!(cert.chain, phi(&point(1, &["y1 - 2"]), 1, &c, SignConvention::Alternating).unwrap());
    assert!(phi_chain(&Cycle::zero(Ambient::affine(0), 1, -1), &c).unwrap().pass);

    let z = point(2, &["y1 - 2", "y2 + 3"]);
    let cert = phi_chain(&z, &at(&[(1, 3), (2, 5)])).unwrap();
    assert!(cert.pass);
    assert_eq!(cert.stages.len(), 3);
    assert!(cert.stages.last().unwrap().is_normalized().unwrap());
}

#[test]
fn sampler_rejects_the_bad_parameter() {
    let z = point(1, &["y1 - 1/2"]);
    assert!(!is_general_for(&z, &at(&[(1, 2)])));
    let half = GeneralPoint::new(vec![rat(1, 2)]).unwrap();
    let candidates = vec![half.clone(), half.clone(), at(&[(1, 3)])];
    let sample = sample_from(&z, candidates, 10).unwrap();
    assert_eq!(sample.point.values(), &[rat(1, 3)]);
    assert_eq!(sample.rejected.len(), 2);
}

#[test]
fn sampler_budget_runs_out() {
    let z = point(1, &["y1 - 1/2"]);
    let half = GeneralPoint::new(vec![rat(1, 2)]).unwrap();
    let err = sample_from(&z, std::iter::repeat(half), 5).unwrap_err();
    assert!(matches!(err, SubdivisionError::BudgetExhausted { attempts: 5 }));
}

#[test]
fn zero_cycle_takes_the_first_sample() {
    let z = Cycle::zero(Ambient::affine(0), 2, -2);
    let first = CandidateStream::new(3, 2).next().unwrap();
    assert_eq!(sample_general_position(&z, 3, 1).unwrap(), first);
}

#[test]
fn candidates_have_small_height() {
    for c in CandidateStream::new(0, 3).take(200) {
        for v in c.values() {
            assert!(*v > Rational::from_integer(0.into()) && *v < Rational::from_integer(1.into()));
            assert!(*v.denom() <= 1000.into());
        }
    }
}

#[test]
fn level_zero_matches_the_vertex_sum() {
    let z = Cycle::parse(Ambient::affine(0), 2, -1, &[(1, &["y1 + y2 - 3"])]).unwrap();
    let c = sample_general_position(&z, 5, 100).unwrap();
    let level = sd_level(&z, &DistinguishedSpace::initial(2), &c).unwrap();
    assert_eq!(level.cycle, cubical_subdivision(&z, &c, SubdivisionForm::VertexSum).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sampling_is_deterministic(seed in any::<u64>()) {
        let z = point(2, &["y1 - 2", "y2 + 3"]);
        prop_assert_eq!(sample_general_position(&z, seed, 50).unwrap(), sample_general_position(&z, seed, 50).unwrap());
    }

    #[test]
    fn homotopy_holds_at_sampled_points(seed in any::<u64>()) {
        let z = point(2, &["y1 - 2", "y2 + 3"]);
        let c = sample_general_position(&z, seed, 50).unwrap();
        for i in 1..=2 {
            prop_assert!(phi_homotopy(&z, i, &c).unwrap().pass);
            prop_assert!(bidivision(&z, i, c.coord(i)).unwrap().is_normalized().unwrap());
        }
    }
}
