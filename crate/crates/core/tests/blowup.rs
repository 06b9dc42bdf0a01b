use cubechow::blowup::{
    homotopy_h0, permutation_sign, sd_level, strict_transform, DistinguishedSpace, HomotopyEnd, SignedMap, Tower,
};
use cubechow::subdivision::{cubical_subdivision, vertex_map, GeneralPoint, SubdivisionForm};
use cubechow::{vertex_sign, Ambient, BlowupError, Cycle};
use cubechow_poly::{parse_rational_function, rat, RationalFunction};
use proptest::prelude::*;

fn rf(n: usize, text: &str) -> RationalFunction {
    let names: Vec<String> = (1..=n).map(|i| format!("y{i}")).collect();
    parse_rational_function(text, &names).unwrap()
}

fn at(values: &[(i64, i64)]) -> GeneralPoint {
    GeneralPoint::new(values.iter().map(|&(a, b)| rat(a, b)).collect()).unwrap()
}

fn pentagon() -> DistinguishedSpace {
    DistinguishedSpace::initial(2).blow_up_face(&[2, 3]).unwrap()
}

fn counts(s: &DistinguishedSpace) -> (usize, usize, usize) {
    (s.divisors().len(), s.vertices().len(), s.edges().len())
}

fn vertex_with(s: &DistinguishedSpace, divisors: &[usize]) -> usize {
    s.vertices().iter().position(|v| v.divisors() == divisors).unwrap()
}

#[test]
fn initial_square() {
    let s = DistinguishedSpace::initial(2);
    assert_eq!(counts(&s), (4, 4, 4));
    let v = s.vertices().iter().find(|v| v.base_vertex() == Some(&[1, 0][..])).unwrap();
    assert_eq!(v.forward(), &[rf(2, "1 - y1"), rf(2, "y2")]);
    let signs = s.vertex_signs().unwrap();
    for (chart, sign) in s.vertices().iter().zip(signs) {
        assert_eq!(sign, vertex_sign(chart.base_vertex().unwrap()));
    }
}

#[test]
fn pentagon_counts_and_new_chart() {
    let s = pentagon();
    assert_eq!(counts(&s), (5, 5, 5));
    // Vertex on the exceptional divisor next to the strict transform of {y1 = 0}.
    let v = &s.vertices()[vertex_with(&s, &[2, 5])];
    assert_eq!(v.forward(), &[rf(2, "y1/(1 - y2)"), rf(2, "1 - y2")]);
}

#[test]
fn cube_edge_blow_up() {
    let tower = Tower::build(3, &[vec![2, 4]]).unwrap();
    assert_eq!(counts(&tower.spaces()[0]), (6, 8, 12));
    assert_eq!(counts(tower.top()), (7, 10, 15));
    tower.top().vertex_signs().unwrap();
}

#[test]
fn invalid_centers() {
    let s = DistinguishedSpace::initial(2);
    assert_eq!(s.blow_up_face(&[3]).unwrap_err(), BlowupError::CodimensionTooSmall);
    assert!(matches!(s.blow_up_face(&[1, 2]).unwrap_err(), BlowupError::NotAFace(_)));
}

#[test]
fn edge_permutations_are_mutually_inverse() {
    for s in [DistinguishedSpace::initial(2), pentagon(), Tower::build(3, &[vec![2, 4]]).unwrap().top().clone()] {
        for e in s.edges() {
            let (v, w) = e.ends;
            let there = s.edge_permutation(v, w).unwrap();
            let back = s.edge_permutation(w, v).unwrap();
            for (k, &image) in there.iter().enumerate() {
                assert_eq!(back[image], k);
            }
        }
    }
}

#[test]
fn square_edge_permutation_is_trivial() {
    let s = DistinguishedSpace::initial(2);
    let v = s.vertices().iter().position(|c| c.base_vertex() == Some(&[0, 0][..])).unwrap();
    let w = s.vertices().iter().position(|c| c.base_vertex() == Some(&[1, 0][..])).unwrap();
    // Slots [D2, D4] at v and [D1, D4] at w: y1 slot to 1 - y1 slot, y2 fixed.
    assert_eq!(s.edge_permutation(v, w).unwrap(), vec![0, 1]);
    assert!(matches!(
        s.edge_permutation(v, s.vertices().iter().position(|c| c.base_vertex() == Some(&[1, 1][..])).unwrap()),
        Err(BlowupError::NotAdjacent(..))
    ));
}

#[test]
fn pentagon_signs_follow_the_recurrence() {
    let s = pentagon();
    let signs = s.vertex_signs().unwrap();
    assert_eq!(signs[vertex_with(&s, &[3, 5])], 1);
    assert_eq!(signs[vertex_with(&s, &[2, 5])], -1);
    for e in s.edges() {
        let (v, w) = e.ends;
        let g = permutation_sign(&s.edge_permutation(v, w).unwrap());
        assert_eq!(signs[v], -g * signs[w]);
    }
}

#[test]
fn flipped_parity_is_inconsistent() {
    let s = DistinguishedSpace::initial(2);
    let bad = s.edges()[0].ends;
    let result = s.vertex_signs_with(|v, w| {
        let g = permutation_sign(&s.edge_permutation(v, w)?);
        Ok(if (v, w) == bad || (w, v) == bad { -g } else { g })
    });
    assert!(matches!(result, Err(BlowupError::InconsistentSigns(_))));
}

#[test]
fn charts_invert_on_every_fixture_tower() {
    for (n, steps) in [(2, vec![vec![2, 3]]), (2, vec![vec![2, 3], vec![3, 5]]), (3, vec![vec![2, 4]])] {
        let tower = Tower::build(n, &steps).unwrap();
        for space in tower.spaces() {
            assert!(space.vertices().iter().all(|v| v.is_consistent()));
            for e in space.edges() {
                let shared = space.vertices().iter().filter(|v| e.divisors.iter().all(|d| v.divisors().contains(d)));
                assert_eq!(shared.count(), 2);
            }
        }
    }
}

#[test]
fn level_zero_maps_are_the_vertex_maps() {
    let c = at(&[(1, 3)]);
    let maps = DistinguishedSpace::initial(1).phi_component_maps(&c).unwrap();
    let mut terms: Vec<(i64, RationalFunction)> = maps.iter().map(|m| (m.sign, m.coords[0].clone())).collect();
    terms.sort_by_key(|t| -t.0);
    assert_eq!(terms, vec![(1, rf(1, "y1/3")), (-1, rf(1, "1 - 2/3*y1"))]);

    let c = at(&[(1, 3), (2, 5)]);
    let s = DistinguishedSpace::initial(2);
    for m in s.phi_component_maps(&c).unwrap() {
        let base = s.vertices()[m.vertex].base_vertex().unwrap();
        assert_eq!(m.sign, vertex_sign(base));
        assert!(m.as_morphism().equals(&vertex_map(base, &c)));
    }
}

#[test]
fn pentagon_maps_rescale_each_chart() {
    let c = at(&[(1, 3), (2, 5)]);
    let s = pentagon();
    let maps = s.phi_component_maps(&c).unwrap();
    assert_eq!(maps.len(), 5);
    for m in maps {
        let chart = &s.vertices()[m.vertex];
        for (k, f) in chart.forward().iter().enumerate() {
            let value = f.eval(c.values()).unwrap();
            assert_eq!(f.compose(&m.coords, 2).unwrap(), RationalFunction::var(2, k).scale(&value));
        }
    }
}

#[test]
fn strict_transforms() {
    let point = Cycle::parse(Ambient::affine(0), 1, -1, &[(1, &["y1 - 2"])]).unwrap();
    let identity = SignedMap { vertex: 0, sign: 1, coords: vec![rf(1, "y1")] };
    assert_eq!(strict_transform(&point, &identity).unwrap(), point);
    let third = SignedMap { vertex: 0, sign: 1, coords: vec![rf(1, "y1/3")] };
    assert_eq!(strict_transform(&point, &third).unwrap(), Cycle::parse(Ambient::affine(0), 1, -1, &[(1, &["y1 - 6"])]).unwrap());

    // The line y1 + y2 = 3, parametrized by t -> (t, 3 - t), pulled back along
    // (u1, u2) -> (u1 / (1 - u2), 1 - u2): t = 2 + u2 and u1 = t (1 - u2).
    let line = Cycle::parse(Ambient::affine(0), 2, -1, &[(1, &["y1 + y2 - 3"])]).unwrap();
    let chart = SignedMap { vertex: 0, sign: -1, coords: vec![rf(2, "y1/(1 - y2)"), rf(2, "1 - y2")] };
    let expected = Cycle::parse(Ambient::affine(0), 2, -1, &[(-1, &["y1 - (2 + y2)*(1 - y2)"])]).unwrap();
    assert_eq!(strict_transform(&line, &chart).unwrap(), expected);
    assert!(strict_transform(&Cycle::zero(Ambient::affine(0), 2, -1), &chart).unwrap().is_zero());
}

#[test]
fn level_zero_subdivision_is_the_cubical_one() {
    let z = Cycle::parse(Ambient::affine(0), 2, -2, &[(1, &["y1 - 2", "y2 + 3"])]).unwrap();
    let c = at(&[(1, 3), (2, 5)]);
    let level = sd_level(&z, &DistinguishedSpace::initial(2), &c).unwrap();
    assert_eq!(level.cycle, cubical_subdivision(&z, &c, SubdivisionForm::Iterated).unwrap());
}

#[test]
fn demo_charts_match_the_hand_computation() {
    let z = Cycle::parse(Ambient::affine(2), 2, 0, &[(1, &["y1 - x1*x2", "y2 - x1"])]).unwrap();
    let tower = Tower::build(2, &[vec![2, 4]]).unwrap();
    let c = at(&[(1, 3), (2, 5)]);
    let top = sd_level(&z, tower.top(), &c).unwrap();
    assert!(top.admissibility.is_ok());
    let base = sd_level(&z, &tower.spaces()[0], &c).unwrap();
    assert!(base.admissibility.is_err());
    let parse = |gens: &[&str]| Cycle::parse(Ambient::affine(2), 2, 0, &[(1, gens)]).unwrap();
    // x1 = c2 u1 u2, c1 = c2 u1 x2 and x1 = c2 u2, c1 u1 = c2 x2.
    let on_e = [([4, 5], parse(&["x1 - 2/5*y1*y2", "1/3 - 2/5*y1*x2"])), ([2, 5], parse(&["x1 - 2/5*y2", "1/3*y1 - 2/5*x2"]))];
    for (divisors, expected) in on_e {
        let v = vertex_with(tower.top(), &divisors);
        let (_, _, term) = top.terms.iter().find(|t| t.0 == v).unwrap();
        assert_eq!(term, &expected, "{divisors:?}");
    }
}

#[test]
fn h0_on_the_pentagon() {
    let z = Cycle::parse(Ambient::affine(0), 2, -2, &[(1, &["y1 - 2", "y2 + 3"])]).unwrap();
    let tower = Tower::build(2, &[vec![2, 3]]).unwrap();
    let c = at(&[(1, 3), (2, 5), (3, 7)]);
    let cert = homotopy_h0(&z, &tower, &c, HomotopyEnd::One).unwrap();
    assert!(cert.pass, "{} vs {}", cert.lhs, cert.rhs);
    assert!(!cert.homotopy.is_zero());
    let wrong = homotopy_h0(&z, &tower, &c, HomotopyEnd::Zero).unwrap();
    assert!(!wrong.pass);
}

#[test]
fn h0_needs_trivial_faces() {
    let line = Cycle::parse(Ambient::affine(0), 2, -1, &[(1, &["y1 + y2 - 3"])]).unwrap();
    let tower = Tower::build(2, &[vec![2, 3]]).unwrap();
    let err = homotopy_h0(&line, &tower, &at(&[(1, 3), (2, 5), (3, 7)]), HomotopyEnd::One).unwrap_err();
    assert!(matches!(err, BlowupError::NotNormalized { .. }));
}

#[test]
fn h0_on_the_trivial_tower() {
    let z = Cycle::parse(Ambient::affine(0), 2, -2, &[(1, &["y1 - 2", "y2 + 3"])]).unwrap();
    let tower = Tower::build(2, &[]).unwrap();
    let cert = homotopy_h0(&z, &tower, &at(&[(1, 3), (2, 5), (3, 7)]), HomotopyEnd::One).unwrap();
    assert!(cert.pass && cert.lhs.is_zero() && cert.rhs.is_zero());
}

#[test]
fn tower_json_round_trip() {
    let tower = Tower::build(2, &[vec![2, 3], vec![3, 5]]).unwrap();
    let back = Tower::from_json(&serde_json::from_str(&serde_json::to_string(&tower.to_json()).unwrap()).unwrap()).unwrap();
    assert_eq!(back.steps(), tower.steps());
    assert_eq!(counts(back.top()), (6, 6, 6));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn vertex_blow_ups_of_the_square_stay_consistent(corner in 0usize..4, second in 0usize..2) {
        let corners = [[2, 4], [2, 3], [1, 4], [1, 3]];
        let first = corners[corner].to_vec();
        let s = DistinguishedSpace::initial(2).blow_up_face(&first).unwrap();
        // Blow up one of the two new vertices on the exceptional divisor.
        let on_e: Vec<Vec<usize>> = s.vertices().iter().map(|v| v.divisors().to_vec()).filter(|d| d.contains(&5)).collect();
        let t = s.blow_up_face(&on_e[second]).unwrap();
        prop_assert_eq!(counts(&t), (6, 6, 6));
        prop_assert!(t.vertex_signs().is_ok());
        prop_assert!(t.vertices().iter().all(|v| v.is_consistent()));
    }
}
