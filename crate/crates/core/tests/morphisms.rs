use cubechow::morphism::{symbolic_parameters, MorphismJson};
use cubechow::tables::{verify_cubical_relations, verify_eta_table, verify_eta_table_for, verify_h_face_table};
use cubechow::{vertex_sign, vertices, BasicMorphism, CubeMorphism, MorphismError, MorphismKind, Scalar};
use cubechow_poly::rat;
use proptest::prelude::*;

/// Morphism from coordinate strings in `y1..yn, c1..cr`.
fn coords(source_dim: usize, nparams: usize, text: &[&str]) -> CubeMorphism {
    CubeMorphism::from_json(&MorphismJson {
        source_dim,
        target_dim: text.len(),
        nparams,
        coords: text.iter().map(|s| s.to_string()).collect(),
        kind: MorphismKind::General,
    })
    .unwrap()
}

#[test]
fn involution_on_the_square() {
    assert!(CubeMorphism::involution(2, 2, 0).equals(&coords(2, 0, &["y1", "1 - y2"])));
}

#[test]
fn scaling_by_a_symbol() {
    let c = Scalar::param(0, 1);
    assert!(CubeMorphism::scaling(1, 1, &c).unwrap().equals(&coords(1, 1, &["c1*y1"])));
}

#[test]
fn scaling_by_zero_or_one_is_rejected() {
    for v in [rat(0, 1), rat(1, 1)] {
        let err = BasicMorphism::Scaling { j: 1, scalar: Scalar::constant(v, 0) }.build(1, 0).unwrap_err();
        assert!(matches!(err, MorphismError::InvalidScalar), "{err:?}");
    }
}

#[test]
fn out_of_range_index_is_rejected() {
    let err = BasicMorphism::Involution { j: 3 }.build(2, 0).unwrap_err();
    assert!(matches!(err, MorphismError::IndexOutOfRange { index: 3, dim: 2 }));
}

#[test]
fn vertex_map_formula() {
    let c = symbolic_parameters(2);
    let v = [0u8, 1];
    let f = CubeMorphism::vertex_flip(&v, 2).compose(&CubeMorphism::vertex_scaling(&v, &c)).unwrap();
    assert!(f.equals(&coords(2, 2, &["c1*y1", "1 - (1 - c2)*y2"])));
}

#[test]
fn eta_boundary_values() {
    let c = Scalar::param(0, 1);
    let at = |level: u8, j: usize, eps: u8| {
        CubeMorphism::eta(level, &c).compose(&CubeMorphism::face_inclusion(2, j, eps, 1)).unwrap()
    };
    assert!(at(0, 2, 1).equals(&coords(1, 1, &["y1"])));
    assert!(at(1, 1, 0).equals(&coords(1, 1, &["1"])));
}

#[test]
fn eta_at_one_forgets_the_homotopy_coordinate() {
    let eta = CubeMorphism::eta(0, &Scalar::constant(rat(1, 1), 0));
    assert!(eta.equals(&coords(2, 0, &["y1"])));
}

#[test]
fn homotopy_map_in_one_dimension() {
    let c = symbolic_parameters(1);
    let h = CubeMorphism::homotopy_map(1, 0, &c, 1);
    assert!(h.equals(&coords(2, 1, &["(1 - (1 - c1)*(1 - y2))*y1"])));
}

#[test]
fn homotopy_map_end_faces() {
    let c = symbolic_parameters(2);
    for i in 1..=2 {
        let h = CubeMorphism::homotopy_map(2, 0, &c, i);
        let top = h.compose(&CubeMorphism::face_inclusion(3, 3, 1, 2)).unwrap();
        assert!(top.equals(&CubeMorphism::identity(2, 2)));
        let bottom = h.compose(&CubeMorphism::face_inclusion(3, 3, 0, 2)).unwrap();
        assert!(bottom.equals(&CubeMorphism::scaling(2, i, &c[i - 1]).unwrap()));
    }
}

#[test]
fn involution_is_its_own_inverse() {
    let t = CubeMorphism::involution(3, 2, 0);
    assert!(t.compose(&t).unwrap().equals(&CubeMorphism::identity(3, 0)));
}

#[test]
fn inverse_scalings_cancel() {
    let a = CubeMorphism::scaling(1, 1, &Scalar::constant(rat(3, 7), 0)).unwrap();
    let b = CubeMorphism::scaling(1, 1, &Scalar::constant(rat(7, 3), 0)).unwrap();
    assert!(a.compose(&b).unwrap().equals(&CubeMorphism::identity(1, 0)));
}

#[test]
fn eta_factors_through_multiplication() {
    let c = Scalar::param(0, 1);
    let chain = [
        CubeMorphism::multiplication(1),
        CubeMorphism::involution(2, 2, 1),
        CubeMorphism::scaling(2, 2, &c.one_minus()).unwrap(),
        CubeMorphism::involution(2, 2, 1),
    ];
    let composite = chain[1..].iter().fold(chain[0].clone(), |acc, f| acc.compose(f).unwrap());
    assert!(composite.equals(&CubeMorphism::eta(0, &c)));
}

#[test]
fn compose_checks_dimensions() {
    let err = CubeMorphism::identity(2, 0).compose(&CubeMorphism::identity(3, 0)).unwrap_err();
    assert!(matches!(err, MorphismError::DimensionMismatch { expected: 2, found: 3 }));
}

#[test]
fn vertex_signs() {
    assert_eq!(vertex_sign(&[0, 0]), 1);
    assert_eq!(vertex_sign(&[1, 0]), -1);
    assert_eq!(vertex_sign(&[1, 0, 1]), 1);
}

#[test]
fn eta_table_passes_with_eight_entries() {
    let r = verify_eta_table();
    assert_eq!(r.entries.len(), 8);
    assert!(r.passed(), "{r}");
}

#[test]
fn corrupted_eta_is_caught() {
    // Sign flipped inside the level-0 map.
    let r = verify_eta_table_for(|level, c| {
        if level == 0 {
            coords(2, 1, &["(1 + (1 - c1)*(1 - y2))*y1"])
        } else {
            CubeMorphism::eta(level, c)
        }
    });
    assert!(!r.passed());
    assert!(r.failures().all(|e| e.lhs.is_some() && e.rhs.is_some()));
}

#[test]
fn h_face_table_up_to_four() {
    let r = verify_h_face_table(4);
    assert!(r.passed(), "{r}");
    for id in ["n=2 i=1 j=2 eps=0 l=1 (j>i)", "n=2 i=1 j=3 eps=0 l=1 (j=n+1)"] {
        assert!(r.entries.iter().any(|e| e.id == id && e.pass), "{id}");
    }
    for n in 1..=4 {
        for i in 1..=n {
            let id = format!("n={n} i={i} j={i} eps=1 l=0 (levels agree)");
            assert!(r.entries.iter().any(|e| e.id == id && e.pass), "{id}");
        }
    }
}

#[test]
fn cubical_relations_up_to_four() {
    assert!(verify_cubical_relations(4).passed());
}

#[test]
fn morphism_json_round_trip() {
    let c = symbolic_parameters(2);
    let h = CubeMorphism::homotopy_map(2, 1, &c, 2);
    assert!(CubeMorphism::from_json(&h.to_json()).unwrap().equals(&h));
}

fn fixture_morphisms() -> Vec<CubeMorphism> {
    let c = symbolic_parameters(2);
    vec![
        CubeMorphism::identity(2, 2),
        CubeMorphism::involution(2, 1, 2),
        CubeMorphism::involution(2, 1, 2).compose(&CubeMorphism::involution(2, 1, 2)).unwrap(),
        CubeMorphism::scaling(2, 2, &c[1]).unwrap(),
        CubeMorphism::vertex_scaling(&[0, 1], &c),
        CubeMorphism::vertex_flip(&[1, 1], 2),
    ]
}

proptest! {
    #[test]
    fn equality_is_an_equivalence(a in 0usize..6, b in 0usize..6, c in 0usize..6) {
        let fs = fixture_morphisms();
        prop_assert!(fs[a].equals(&fs[a]));
        prop_assert_eq!(fs[a].equals(&fs[b]), fs[b].equals(&fs[a]));
        if fs[a].equals(&fs[b]) && fs[b].equals(&fs[c]) {
            prop_assert!(fs[a].equals(&fs[c]));
        }
    }

    #[test]
    fn adjacent_vertices_have_opposite_signs(n in 1usize..=5, k in 0usize..32, flip in 0usize..5) {
        let vs = vertices(n);
        let v = &vs[k % vs.len()];
        let mut w = v.clone();
        let j = flip % n;
        w[j] = 1 - w[j];
        prop_assert_eq!(vertex_sign(v), -vertex_sign(&w));
    }

    #[test]
    fn face_inclusions_commute_up_to_shift(n in 2usize..=4, a in 1usize..=4, b in 1usize..=4, eps in 0u8..=1, delta in 0u8..=1) {
        let (i, j) = (a.min(b).min(n - 1), a.max(b).min(n));
        prop_assume!(i < j);
        let lhs = CubeMorphism::face_inclusion(n, j, delta, 0).compose(&CubeMorphism::face_inclusion(n - 1, i, eps, 0)).unwrap();
        let rhs = CubeMorphism::face_inclusion(n, i, eps, 0).compose(&CubeMorphism::face_inclusion(n - 1, j - 1, delta, 0)).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }
}
