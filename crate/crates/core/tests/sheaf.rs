use cubechow::fixtures::Corpus;
use cubechow::sheaf::{class_equal, glue, in_kernel, mv_check, OpenSet, QuotientClass};
use cubechow::suites::kernel_law;
use cubechow::{Ambient, Cycle, SheafError};
use cubechow_poly::parse_polynomial;
use proptest::prelude::*;

/// Weighted points `(x, y)` over the affine line, in a one-dimensional cube.
fn points(list: &[(i64, i64, i64)]) -> Cycle {
    let gens: Vec<(i64, [String; 2])> =
        list.iter().map(|&(k, x, y)| (k, [format!("x1 - ({x})"), format!("y1 - ({y})")])).collect();
    let refs: Vec<Vec<&str>> = gens.iter().map(|(_, g)| g.iter().map(String::as_str).collect()).collect();
    let comps: Vec<(i64, &[&str])> = gens.iter().zip(&refs).map(|((k, _), r)| (*k, r.as_slice())).collect();
    Cycle::parse(Ambient::affine(1), 1, -1, &comps).unwrap()
}

fn off(text: &str) -> OpenSet {
    OpenSet::parse(1, &[text]).unwrap()
}

#[test]
fn kernel_membership() {
    let x = parse_polynomial("x1", &["x1".to_string()]).unwrap();
    assert!(in_kernel(&points(&[(1, 0, 2), (-3, 0, 5)]), std::slice::from_ref(&x)));
    assert!(!in_kernel(&points(&[(1, 0, 2), (1, 1, 2)]), &[x]));
}

#[test]
fn classes_agree_off_the_closed_set() {
    let u = off("x1");
    assert!(class_equal(&points(&[(1, 0, 2), (1, 1, 3)]), &points(&[(1, 1, 3)]), &u).unwrap());
    assert!(!class_equal(&points(&[(1, 1, 2)]), &points(&[(1, 1, 3)]), &u).unwrap());
    assert!(!class_equal(&points(&[(1, 0, 2)]), &Cycle::zero(Ambient::affine(1), 1, -1), &OpenSet::whole(1)).unwrap());
}

#[test]
fn gluing_equal_representatives_needs_no_correction() {
    let z = points(&[(2, 3, 2), (1, 0, 5)]);
    let g = glue(&z, &z, &off("x1"), &off("x1 - 1")).unwrap();
    assert_eq!(g.glued, z);
    assert!(g.delta_u.is_zero() && g.delta_v.is_zero() && g.residual.is_zero());
}

#[test]
fn gluing_splits_the_difference() {
    let (u, v) = (off("x1"), off("x1 - 1"));
    let x1 = points(&[(1, 2, 2), (1, 1, 3)]);
    let x2 = points(&[(1, 2, 2), (1, 0, 5)]);
    let g = glue(&x1, &x2, &u, &v).unwrap();
    assert!(class_equal(&g.glued, &x1, &u).unwrap());
    assert!(class_equal(&g.glued, &x2, &v).unwrap());
    assert_eq!(g.glued, points(&[(1, 2, 2), (1, 1, 3), (1, 0, 5)]));
}

#[test]
fn gluing_disagreeing_representatives_is_refused() {
    let err = glue(&points(&[(1, 2, 2)]), &points(&[(1, 2, 3)]), &off("x1"), &off("x1 - 1")).unwrap_err();
    assert!(matches!(err, SheafError::PreconditionViolated(_)));
}

#[test]
fn open_set_operations() {
    let (u, v) = (off("x1"), off("x1 - 1"));
    let both = u.intersect(&v);
    assert!(both.is_subset_of(&u) && both.is_subset_of(&v));
    let either = u.union(&v);
    assert!(either.is_whole());
    assert!(u.is_subset_of(&OpenSet::whole(1)));
    assert!(!OpenSet::whole(1).is_subset_of(&u));
}

#[test]
fn quotient_class_restriction() {
    let class = QuotientClass::new(points(&[(1, 0, 2), (1, 1, 3)]), off("x1"));
    let smaller = class.restrict(&off("x1^2 - x1")).unwrap();
    let other = QuotientClass::new(points(&[(1, 1, 3)]), off("x1^2 - x1"));
    assert!(smaller.equals(&other).unwrap());
    // Dropping x1 = 1 makes the two classes agree.
    let tiny = QuotientClass::new(Cycle::zero(Ambient::affine(1), 1, -1), off("x1^2 - x1"));
    assert!(smaller.equals(&tiny).unwrap());
    assert!(matches!(class.restrict(&OpenSet::whole(1)), Err(SheafError::PreconditionViolated(_))));
    assert!(class.equals(&other).is_err());
}

#[test]
fn restrictions_compose() {
    let z = points(&[(1, 0, 2), (1, 1, 3), (1, 2, 5)]);
    let big = QuotientClass::new(z, OpenSet::whole(1));
    let path = big.restrict(&off("x1")).unwrap().restrict(&off("x1^2 - x1")).unwrap();
    let direct = big.restrict(&off("x1^2 - x1")).unwrap();
    assert!(path.equals(&direct).unwrap());
}

#[test]
fn exactness_on_the_fixture_corpus() {
    let corpus = Corpus::builtin();
    let (u, v) = corpus.sheaf.opens().unwrap();
    let cycles = corpus.sheaf.cycles().unwrap();
    let report = mv_check(&u, &v, &cycles).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.entries.iter().any(|e| e.id.starts_with("ker d1 in im d0")));
    let whole = OpenSet::whole(1);
    assert!(mv_check(&whole, &whole, &cycles).unwrap().passed());
}

#[test]
fn kernel_law_holds() {
    let cycles = Corpus::builtin().sheaf.cycles().unwrap();
    let report = kernel_law(&cycles, 1, 3, 40).unwrap();
    assert!(report.passed(), "{report}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kernel_law_for_any_seed(seed in any::<u64>()) {
        let cycles = Corpus::builtin().sheaf.cycles().unwrap();
        prop_assert!(kernel_law(&cycles, 1, seed, 10).unwrap().passed());
    }

    #[test]
    fn restriction_keeps_the_class(xs in proptest::collection::vec((-2i64..=2, 0i64..=3, 2i64..=6), 0..4)) {
        let list: Vec<(i64, i64, i64)> = xs.into_iter().filter(|t| t.0 != 0).collect();
        let z = points(&list);
        let class = QuotientClass::new(z.clone(), off("x1"));
        let smaller = class.restrict(&off("x1^2 - x1")).unwrap();
        prop_assert!(smaller.equals(&QuotientClass::new(z, off("x1^2 - x1"))).unwrap());
    }
}
