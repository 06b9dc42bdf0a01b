//! Symbolic verification of the face identities of the homotopy maps.

use cubechow_poly::parse_rational_function;

use crate::morphism::{symbolic_parameters, CubeMorphism, MorphismKind, Scalar};
use crate::report::VerificationReport;

pub const ETA_STATEMENT: &str =
    "Boundary values of the two-variable homotopy maps: eta0(y,0) = c*y, eta0(y,1) = y, \
     eta0(0,z) = 0, eta0(1,z) = eta1(1,z) = 1-(1-c)(1-z), eta1(y,0) = 1-(1-c)*y, \
     eta1(y,1) = eta1(0,z) = 1";

pub const H_FACE_STATEMENT: &str =
    "Faces of the homotopy maps H: composites with face inclusions reduce to lower-dimensional \
     homotopy maps, projections, scalings and involutions";

/// Morphism `□^1 → □^1` given by a coordinate string in `y1` and `c1`.
fn expected_1d(text: &str) -> CubeMorphism {
    let names = vec!["y1".to_string(), "c1".to_string()];
    let coord = parse_rational_function(text, &names).expect("table entry parses");
    CubeMorphism::from_coords(1, 1, vec![coord], MorphismKind::General).expect("one parameter")
}

/// Checks the eight boundary identities for the given construction of the maps.
pub fn verify_eta_table_for<F>(eta: F) -> VerificationReport
where
    F: Fn(u8, &Scalar) -> CubeMorphism,
{
    let c = Scalar::param(0, 1);
    let cases: [(u8, usize, u8, &str); 8] = [
        (0, 2, 0, "c1*y1"),
        (0, 2, 1, "y1"),
        (0, 1, 0, "0"),
        (0, 1, 1, "1 - (1 - c1)*(1 - y1)"),
        (1, 2, 0, "1 - (1 - c1)*y1"),
        (1, 2, 1, "1"),
        (1, 1, 0, "1"),
        (1, 1, 1, "1 - (1 - c1)*(1 - y1)"),
    ];
    let mut report = VerificationReport::new("eta-table", ETA_STATEMENT);
    for (level, slot, eps, expected) in cases {
        let arg = match (slot, eps) {
            (2, e) => format!("(y,{e})"),
            (_, e) => format!("({e},z)"),
        };
        let lhs = eta(level, &c)
            .compose(&CubeMorphism::face_inclusion(2, slot, eps, 1))
            .expect("dimensions match");
        report.compare(format!("eta{level}{arg}"), &lhs, &expected_1d(expected));
    }
    report
}

pub fn verify_eta_table() -> VerificationReport {
    verify_eta_table_for(CubeMorphism::eta)
}

/// `c` with entry `j` (1-based) removed, still living in the ring with `n` parameters.
fn drop_param(c: &[Scalar], j: usize) -> Vec<Scalar> {
    c.iter().enumerate().filter(|(k, _)| *k != j - 1).map(|(_, s)| s.clone()).collect()
}

/// Cyclic shift moving coordinate `n` to slot `i`, other coordinates keep their order.
fn move_last_to(n: usize, i: usize, nparams: usize) -> CubeMorphism {
    let perm: Vec<usize> = (0..n)
        .map(|k| match (k + 1).cmp(&i) {
            std::cmp::Ordering::Less => k,
            std::cmp::Ordering::Equal => n - 1,
            std::cmp::Ordering::Greater => k - 1,
        })
        .collect();
    CubeMorphism::permutation(&perm, nparams)
}

fn compose_all(maps: &[CubeMorphism]) -> CubeMorphism {
    let mut acc = maps[0].clone();
    for m in &maps[1..] {
        acc = acc.compose(m).expect("chain dimensions match");
    }
    acc
}

/// All five face identities for `H^{n+1}_{(l),c,i}`, `1 <= n <= max_n`,
/// with every `c_i` a formal parameter.
pub fn verify_h_face_table(max_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new("h-faces", H_FACE_STATEMENT);
    for n in 1..=max_n {
        verify_h_faces_in_dim(n, &mut report);
    }
    report
}

fn verify_h_faces_in_dim(n: usize, report: &mut VerificationReport) {
    let r = n;
    let c = symbolic_parameters(n);
    let h = |level: u8, i: usize| CubeMorphism::homotopy_map(n, level, &c, i);
    let face = |dim: usize, j: usize, eps: u8| CubeMorphism::face_inclusion(dim, j, eps, r);
    for i in 1..=n {
        for level in 0..=1u8 {
            for j in 1..=n + 1 {
                for eps in 0..=1u8 {
                    let lhs = h(level, i).compose(&face(n + 1, j, eps)).unwrap();
                    let id = format!("n={n} i={i} j={j} eps={eps} l={level}");
                    if j <= n && j != i {
                        // Case 1: commute the face past a smaller homotopy map.
                        let shifted = if j < i { i - 1 } else { i };
                        let smaller = CubeMorphism::homotopy_map(n - 1, level, &drop_param(&c, j), shifted);
                        let rhs = face(n, j, eps).compose(&smaller).unwrap();
                        let tag = if j < i { "j<i" } else { "j>i" };
                        report.compare(format!("{id} ({tag})"), &lhs, &rhs);
                    } else if j == i && eps == 0 {
                        // Case 2: insert the level at slot i and forget the last coordinate.
                        let rhs = face(n, i, level).compose(&CubeMorphism::projection(n, n, r)).unwrap();
                        report.compare(format!("{id} (j=i, eps=0)"), &lhs, &rhs);
                    } else if j == i {
                        // Case 3: both levels agree, with an explicit factorization.
                        let other = h(1 - level, i).compose(&face(n + 1, j, 1)).unwrap();
                        report.compare(format!("{id} (levels agree)"), &lhs, &other);
                        let one_minus = c[i - 1].one_minus();
                        let rhs = compose_all(&[
                            CubeMorphism::involution(n, i, r),
                            CubeMorphism::scaling(n, i, &one_minus).unwrap(),
                            move_last_to(n, i, r),
                            CubeMorphism::involution(n, n, r),
                        ]);
                        report.compare(format!("{id} (factorization)"), &lhs, &rhs);
                    } else {
                        // Cases 4 and 5: the faces along the homotopy coordinate.
                        let rhs = match (level, eps) {
                            (0, 0) => CubeMorphism::scaling(n, i, &c[i - 1]).unwrap(),
                            (0, _) => CubeMorphism::identity(n, r),
                            (_, 0) => CubeMorphism::involution(n, i, r)
                                .compose(&CubeMorphism::scaling(n, i, &c[i - 1].one_minus()).unwrap())
                                .unwrap(),
                            _ => face(n, i, 1).compose(&CubeMorphism::projection(n, i, r)).unwrap(),
                        };
                        report.compare(format!("{id} (j=n+1)"), &lhs, &rhs);
                    }
                }
            }
        }
    }
}

/// `ι_j^δ ∘ ι_i^ε = ι_i^ε ∘ ι_{j-1}^δ` for `i < j`, on cubes up to dimension `max_n`.
pub fn verify_cubical_relations(max_n: usize) -> VerificationReport {
    let mut report = VerificationReport::new(
        "cubical-relations",
        "Iterated face inclusions commute up to the index shift",
    );
    for n in 2..=max_n {
        for j in 2..=n {
            for i in 1..j {
                for eps in 0..=1u8 {
                    for delta in 0..=1u8 {
                        let lhs = CubeMorphism::face_inclusion(n, j, delta, 0)
                            .compose(&CubeMorphism::face_inclusion(n - 1, i, eps, 0))
                            .unwrap();
                        let rhs = CubeMorphism::face_inclusion(n, i, eps, 0)
                            .compose(&CubeMorphism::face_inclusion(n - 1, j - 1, delta, 0))
                            .unwrap();
                        report.compare(format!("n={n} i={i} j={j} eps={eps} delta={delta}"), &lhs, &rhs);
                    }
                }
            }
        }
    }
    report
}
