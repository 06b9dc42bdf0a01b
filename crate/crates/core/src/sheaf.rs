//! Support kernels, the quotient presheaf `U ↦ z(Y)/G(Y∖U)`, gluing and the
//! Mayer–Vietoris checks for two opens.

use std::fmt;

use cubechow_poly::{parse_polynomial, Ideal, Polynomial};

use crate::cycle::{Ambient, Cycle};
use crate::error::{CycleError, SheafError};
use crate::report::VerificationReport;

/// Open subset `Y ∖ V(closed)` of affine space; the closed set is kept as a
/// reduced basis in `x1..xm`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpenSet {
    ambient_dim: usize,
    closed: Vec<Polynomial>,
}

impl OpenSet {
    pub fn whole(ambient_dim: usize) -> Self {
        OpenSet { ambient_dim, closed: vec![Polynomial::one(ambient_dim)] }
    }

    pub fn complement(ambient_dim: usize, closed: Vec<Polynomial>) -> Result<Self, CycleError> {
        let ideal = Ideal::new(Ambient::base_context(ambient_dim), closed)?;
        Ok(OpenSet { ambient_dim, closed: ideal.groebner().to_vec() })
    }

    pub fn parse(ambient_dim: usize, closed: &[&str]) -> Result<Self, CycleError> {
        let names: Vec<String> = (1..=ambient_dim).map(|i| format!("x{i}")).collect();
        let polys = closed
            .iter()
            .map(|g| parse_polynomial(g, &names))
            .collect::<Result<Vec<_>, _>>()?;
        OpenSet::complement(ambient_dim, polys)
    }

    pub fn closed(&self) -> &[Polynomial] {
        &self.closed
    }

    fn ideal(&self) -> Ideal {
        Ideal::new(Ambient::base_context(self.ambient_dim), self.closed.clone()).expect("ambient ring")
    }

    pub fn is_whole(&self) -> bool {
        self.closed.len() == 1 && self.closed[0].is_one()
    }

    /// `U ∩ V`: the union of the closed complements, via the product ideal.
    pub fn intersect(&self, other: &OpenSet) -> OpenSet {
        OpenSet { ambient_dim: self.ambient_dim, closed: self.ideal().product(&other.ideal()).groebner().to_vec() }
    }

    /// `U ∪ V`: the intersection of the closed complements, via the ideal sum.
    pub fn union(&self, other: &OpenSet) -> OpenSet {
        OpenSet { ambient_dim: self.ambient_dim, closed: self.ideal().sum(&other.ideal()).groebner().to_vec() }
    }

    /// `self ⊆ other`, i.e. the complement of `other` lies in the complement of `self`.
    pub fn is_subset_of(&self, other: &OpenSet) -> bool {
        other.ideal().variety_contained(&self.ideal())
    }
}

impl fmt::Display for OpenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.ambient_dim).map(|i| format!("x{i}")).collect();
        let gens: Vec<String> = self.closed.iter().map(|g| g.to_string_with(&names)).collect();
        write!(f, "Y - V({})", gens.join(", "))
    }
}

/// `Z ∈ G(W)`: `Z` restricts to zero off `V(W)`.
pub fn in_kernel(z: &Cycle, closed: &[Polynomial]) -> bool {
    z.is_supported_in(closed)
}

/// `Z1` and `Z2` define the same class over `U`.
pub fn class_equal(z1: &Cycle, z2: &Cycle, u: &OpenSet) -> Result<bool, SheafError> {
    Ok(z1.try_sub(z2)?.is_supported_in(u.closed()))
}

/// Class of a global representative in `z(Y)/G(Y ∖ U)`.
#[derive(Clone, Debug)]
pub struct QuotientClass {
    representative: Cycle,
    modulus: OpenSet,
}

impl QuotientClass {
    pub fn new(representative: Cycle, modulus: OpenSet) -> Self {
        QuotientClass { representative, modulus }
    }

    pub fn representative(&self) -> &Cycle {
        &self.representative
    }

    pub fn modulus(&self) -> &OpenSet {
        &self.modulus
    }

    /// Restriction to a smaller open; the representative is reused.
    pub fn restrict(&self, smaller: &OpenSet) -> Result<QuotientClass, SheafError> {
        if !smaller.is_subset_of(&self.modulus) {
            return Err(SheafError::PreconditionViolated(format!("{smaller} is not inside {}", self.modulus)));
        }
        Ok(QuotientClass { representative: self.representative.clone(), modulus: smaller.clone() })
    }

    /// Equality of classes over the same open.
    pub fn equals(&self, other: &QuotientClass) -> Result<bool, SheafError> {
        if self.modulus != other.modulus {
            return Err(SheafError::PreconditionViolated("classes over different opens".into()));
        }
        class_equal(&self.representative, &other.representative, &self.modulus)
    }
}

/// Output of [`glue`]: `glued = x1 + delta_u = x2 + delta_v`.
#[derive(Clone, Debug)]
pub struct Glued {
    pub glued: Cycle,
    /// Supported off `U`.
    pub delta_u: Cycle,
    /// Supported off `V`.
    pub delta_v: Cycle,
    /// What remains of `x2 - x1` after both corrections; always zero.
    pub residual: Cycle,
}

/// Glues global representatives `x1` over `U` and `x2` over `V` that agree on
/// `U ∩ V`. The difference `x2 - x1` lives off `U ∩ V`; its part off `U` is added
/// to `x1`, and the rest then lies off `V`.
pub fn glue(x1: &Cycle, x2: &Cycle, u: &OpenSet, v: &OpenSet) -> Result<Glued, SheafError> {
    let both = u.intersect(v);
    let diff = x2.try_sub(x1)?;
    if !diff.is_supported_in(both.closed()) {
        return Err(SheafError::PreconditionViolated("x1 - x2 is not supported off U ∩ V".into()));
    }
    let mut off_u = Cycle::zero(diff.ambient().clone(), diff.cube_dim(), diff.rel_dim());
    let mut off_v = off_u.clone();
    for comp in diff.components() {
        let single = single_component(&diff, comp.coefficient(), comp.generators())?;
        if single.is_supported_in(u.closed()) {
            off_u = off_u.try_add(&single)?;
        } else {
            off_v = off_v.try_add(&single)?;
        }
    }
    let glued = x1.try_add(&off_u)?;
    let delta_u = glued.try_sub(x1)?;
    let delta_v = glued.try_sub(x2)?;
    let residual = diff.try_sub(&delta_u.try_sub(&delta_v)?)?;
    if !glued.is_admissible() {
        return Err(SheafError::InadmissibleGlue);
    }
    if !delta_u.is_supported_in(u.closed()) || !delta_v.is_supported_in(v.closed()) || !residual.is_zero() {
        return Err(SheafError::PreconditionViolated("residual after gluing".into()));
    }
    Ok(Glued { glued, delta_u, delta_v, residual })
}

fn single_component(like: &Cycle, coefficient: i64, generators: &[Polynomial]) -> Result<Cycle, CycleError> {
    Cycle::build(
        like.ambient().clone(),
        like.cube_dim(),
        like.rel_dim(),
        vec![crate::cycle::ComponentSpec { coefficient, generators: generators.to_vec(), irreducible: true }],
    )
}

pub const MV_STATEMENT: &str =
    "Mayer-Vietoris for the quotient presheaf: 0 -> S(U u V) -> S(U) + S(V) -> S(U n V) -> 0 is exact";

/// Exactness checks of the two-open sequence on a corpus of global cycles.
pub fn mv_check(u: &OpenSet, v: &OpenSet, corpus: &[Cycle]) -> Result<VerificationReport, SheafError> {
    let mut report = VerificationReport::new("mv-exactness", MV_STATEMENT);
    let both = u.intersect(v);
    let either = u.union(v);
    let ambient_dim = corpus.first().map_or(0, |z| z.ambient().dim());
    let whole = OpenSet::whole(ambient_dim);
    for (a, z) in corpus.iter().enumerate() {
        // δ1 δ0 (z) = z|U∩V - z|U∩V.
        report.check(format!("d1.d0 = 0 on #{a}"), class_equal(z, z, &both)?);
        // δ1 (z, 0) = z: every class over U ∩ V comes from a global representative.
        let zero = Cycle::zero(z.ambient().clone(), z.cube_dim(), z.rel_dim());
        report.check(format!("d1 surjective on #{a}"), class_equal(&z.try_sub(&zero)?, z, &both)?);
    }
    for (a, x1) in corpus.iter().enumerate() {
        for (b, x2) in corpus.iter().enumerate() {
            if class_equal(x1, x2, &both)? {
                let g = glue(x1, x2, u, v)?;
                let ok = class_equal(&g.glued, x1, u)?
                    && class_equal(&g.glued, x2, v)?
                    && g.residual.is_zero();
                report.check(format!("ker d1 in im d0 on (#{a}, #{b})"), ok);
            }
            let same_u = class_equal(x1, x2, u)?;
            let same_v = class_equal(x1, x2, v)?;
            if same_u && same_v {
                report.check(format!("d0 injective on (#{a}, #{b})"), class_equal(x1, x2, &either)?);
            }
            report.check(
                format!("global sections on (#{a}, #{b})"),
                class_equal(x1, x2, &whole)? == (x1 == x2),
            );
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn points(list: &[(i64, i64, i64)]) -> Cycle {
        let gens: Vec<(i64, Vec<String>)> = list
            .iter()
            .map(|&(k, x, y)| (k, vec![format!("x1 - ({x})"), format!("y1 - ({y})")]))
            .collect();
        let refs: Vec<Vec<&str>> = gens.iter().map(|(_, g)| g.iter().map(String::as_str).collect()).collect();
        let comps: Vec<(i64, &[&str])> = gens.iter().zip(&refs).map(|((k, _), r)| (*k, r.as_slice())).collect();
        Cycle::parse(Ambient::affine(1), 1, -1, &comps).unwrap()
    }

    #[test]
    fn glue_points() {
        let u = OpenSet::parse(1, &["x1"]).unwrap();
        let v = OpenSet::parse(1, &["x1 - 1"]).unwrap();
        let x1 = points(&[(1, 0, 2), (1, 2, 2)]);
        let x2 = points(&[(1, 2, 2)]);
        let g = glue(&x1, &x2, &u, &v).unwrap();
        assert!(class_equal(&g.glued, &x1, &u).unwrap());
        assert!(class_equal(&g.glued, &x2, &v).unwrap());
        assert!(g.residual.is_zero());
    }

    #[test]
    fn union_and_intersection() {
        let u = OpenSet::parse(1, &["x1"]).unwrap();
        let v = OpenSet::parse(1, &["x1 - 1"]).unwrap();
        assert!(u.union(&v).is_whole());
        assert!(u.intersect(&v).is_subset_of(&u));
        assert!(!u.is_subset_of(&v));
    }
}
