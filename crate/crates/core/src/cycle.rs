//! Cycles on `Y × □^n` as integer combinations of ideal-presented components.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use cubechow_poly::{
    parse_polynomial, Ideal, PolyError, Polynomial, Rational, RationalFunction, VarContext,
};
use serde::{Deserialize, Serialize};

use crate::cube::CubeFace;
use crate::error::CycleError;
use crate::morphism::{CubeMorphism, MorphismKind};

fn ambient_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

/// The base `Y`: affine `m`-space with a closed set removed. The closed set is
/// stored as a reduced basis in `x1..xm`; the unit ideal means nothing is removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    dim: usize,
    removed: Vec<Polynomial>,
}

impl Ambient {
    pub fn affine(dim: usize) -> Self {
        Ambient { dim, removed: vec![Polynomial::one(dim)] }
    }

    /// `A^dim` minus `V(closed)`.
    pub fn complement(dim: usize, closed: Vec<Polynomial>) -> Result<Self, CycleError> {
        let ideal = Ideal::new(Self::base_context(dim), closed)?;
        Ok(Ambient { dim, removed: ideal.groebner().to_vec() })
    }

    pub fn base_context(dim: usize) -> Arc<VarContext> {
        Arc::new(VarContext::standard(dim, 0, 0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduced basis of the removed closed set.
    pub fn removed(&self) -> &[Polynomial] {
        &self.removed
    }

    pub fn removed_ideal(&self) -> Ideal {
        Ideal::new(Self::base_context(self.dim), self.removed.clone()).expect("ambient ring")
    }

    pub fn is_whole(&self) -> bool {
        self.removed.len() == 1 && self.removed[0].is_one()
    }

    /// The ambient with `V(closed)` removed as well.
    pub fn shrink(&self, closed: &[Polynomial]) -> Result<Self, CycleError> {
        let extra = Ideal::new(Self::base_context(self.dim), closed.to_vec())?;
        let product = self.removed_ideal().product(&extra);
        Ok(Ambient { dim: self.dim, removed: product.groebner().to_vec() })
    }

    /// Saturates an ideal on `Y × □^k` along the removed set.
    fn localize(&self, ideal: Ideal) -> Ideal {
        if self.is_whole() || ideal.is_unit() {
            return ideal;
        }
        let n = ideal.nvars();
        let lifted: Vec<Polynomial> = self.removed.iter().map(|g| g.extend(n)).collect();
        let w = Ideal::new(ideal.context().clone(), lifted).expect("ambient variables come first");
        ideal.saturate_ideal(&w)
    }

    fn removed_strings(&self) -> Vec<String> {
        let names = ambient_names(self.dim);
        self.removed.iter().map(|g| g.to_string_with(&names)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    coefficient: i64,
    ideal: Ideal,
    irreducible: bool,
}

impl Component {
    pub fn coefficient(&self) -> i64 {
        self.coefficient
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    /// Irreducibility as asserted by whoever built the component.
    pub fn irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn generators(&self) -> &[Polynomial] {
        self.ideal.groebner()
    }
}

/// Input for one component of [`Cycle::build`].
#[derive(Clone, Debug)]
pub struct ComponentSpec {
    pub coefficient: i64,
    pub generators: Vec<Polynomial>,
    pub irreducible: bool,
}

/// First failure of proper intersection with a face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibilityWitness {
    /// Position of the component in canonical order.
    pub component: usize,
    pub face: CubeFace,
    pub dimension: usize,
    pub bound: i64,
}

impl fmt::Display for AdmissibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "component {} meets face {} in dimension {} > {}",
            self.component, self.face, self.dimension, self.bound
        )
    }
}

/// Cycle of relative dimension `d` on `Y × □^n`: every component has dimension `d + n`.
///
/// Components are keyed by their reduced Gröbner basis, so equal ideals merge and
/// equality of cycles is equality of canonical forms.
#[derive(Clone)]
pub struct Cycle {
    ambient: Ambient,
    cube_dim: usize,
    rel_dim: i64,
    ctx: Arc<VarContext>,
    components: BTreeMap<Vec<Polynomial>, Component>,
}

impl Cycle {
    pub fn zero(ambient: Ambient, cube_dim: usize, rel_dim: i64) -> Self {
        let ctx = Arc::new(VarContext::standard(ambient.dim, cube_dim, 0));
        Cycle { ambient, cube_dim, rel_dim, ctx, components: BTreeMap::new() }
    }

    /// Builds a cycle, checking that each component has dimension `d + n` over `Y`.
    pub fn build(
        ambient: Ambient,
        cube_dim: usize,
        rel_dim: i64,
        specs: Vec<ComponentSpec>,
    ) -> Result<Self, CycleError> {
        let mut cycle = Cycle::zero(ambient, cube_dim, rel_dim);
        for spec in specs {
            let ideal = cycle.ambient.localize(Ideal::new(cycle.ctx.clone(), spec.generators)?);
            let dim = ideal.dimension();
            if dim.map(|d| d as i64) != Some(cycle.expected_dim()) {
                return Err(CycleError::DimensionMismatch { expected: cycle.expected_dim(), found: dim });
            }
            cycle.insert(spec.coefficient, ideal, spec.irreducible);
        }
        Ok(cycle)
    }

    /// Builds from generator strings in `x1..xm, y1..yn`; components are asserted irreducible.
    pub fn parse(
        ambient: Ambient,
        cube_dim: usize,
        rel_dim: i64,
        components: &[(i64, &[&str])],
    ) -> Result<Self, CycleError> {
        let names = VarContext::standard(ambient.dim, cube_dim, 0).names();
        let specs = components
            .iter()
            .map(|(coefficient, gens)| {
                let generators = gens
                    .iter()
                    .map(|g| parse_polynomial(g, &names))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ComponentSpec { coefficient: *coefficient, generators, irreducible: true })
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        Cycle::build(ambient, cube_dim, rel_dim, specs)
    }

    fn expected_dim(&self) -> i64 {
        self.rel_dim + self.cube_dim as i64
    }

    fn insert(&mut self, coefficient: i64, ideal: Ideal, irreducible: bool) {
        if coefficient == 0 || ideal.is_unit() {
            return;
        }
        let key = ideal.groebner().to_vec();
        match self.components.get_mut(&key) {
            Some(existing) => {
                existing.coefficient += coefficient;
                existing.irreducible &= irreducible;
                if existing.coefficient == 0 {
                    self.components.remove(&key);
                }
            }
            None => {
                self.components.insert(key, Component { coefficient, ideal, irreducible });
            }
        }
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    pub fn cube_dim(&self) -> usize {
        self.cube_dim
    }

    pub fn rel_dim(&self) -> i64 {
        self.rel_dim
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn components(&self) -> impl Iterator<Item = &Component> {
        self.components.values()
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// Same as [`Cycle::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    fn same_space(&self, other: &Cycle) -> Result<(), CycleError> {
        if self.ambient != other.ambient
            || self.cube_dim != other.cube_dim
            || self.rel_dim != other.rel_dim
        {
            return Err(CycleError::SpaceMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Cycle) -> Result<Cycle, CycleError> {
        self.same_space(other)?;
        let mut out = self.clone();
        for c in other.components.values() {
            out.insert(c.coefficient, c.ideal.clone(), c.irreducible);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Cycle) -> Result<Cycle, CycleError> {
        self.try_add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> Cycle {
        let mut out = Cycle { components: BTreeMap::new(), ..self.clone() };
        for c in self.components.values() {
            out.insert(k * c.coefficient, c.ideal.clone(), c.irreducible);
        }
        out
    }

    fn cube_var(&self, k: usize) -> usize {
        self.ambient.dim + k - 1
    }

    /// The raw face `∂_i^ε`: intersect with `{y_i = ε}` and re-index the cube
    /// coordinates. Multiplicities come from the length of zero-dimensional
    /// intersections; non-reduced positive-dimensional ones are unsupported.
    pub fn face(&self, index: usize, eps: u8) -> Result<Cycle, CycleError> {
        if !(1..=self.cube_dim).contains(&index) {
            return Err(CycleError::IndexOutOfRange { index, dim: self.cube_dim });
        }
        let mut out = Cycle::zero(self.ambient.clone(), self.cube_dim - 1, self.rel_dim);
        let nv = out.ctx.nvars();
        let skipped = self.cube_var(index);
        let images: Vec<Polynomial> = (0..self.ctx.nvars())
            .map(|k| match k.cmp(&skipped) {
                std::cmp::Ordering::Less => Polynomial::var(nv, k),
                std::cmp::Ordering::Equal => Polynomial::constant(nv, Rational::from_integer(eps.into())),
                std::cmp::Ordering::Greater => Polynomial::var(nv, k - 1),
            })
            .collect();
        let bound = out.expected_dim();
        for comp in self.components.values() {
            let gens: Vec<Polynomial> =
                comp.generators().iter().map(|g| g.compose(&images, nv)).collect();
            let ideal = self.ambient.localize(Ideal::new(out.ctx.clone(), gens)?);
            let dim = match ideal.dimension() {
                None => continue,
                Some(d) => d as i64,
            };
            if dim > bound {
                return Err(CycleError::ImproperFace { index, eps });
            }
            let pieces = ideal.top_cycle().map_err(|e| match e {
                PolyError::UnsupportedMultiplicity => CycleError::UnsupportedMultiplicity,
                other => CycleError::Poly(other),
            })?;
            let single = pieces.len() == 1;
            for (mult, piece) in pieces {
                if piece.dimension().map(|d| d as i64) == Some(bound) {
                    out.insert(comp.coefficient * mult as i64, piece, comp.irreducible && single);
                }
            }
        }
        Ok(out)
    }

    /// Face followed by removal of degenerate components.
    pub fn face_reduced(&self, index: usize, eps: u8) -> Result<Cycle, CycleError> {
        Ok(self.face(index, eps)?.reduce_degenerate())
    }

    /// `Σ_i (-1)^i (∂_i^1 - ∂_i^0)`, with degenerate components removed.
    pub fn boundary(&self) -> Result<Cycle, CycleError> {
        if self.cube_dim == 0 {
            return Err(CycleError::IndexOutOfRange { index: 1, dim: 0 });
        }
        let mut out = Cycle::zero(self.ambient.clone(), self.cube_dim - 1, self.rel_dim);
        for i in 1..=self.cube_dim {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            out = out.try_add(&self.face(i, 1)?.scale(sign))?;
            out = out.try_add(&self.face(i, 0)?.scale(-sign))?;
        }
        Ok(out.reduce_degenerate())
    }

    /// True when the component is pulled back along a projection forgetting some
    /// cube coordinate, i.e. its reduced basis does not involve that coordinate.
    pub fn is_degenerate_component(&self, comp: &Component) -> bool {
        (1..=self.cube_dim).any(|j| {
            let v = self.cube_var(j);
            comp.generators().iter().all(|g| !g.uses_var(v))
        })
    }

    pub fn reduce_degenerate(&self) -> Cycle {
        let mut out = self.clone();
        out.components.retain(|_, c| !self.is_degenerate_component(c));
        out
    }

    /// Checks proper intersection with every proper face of the cube, returning the
    /// first violation in face order (codimension, coordinates, values).
    pub fn admissibility(&self) -> Result<(), AdmissibilityWitness> {
        let comps: Vec<&Component> = self.components.values().collect();
        let mut empty: Vec<Vec<CubeFace>> = vec![Vec::new(); comps.len()];
        for face in CubeFace::all_proper(self.cube_dim) {
            let bound = self.expected_dim() - face.codim() as i64;
            for (idx, comp) in comps.iter().enumerate() {
                if empty[idx].iter().any(|e| face.is_subface_of(e)) {
                    continue;
                }
                let eqs = face.fixed().iter().map(|&(i, e)| {
                    let nv = self.ctx.nvars();
                    &Polynomial::var(nv, self.cube_var(i)) - &Polynomial::constant(nv, Rational::from_integer(e.into()))
                });
                let cut = self.ambient.localize(comp.ideal.with_generators(eqs));
                match cut.dimension() {
                    None => empty[idx].push(face.clone()),
                    Some(d) if d as i64 > bound => {
                        return Err(AdmissibilityWitness { component: idx, face, dimension: d, bound })
                    }
                    Some(_) => {}
                }
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility().is_ok()
    }

    /// Codimension-one faces that are nonzero after degenerate reduction.
    pub fn nonzero_faces(&self) -> Result<Vec<(usize, u8, Cycle)>, CycleError> {
        let mut out = Vec::new();
        for i in 1..=self.cube_dim {
            for eps in 0..=1u8 {
                let f = self.face_reduced(i, eps)?;
                if !f.is_zero() {
                    out.push((i, eps, f));
                }
            }
        }
        Ok(out)
    }

    /// All `2n` codimension-one faces vanish modulo degenerate cycles.
    pub fn is_normalized(&self) -> Result<bool, CycleError> {
        Ok(self.nonzero_faces()?.is_empty())
    }

    /// Every nonzero codimension-one face passes `member`.
    pub fn is_normalized_mod(&self, member: &dyn Fn(&Cycle) -> bool) -> Result<bool, CycleError> {
        Ok(self.nonzero_faces()?.iter().all(|(_, _, f)| member(f)))
    }

    /// Flat pullback along an isomorphism or flat map of cubes with numeric coefficients.
    pub fn pullback(&self, f: &CubeMorphism) -> Result<Cycle, CycleError> {
        if !f.kind().admits_pullback() || f.nparams() != 0 {
            return Err(CycleError::UnsupportedMorphism);
        }
        if f.target_dim() != self.cube_dim {
            return Err(CycleError::Morphism(crate::MorphismError::DimensionMismatch {
                expected: self.cube_dim,
                found: f.target_dim(),
            }));
        }
        let keep = f.kind() == MorphismKind::Isomorphism;
        let (out, _) = self.pullback_along(f.coords(), f.source_dim(), false, keep)?;
        Ok(out)
    }

    /// Pulls components back along `y_k ↦ images[k]`, where the images are rational
    /// functions of `source_dim` new cube coordinates, and saturates by all
    /// denominators. With `strict`, also saturates by the preimage of the boundary
    /// divisors, which yields strict transforms. Returns the indices of components
    /// whose transform is empty.
    pub fn pullback_along(
        &self,
        images: &[RationalFunction],
        source_dim: usize,
        strict: bool,
        keep_irreducible: bool,
    ) -> Result<(Cycle, Vec<usize>), CycleError> {
        let m = self.ambient.dim;
        let mut out = Cycle::zero(self.ambient.clone(), source_dim, self.rel_dim);
        let nv = out.ctx.nvars();
        let lift: Vec<usize> = (0..source_dim).map(|k| m + k).collect();
        let lifted: Vec<RationalFunction> = images.iter().map(|r| r.rename(&lift, nv)).collect();
        let mut full: Vec<RationalFunction> = (0..m).map(|k| RationalFunction::var(nv, k)).collect();
        full.extend(lifted.iter().cloned());

        let mut denominators = Polynomial::one(nv);
        let mut boundary = Polynomial::one(nv);
        for r in &lifted {
            denominators = &denominators * r.denominator();
            if strict {
                let gap = r.denominator() - r.numerator();
                boundary = &boundary * &(r.numerator() * &gap);
            }
        }
        let mut collapsed = Vec::new();
        for (idx, comp) in self.components.values().enumerate() {
            let gens: Vec<Polynomial> = comp
                .generators()
                .iter()
                .map(|g| g.compose_rational(&full, nv).numerator().clone())
                .collect();
            let mut ideal = Ideal::new(out.ctx.clone(), gens)?.saturate(&denominators);
            if strict {
                ideal = ideal.saturate(&boundary);
            }
            let ideal = self.ambient.localize(ideal);
            match ideal.dimension() {
                None => collapsed.push(idx),
                Some(d) if d as i64 == out.expected_dim() => {
                    out.insert(comp.coefficient, ideal, keep_irreducible && comp.irreducible)
                }
                found => {
                    return Err(CycleError::DimensionMismatch { expected: out.expected_dim(), found })
                }
            }
        }
        Ok((out, collapsed))
    }

    /// Every component lies over `V(closed) ⊆ Y`.
    pub fn is_supported_in(&self, closed: &[Polynomial]) -> bool {
        let nv = self.ctx.nvars();
        let w = Ideal::new(self.ctx.clone(), closed.iter().map(|g| g.extend(nv)).collect())
            .expect("ambient variables come first");
        self.components.values().all(|c| c.ideal.variety_contained(&w))
    }

    /// Restriction to the open complement of `V(closed)`; components inside it vanish.
    pub fn restrict_to_open(&self, closed: &[Polynomial]) -> Result<Cycle, CycleError> {
        let ambient = self.ambient.shrink(closed)?;
        let mut out = Cycle::zero(ambient, self.cube_dim, self.rel_dim);
        for c in self.components.values() {
            let ideal = out.ambient.localize(Ideal::new(out.ctx.clone(), c.generators().to_vec())?);
            out.insert(c.coefficient, ideal, c.irreducible);
        }
        Ok(out)
    }

    /// Zariski closure over all of affine space. Components are stored saturated
    /// along the removed set, so their ideals already present the closures.
    pub fn closure_from_open(&self) -> Cycle {
        let mut out = Cycle::zero(Ambient::affine(self.ambient.dim), self.cube_dim, self.rel_dim);
        for c in self.components.values() {
            out.insert(c.coefficient, c.ideal.clone(), c.irreducible);
        }
        out
    }

    /// The same components viewed over another base with the same dimension,
    /// saturated along its removed set.
    pub fn over(&self, ambient: &Ambient) -> Result<Cycle, CycleError> {
        if ambient.dim != self.ambient.dim {
            return Err(CycleError::SpaceMismatch);
        }
        let mut out = Cycle::zero(ambient.clone(), self.cube_dim, self.rel_dim);
        for c in self.components.values() {
            let ideal = ambient.localize(c.ideal.clone());
            out.insert(c.coefficient, ideal, c.irreducible);
        }
        Ok(out)
    }

    pub fn to_json(&self) -> CycleJson {
        let names = self.ctx.names();
        CycleJson {
            ambient_dim: self.ambient.dim,
            cube_dim: self.cube_dim,
            d: self.rel_dim,
            removed: (!self.ambient.is_whole()).then(|| self.ambient.removed_strings()),
            components: self
                .components
                .values()
                .map(|c| ComponentJson {
                    coef: c.coefficient,
                    generators: c.generators().iter().map(|g| g.to_string_with(&names)).collect(),
                    irreducible: c.irreducible,
                })
                .collect(),
        }
    }

    pub fn from_json(json: &CycleJson) -> Result<Cycle, CycleError> {
        let ambient = match &json.removed {
            None => Ambient::affine(json.ambient_dim),
            Some(gens) => {
                let names = ambient_names(json.ambient_dim);
                let polys = gens
                    .iter()
                    .map(|g| parse_polynomial(g, &names))
                    .collect::<Result<Vec<_>, _>>()?;
                Ambient::complement(json.ambient_dim, polys)?
            }
        };
        let names = VarContext::standard(json.ambient_dim, json.cube_dim, 0).names();
        let specs = json
            .components
            .iter()
            .map(|c| {
                let generators = c
                    .generators
                    .iter()
                    .map(|g| parse_polynomial(g, &names))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(ComponentSpec { coefficient: c.coef, generators, irreducible: c.irreducible })
            })
            .collect::<Result<Vec<_>, PolyError>>()?;
        Cycle::build(ambient, json.cube_dim, json.d, specs)
    }

    pub fn from_json_str(text: &str) -> Result<Cycle, CycleError> {
        let json: CycleJson =
            serde_json::from_str(text).map_err(|e| CycleError::Malformed(e.to_string()))?;
        Cycle::from_json(&json)
    }
}

impl PartialEq for Cycle {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.cube_dim == other.cube_dim
            && self.rel_dim == other.rel_dim
            && self.components.len() == other.components.len()
            && self
                .components
                .iter()
                .zip(&other.components)
                .all(|((ka, a), (kb, b))| ka == kb && a.coefficient == b.coefficient)
    }
}

impl Eq for Cycle {}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return f.write_str("0");
        }
        let names = self.ctx.names();
        for (k, c) in self.components.values().enumerate() {
            let gens: Vec<String> = c.generators().iter().map(|g| g.to_string_with(&names)).collect();
            let coef = c.coefficient;
            match (k, coef < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if coef.abs() != 1 {
                write!(f, "{}*", coef.abs())?;
            }
            write!(f, "[{}]", gens.join(", "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cycle(m={}, n={}, d={}: {})", self.ambient.dim, self.cube_dim, self.rel_dim, self)
    }
}

impl Add for &Cycle {
    type Output = Cycle;
    /// Panics when the cycles live on different spaces; see [`Cycle::try_add`].
    fn add(self, other: &Cycle) -> Cycle {
        self.try_add(other).expect("cycles on the same space")
    }
}

impl Sub for &Cycle {
    type Output = Cycle;
    fn sub(self, other: &Cycle) -> Cycle {
        self.try_sub(other).expect("cycles on the same space")
    }
}

impl Neg for &Cycle {
    type Output = Cycle;
    fn neg(self) -> Cycle {
        self.scale(-1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub coef: i64,
    pub generators: Vec<String>,
    #[serde(default = "asserted")]
    pub irreducible: bool,
}

fn asserted() -> bool {
    true
}

/// Serialized cycle; generator strings use `x1..xm` and `y1..yn`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleJson {
    pub ambient_dim: usize,
    pub cube_dim: usize,
    pub d: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed: Option<Vec<String>>,
    pub components: Vec<ComponentJson>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(y: &str) -> Cycle {
        Cycle::parse(Ambient::affine(0), 1, -1, &[(1, &[y])]).unwrap()
    }

    #[test]
    fn cancellation_gives_zero() {
        let z = Cycle::parse(Ambient::affine(0), 1, -1, &[(1, &["y1 - 2"]), (-1, &["2*y1 - 4"])]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn dimension_is_checked() {
        let err = Cycle::parse(Ambient::affine(0), 2, -2, &[(1, &["y1 + y2 - 3"])]).unwrap_err();
        assert!(matches!(err, CycleError::DimensionMismatch { expected: 0, found: Some(1) }));
    }

    #[test]
    fn point_faces_are_empty() {
        let z = point("y1 - 2");
        assert!(z.face(1, 0).unwrap().is_zero());
        assert!(z.face(1, 1).unwrap().is_zero());
        assert!(z.boundary().unwrap().is_zero());
        assert!(z.is_normalized().unwrap());
    }

    #[test]
    fn tangent_face_has_length_two() {
        let z = Cycle::parse(Ambient::affine(0), 2, -1, &[(1, &["y1 - (y2 - 3)^2"])]).unwrap();
        let face = z.face(1, 0).unwrap();
        assert_eq!(face, Cycle::parse(Ambient::affine(0), 1, -1, &[(2, &["y1 - 3"])]).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let z = Cycle::parse(Ambient::affine(2), 2, 0, &[(3, &["y1 - x1*x2", "y2 - x1"])]).unwrap();
        let back = Cycle::from_json(&z.to_json()).unwrap();
        assert_eq!(back, z);
        let u = z.restrict_to_open(&[Polynomial::var(2, 0)]).unwrap();
        assert_eq!(Cycle::from_json(&u.to_json()).unwrap(), u);
    }
}
