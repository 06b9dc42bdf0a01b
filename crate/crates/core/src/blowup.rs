//! Iterated blow-ups of cube faces, kept as divisor combinatorics plus vertex
//! charts written in the coordinates of the original cube.
//!
//! On the base cube the divisor `2k-1` is `{y_k = 1}` and `2k` is `{y_k = 0}`.
//! The exceptional divisor of step `s` gets id `2n + s`. Chart slots are sorted
//! by divisor id.

use std::collections::{BTreeMap, VecDeque};

use cubechow_poly::{Rational, RationalFunction};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cube::{vertex_sign, vertices};
use crate::cycle::{AdmissibilityWitness, Cycle};
use crate::error::BlowupError;
use crate::morphism::CubeMorphism;
use crate::subdivision::GeneralPoint;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisorOrigin {
    /// Strict transform of `{y_coord = value}` on the base cube.
    Coordinate { coord: usize, value: u8 },
    /// Exceptional divisor created at this step (1-based).
    Exceptional { step: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisor {
    pub id: usize,
    pub origin: DivisorOrigin,
}

/// Coordinate chart around a vertex. Slot `k` holds the function cutting out
/// divisor `divisors[k]`.
#[derive(Clone, Debug)]
pub struct VertexChart {
    divisors: Vec<usize>,
    /// Chart functions in the base cube coordinates.
    forward: Vec<RationalFunction>,
    /// Base cube coordinates as functions of the chart coordinates.
    inverse: Vec<RationalFunction>,
    /// The base vertex, for vertices never touched by a blow-up center.
    base_vertex: Option<Vec<u8>>,
}

impl VertexChart {
    pub fn divisors(&self) -> &[usize] {
        &self.divisors
    }

    pub fn forward(&self) -> &[RationalFunction] {
        &self.forward
    }

    pub fn inverse(&self) -> &[RationalFunction] {
        &self.inverse
    }

    pub fn base_vertex(&self) -> Option<&[u8]> {
        self.base_vertex.as_deref()
    }

    fn slot_of(&self, divisor: usize) -> Option<usize> {
        self.divisors.iter().position(|&d| d == divisor)
    }

    /// Checks `forward ∘ inverse = id` and `inverse ∘ forward = id`.
    pub fn is_consistent(&self) -> bool {
        let n = self.divisors.len();
        let roundtrip = |outer: &[RationalFunction], inner: &[RationalFunction]| {
            outer.iter().enumerate().all(|(k, f)| {
                f.compose(inner, n).is_ok_and(|g| g == RationalFunction::var(n, k))
            })
        };
        roundtrip(&self.forward, &self.inverse) && roundtrip(&self.inverse, &self.forward)
    }
}

/// Two vertices sharing `n - 1` divisors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub divisors: Vec<usize>,
    pub ends: (usize, usize),
}

#[derive(Clone, Debug)]
pub struct DistinguishedSpace {
    dim: usize,
    level: usize,
    divisors: Vec<Divisor>,
    vertices: Vec<VertexChart>,
    edges: Vec<Edge>,
}

fn combinations_of<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    crate::cube::combinations(items.len(), k)
        .into_iter()
        .map(|idx| idx.into_iter().map(|i| items[i - 1].clone()).collect())
        .collect()
}

impl DistinguishedSpace {
    /// The cube `□^n` with its `2n` boundary divisors and `2^n` vertex charts.
    pub fn initial(n: usize) -> Self {
        let divisors = (1..=n)
            .flat_map(|k| {
                [
                    Divisor { id: 2 * k - 1, origin: DivisorOrigin::Coordinate { coord: k, value: 1 } },
                    Divisor { id: 2 * k, origin: DivisorOrigin::Coordinate { coord: k, value: 0 } },
                ]
            })
            .collect();
        let charts = vertices(n)
            .into_iter()
            .map(|v| {
                let coords: Vec<RationalFunction> = v
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| {
                        let y = RationalFunction::var(n, k);
                        if e == 1 {
                            RationalFunction::constant(n, Rational::one()).sub(&y)
                        } else {
                            y
                        }
                    })
                    .collect();
                VertexChart {
                    divisors: v.iter().enumerate().map(|(k, &e)| 2 * (k + 1) - e as usize).collect(),
                    forward: coords.clone(),
                    inverse: coords,
                    base_vertex: Some(v),
                }
            })
            .collect();
        let mut space = DistinguishedSpace { dim: n, level: 0, divisors, vertices: charts, edges: Vec::new() };
        space.edges = space.compute_edges().expect("the cube has two vertices per edge");
        space
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn divisors(&self) -> &[Divisor] {
        &self.divisors
    }

    pub fn vertices(&self) -> &[VertexChart] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// A set of divisors is a face when some vertex is incident to all of them.
    pub fn is_face(&self, divisors: &[usize]) -> bool {
        self.vertices.iter().any(|v| divisors.iter().all(|d| v.divisors.contains(d)))
    }

    fn compute_edges(&self) -> Result<Vec<Edge>, BlowupError> {
        let mut by_subset: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (idx, v) in self.vertices.iter().enumerate() {
            for subset in combinations_of(&v.divisors, self.dim - 1) {
                by_subset.entry(subset).or_default().push(idx);
            }
        }
        by_subset
            .into_iter()
            .map(|(divisors, ends)| match ends.as_slice() {
                [a, b] => Ok(Edge { divisors, ends: (*a, *b) }),
                _ => Err(BlowupError::BadEdge(divisors)),
            })
            .collect()
    }

    /// Blows up the face cut out by `face` (divisor ids). Vertices off the face keep
    /// their charts; each vertex on it is replaced by one vertex per divisor of the
    /// face, whose chart divides the other face functions by the pivot function.
    pub fn blow_up_face(&self, face: &[usize]) -> Result<DistinguishedSpace, BlowupError> {
        let mut face = face.to_vec();
        face.sort_unstable();
        face.dedup();
        if face.len() < 2 {
            return Err(BlowupError::CodimensionTooSmall);
        }
        if !self.is_face(&face) {
            return Err(BlowupError::NotAFace(face));
        }
        let n = self.dim;
        let exceptional = self.divisors.iter().map(|d| d.id).max().unwrap_or(0) + 1;
        let mut charts = Vec::new();
        for w in &self.vertices {
            if !face.iter().all(|d| w.divisors.contains(d)) {
                charts.push(w.clone());
                continue;
            }
            for &pivot in &face {
                let pivot_fn = &w.forward[w.slot_of(pivot).unwrap()];
                let mut slots: Vec<(usize, RationalFunction)> = w
                    .divisors
                    .iter()
                    .zip(&w.forward)
                    .map(|(&d, f)| {
                        if d == pivot {
                            (exceptional, f.clone())
                        } else if face.contains(&d) {
                            (d, f.div(pivot_fn).expect("pivot function is nonzero"))
                        } else {
                            (d, f.clone())
                        }
                    })
                    .collect();
                slots.sort_by_key(|s| s.0);
                let divisors: Vec<usize> = slots.iter().map(|s| s.0).collect();
                let u = |d: usize| RationalFunction::var(n, divisors.iter().position(|&x| x == d).unwrap());
                let t: Vec<RationalFunction> = w
                    .divisors
                    .iter()
                    .map(|&d| {
                        if d == pivot {
                            u(exceptional)
                        } else if face.contains(&d) {
                            u(d).mul(&u(exceptional))
                        } else {
                            u(d)
                        }
                    })
                    .collect();
                let inverse = w
                    .inverse
                    .iter()
                    .map(|g| g.compose(&t, n).expect("polynomial substitution"))
                    .collect();
                let chart = VertexChart {
                    divisors,
                    forward: slots.into_iter().map(|s| s.1).collect(),
                    inverse,
                    base_vertex: None,
                };
                if !chart.is_consistent() {
                    return Err(BlowupError::ChartInversion(charts.len()));
                }
                charts.push(chart);
            }
        }
        let mut divisors = self.divisors.clone();
        divisors.push(Divisor { id: exceptional, origin: DivisorOrigin::Exceptional { step: self.level + 1 } });
        let mut space = DistinguishedSpace { dim: n, level: self.level + 1, divisors, vertices: charts, edges: Vec::new() };
        space.edges = space.compute_edges()?;
        Ok(space)
    }

    fn edge_between(&self, v: usize, w: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.ends == (v, w) || e.ends == (w, v))
    }

    /// The permutation `g(v,w)` of chart slots: shared divisors go to their slot at
    /// `w`, and the slot of the divisor of `v` not on the edge goes to the slot of
    /// the one of `w`. Returned as `perm[slot at v] = slot at w` (0-based).
    pub fn edge_permutation(&self, v: usize, w: usize) -> Result<Vec<usize>, BlowupError> {
        let edge = self.edge_between(v, w).ok_or(BlowupError::NotAdjacent(v, w))?;
        let (cv, cw) = (&self.vertices[v], &self.vertices[w]);
        let off_w = cw.divisors.iter().position(|d| !edge.divisors.contains(d)).expect("one divisor off the edge");
        Ok(cv
            .divisors
            .iter()
            .map(|d| if edge.divisors.contains(d) { cw.slot_of(*d).unwrap() } else { off_w })
            .collect())
    }

    /// Signs anchored at the first untouched base vertex and propagated by
    /// `ε(v) = -sgn(g(v,w)) ε(w)`; every edge and every untouched vertex is checked.
    pub fn vertex_signs(&self) -> Result<Vec<i64>, BlowupError> {
        self.vertex_signs_with(|v, w| self.edge_permutation(v, w).map(|p| permutation_sign(&p)))
    }

    /// As [`Self::vertex_signs`] with a caller-supplied permutation sign.
    pub fn vertex_signs_with<F>(&self, sign_of: F) -> Result<Vec<i64>, BlowupError>
    where
        F: Fn(usize, usize) -> Result<i64, BlowupError>,
    {
        let anchor = self.vertices.iter().position(|v| v.base_vertex.is_some()).ok_or(BlowupError::NoAnchor)?;
        let mut signs: Vec<Option<i64>> = vec![None; self.vertices.len()];
        signs[anchor] = Some(vertex_sign(self.vertices[anchor].base_vertex.as_ref().unwrap()));
        let mut queue = VecDeque::from([anchor]);
        while let Some(w) = queue.pop_front() {
            for e in &self.edges {
                let v = match e.ends {
                    (a, b) if a == w => b,
                    (a, b) if b == w => a,
                    _ => continue,
                };
                let expected = -sign_of(v, w)? * signs[w].unwrap();
                match signs[v] {
                    None => {
                        signs[v] = Some(expected);
                        queue.push_back(v);
                    }
                    Some(s) if s != expected => return Err(BlowupError::InconsistentSigns(v)),
                    Some(_) => {}
                }
            }
        }
        let signs: Vec<i64> = signs
            .into_iter()
            .enumerate()
            .map(|(v, s)| s.ok_or(BlowupError::InconsistentSigns(v)))
            .collect::<Result<_, _>>()?;
        for (v, chart) in self.vertices.iter().enumerate() {
            if chart.base_vertex.as_ref().is_some_and(|b| vertex_sign(b) != signs[v]) {
                return Err(BlowupError::InconsistentSigns(v));
            }
        }
        Ok(signs)
    }

    /// For each vertex, the signed map `u ↦ inverse_v(u_1 f_1^v(c), …, u_n f_n^v(c))`
    /// from the cube to the base cube.
    pub fn phi_component_maps(&self, c: &GeneralPoint) -> Result<Vec<SignedMap>, BlowupError> {
        let signs = self.vertex_signs()?;
        let n = self.dim;
        self.vertices
            .iter()
            .enumerate()
            .map(|(idx, chart)| {
                let scaled: Vec<RationalFunction> = chart
                    .forward
                    .iter()
                    .enumerate()
                    .map(|(k, f)| {
                        let value = f.eval(c.values()).map_err(|_| BlowupError::ParameterOnDivisor(idx))?;
                        if value.is_zero() {
                            return Err(BlowupError::ParameterOnDivisor(idx));
                        }
                        Ok(RationalFunction::var(n, k).scale(&value))
                    })
                    .collect::<Result<_, _>>()?;
                let coords = chart
                    .inverse
                    .iter()
                    .map(|g| g.compose(&scaled, n).map_err(|_| BlowupError::ParameterOnDivisor(idx)))
                    .collect::<Result<_, _>>()?;
                Ok(SignedMap { vertex: idx, sign: signs[idx], coords })
            })
            .collect()
    }
}

/// Sign of a permutation given as images of `0..n`.
pub fn permutation_sign(perm: &[usize]) -> i64 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// One term `(ε(v), cube ⇢ base cube)` of the signed sum of vertex maps.
#[derive(Clone, Debug)]
pub struct SignedMap {
    pub vertex: usize,
    pub sign: i64,
    pub coords: Vec<RationalFunction>,
}

impl SignedMap {
    pub fn as_morphism(&self) -> CubeMorphism {
        CubeMorphism::from_coords(self.coords.len(), 0, self.coords.clone(), crate::MorphismKind::General)
            .expect("numeric coordinates")
    }
}

/// Sequence of face blow-ups of `□^n`; `spaces[0]` is the cube.
#[derive(Clone, Debug)]
pub struct Tower {
    steps: Vec<Vec<usize>>,
    spaces: Vec<DistinguishedSpace>,
}

impl Tower {
    pub fn build(n: usize, steps: &[Vec<usize>]) -> Result<Tower, BlowupError> {
        let mut spaces = vec![DistinguishedSpace::initial(n)];
        for step in steps {
            let next = spaces.last().unwrap().blow_up_face(step)?;
            spaces.push(next);
        }
        Ok(Tower { steps: steps.to_vec(), spaces })
    }

    pub fn dim(&self) -> usize {
        self.spaces[0].dim
    }

    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    pub fn spaces(&self) -> &[DistinguishedSpace] {
        &self.spaces
    }

    pub fn top(&self) -> &DistinguishedSpace {
        self.spaces.last().unwrap()
    }

    pub fn to_json(&self) -> TowerJson {
        TowerJson { n: self.dim(), steps: self.steps.clone() }
    }

    pub fn from_json(json: &TowerJson) -> Result<Tower, BlowupError> {
        Tower::build(json.n, &json.steps)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub n: usize,
    pub steps: Vec<Vec<usize>>,
}

/// Closure of the preimage of `Z` off the boundary divisors, times `sign`.
pub fn strict_transform(z: &Cycle, map: &SignedMap) -> Result<Cycle, BlowupError> {
    let (out, collapsed) = z.pullback_along(&map.coords, map.coords.len(), true, false)?;
    if let Some(&component) = collapsed.first() {
        return Err(BlowupError::ComponentCollapses { vertex: map.vertex, component });
    }
    Ok(out.scale(map.sign))
}

/// Level-`M` subdivision with its per-vertex terms and admissibility verdict.
#[derive(Clone, Debug)]
pub struct LevelSubdivision {
    pub cycle: Cycle,
    pub terms: Vec<(usize, i64, Cycle)>,
    pub admissibility: Result<(), AdmissibilityWitness>,
}

pub fn sd_level(z: &Cycle, space: &DistinguishedSpace, c: &GeneralPoint) -> Result<LevelSubdivision, BlowupError> {
    let mut cycle = Cycle::zero(z.ambient().clone(), z.cube_dim(), z.rel_dim());
    let mut terms = Vec::new();
    for map in space.phi_component_maps(c)? {
        let term = strict_transform(z, &map)?;
        cycle = cycle.try_add(&term)?;
        terms.push((map.vertex, map.sign, term.scale(map.sign)));
    }
    let admissibility = cycle.admissibility();
    Ok(LevelSubdivision { cycle, terms, admissibility })
}

/// Which end of the homotopy coordinate the blow-up centers are placed on.
/// `Zero` is the wrong end and exists to check that the certificate notices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomotopyEnd {
    One,
    Zero,
}

/// The tower over `□^(n+1)` whose centers are the original centers times one end
/// of the last coordinate.
pub fn extended_tower(tower: &Tower, end: HomotopyEnd) -> Result<Tower, BlowupError> {
    let n = tower.dim();
    let end_id = match end {
        HomotopyEnd::One => 2 * n + 1,
        HomotopyEnd::Zero => 2 * n + 2,
    };
    let steps: Vec<Vec<usize>> = tower
        .steps
        .iter()
        .map(|s| {
            let mut t: Vec<usize> = s.iter().map(|&d| if d > 2 * n { d + 2 } else { d }).collect();
            t.push(end_id);
            t.sort_unstable();
            t
        })
        .collect();
    Tower::build(n + 1, &steps)
}

#[derive(Clone, Debug)]
pub struct H0Certificate {
    pub homotopy: Cycle,
    pub lhs: Cycle,
    pub rhs: Cycle,
    pub top: LevelSubdivision,
    pub base: LevelSubdivision,
    pub pass: bool,
}

/// Homotopy between the level-`M` and level-0 subdivisions:
/// `H = (-1)^(n+1) Σ_v ε(v) (pr ∘ λ_v)^!(Z)` over the vertices of the extended
/// tower, certified by `∂H = sd^M(Z) - sd^0(Z)` modulo degenerate cycles.
pub fn homotopy_h0(z: &Cycle, tower: &Tower, c_ext: &GeneralPoint, end: HomotopyEnd) -> Result<H0Certificate, BlowupError> {
    let n = tower.dim();
    if c_ext.len() != n + 1 {
        return Err(BlowupError::NonGeneral(format!("expected {} parameters", n + 1)));
    }
    // Faces of Z would add a homotopy term for the boundary of Z.
    if let Some((i, eps, _)) = z.nonzero_faces()?.into_iter().next() {
        return Err(BlowupError::NotNormalized { face: format!("y{i}={eps}") });
    }
    let c = GeneralPoint::new(c_ext.values()[..n].to_vec()).expect("coordinates already off the faces");
    let ext = extended_tower(tower, end)?;
    let lifted = z.pullback(&CubeMorphism::projection(n + 1, n + 1, 0))?;
    let sign = if n.is_multiple_of(2) { -1 } else { 1 };
    let mut homotopy = Cycle::zero(z.ambient().clone(), n + 1, z.rel_dim());
    for map in ext.top().phi_component_maps(c_ext)? {
        homotopy = homotopy.try_add(&strict_transform(&lifted, &map)?.scale(sign))?;
    }
    let homotopy = homotopy.reduce_degenerate();
    if let Err(w) = homotopy.admissibility() {
        return Err(BlowupError::NonGeneral(format!("homotopy: {w}")));
    }
    let lhs = homotopy.boundary()?;
    let top = sd_level(z, tower.top(), &c)?;
    let base = sd_level(z, &tower.spaces[0], &c)?;
    let rhs = top.cycle.try_sub(&base.cycle)?;
    let pass = lhs == rhs;
    Ok(H0Certificate { homotopy, lhs, rhs, top, base, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_counts() {
        let s = DistinguishedSpace::initial(2);
        assert_eq!((s.divisors().len(), s.vertices().len(), s.edges().len()), (4, 4, 4));
        assert_eq!(s.vertex_signs().unwrap(), vec![1, -1, -1, 1]);
    }

    #[test]
    fn pentagon_counts_and_signs() {
        let s = DistinguishedSpace::initial(2).blow_up_face(&[2, 3]).unwrap();
        assert_eq!((s.divisors().len(), s.vertices().len(), s.edges().len()), (5, 5, 5));
        let signs = s.vertex_signs().unwrap();
        let by_divisors: Vec<(Vec<usize>, i64)> =
            s.vertices().iter().map(|v| v.divisors().to_vec()).zip(signs).collect();
        assert!(by_divisors.contains(&(vec![3, 5], 1)));
        assert!(by_divisors.contains(&(vec![2, 5], -1)));
    }

    #[test]
    fn blowing_up_a_divisor_is_rejected() {
        let s = DistinguishedSpace::initial(2);
        assert_eq!(s.blow_up_face(&[2]).unwrap_err(), BlowupError::CodimensionTooSmall);
        assert!(matches!(s.blow_up_face(&[1, 2]).unwrap_err(), BlowupError::NotAFace(_)));
    }

    #[test]
    fn permutation_signs() {
        assert_eq!(permutation_sign(&[0, 1, 2]), 1);
        assert_eq!(permutation_sign(&[1, 0, 2]), -1);
        assert_eq!(permutation_sign(&[1, 2, 0]), 1);
    }
}
