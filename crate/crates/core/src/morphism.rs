use std::fmt;

use cubechow_poly::{
    is_zero_or_one, parse_rational_function, Polynomial, Rational, RationalFunction,
};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::MorphismError;

/// Geometric class of a morphism; decides whether a cycle pullback is defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Isomorphism,
    Flat,
    Closed,
    General,
}

impl MorphismKind {
    fn then(self, other: MorphismKind) -> MorphismKind {
        use MorphismKind::*;
        match (self, other) {
            (General, _) | (_, General) | (Closed, _) | (_, Closed) => General,
            (Isomorphism, Isomorphism) => Isomorphism,
            _ => Flat,
        }
    }

    pub fn admits_pullback(self) -> bool {
        matches!(self, MorphismKind::Isomorphism | MorphismKind::Flat)
    }
}

/// Scalar built from formal parameters only, such as `c_i` or `1 - c_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scalar(Polynomial);

impl Scalar {
    pub fn constant(value: Rational, nparams: usize) -> Self {
        Scalar(Polynomial::constant(nparams, value))
    }

    /// Parameter `c_{k+1}`.
    pub fn param(k: usize, nparams: usize) -> Self {
        Scalar(Polynomial::var(nparams, k))
    }

    pub fn one_minus(&self) -> Self {
        let n = self.0.nvars();
        Scalar(&Polynomial::one(n) - &self.0)
    }

    pub fn nparams(&self) -> usize {
        self.0.nvars()
    }

    pub fn value(&self) -> Option<Rational> {
        self.0.constant_value()
    }

    /// The scalar as a function on a morphism ring with `source_dim` cube variables.
    fn lift(&self, source_dim: usize) -> Polynomial {
        let map: Vec<usize> = (0..self.nparams()).map(|k| source_dim + k).collect();
        self.0.rename(&map, source_dim + self.nparams())
    }
}

/// Morphism `□^source → □^target` given by rational coordinate functions in
/// `source_dim` cube variables followed by `nparams` formal parameters.
#[derive(Clone, Debug)]
pub struct CubeMorphism {
    source_dim: usize,
    target_dim: usize,
    nparams: usize,
    coords: Vec<RationalFunction>,
    kind: MorphismKind,
}

impl CubeMorphism {
    pub fn from_coords(
        source_dim: usize,
        nparams: usize,
        coords: Vec<RationalFunction>,
        kind: MorphismKind,
    ) -> Result<Self, MorphismError> {
        let nvars = source_dim + nparams;
        if let Some(c) = coords.iter().find(|c| c.nvars() != nvars) {
            return Err(MorphismError::RingMismatch { expected: nvars, found: c.nvars() });
        }
        Ok(CubeMorphism { source_dim, target_dim: coords.len(), nparams, coords, kind })
    }

    fn nvars(&self) -> usize {
        self.source_dim + self.nparams
    }

    fn y(&self, k: usize) -> RationalFunction {
        RationalFunction::var(self.nvars(), k)
    }

    fn one(nvars: usize) -> RationalFunction {
        RationalFunction::constant(nvars, Rational::one())
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    pub fn kind(&self) -> MorphismKind {
        self.kind
    }

    pub fn coords(&self) -> &[RationalFunction] {
        &self.coords
    }

    pub fn identity(n: usize, nparams: usize) -> Self {
        let nv = n + nparams;
        let coords = (0..n).map(|k| RationalFunction::var(nv, k)).collect();
        CubeMorphism { source_dim: n, target_dim: n, nparams, coords, kind: MorphismKind::Isomorphism }
    }

    /// `y_j ↦ 1 - y_j` (1-based `j`).
    pub fn involution(n: usize, j: usize, nparams: usize) -> Self {
        let mut f = Self::identity(n, nparams);
        f.coords[j - 1] = Self::one(f.nvars()).sub(&f.y(j - 1));
        f
    }

    /// `y_j ↦ s * y_j`. Rejects the constants 0 and 1.
    pub fn scaling(n: usize, j: usize, s: &Scalar) -> Result<Self, MorphismError> {
        if s.value().is_some_and(|v| is_zero_or_one(&v)) {
            return Err(MorphismError::InvalidScalar);
        }
        let mut f = Self::identity(n, s.nparams());
        let lifted = RationalFunction::from(s.lift(n));
        f.coords[j - 1] = lifted.mul(&f.y(j - 1));
        Ok(f)
    }

    /// Multiplication `(y1, y2) ↦ y1 * y2`.
    pub fn multiplication(nparams: usize) -> Self {
        let nv = 2 + nparams;
        let coord = RationalFunction::var(nv, 0).mul(&RationalFunction::var(nv, 1));
        CubeMorphism { source_dim: 2, target_dim: 1, nparams, coords: vec![coord], kind: MorphismKind::Flat }
    }

    /// The two-variable homotopy maps. Level 0: `(1 - (1-c)(1-z)) y`;
    /// level 1: `1 - (1-c) y (1-z)`.
    pub fn eta(level: u8, c: &Scalar) -> Self {
        let nv = 2 + c.nparams();
        let y = RationalFunction::var(nv, 0);
        let z = RationalFunction::var(nv, 1);
        let one = Self::one(nv);
        let one_minus_c = RationalFunction::from(c.one_minus().lift(2));
        let one_minus_z = one.sub(&z);
        let coord = match level {
            0 => one.sub(&one_minus_c.mul(&one_minus_z)).mul(&y),
            _ => one.sub(&one_minus_c.mul(&y).mul(&one_minus_z)),
        };
        CubeMorphism { source_dim: 2, target_dim: 1, nparams: c.nparams(), coords: vec![coord], kind: MorphismKind::Flat }
    }

    /// `□^{n+1} → □^n`: coordinate `i` becomes `eta_level(y_i, y_{n+1})` with
    /// parameter `c[i-1]`; the other coordinates are kept.
    pub fn homotopy_map(n: usize, level: u8, c: &[Scalar], i: usize) -> Self {
        assert_eq!(c.len(), n, "one parameter per cube coordinate");
        let nparams = c.first().map_or(0, Scalar::nparams);
        let src = n + 1;
        let nv = src + nparams;
        let eta = Self::eta(level, &c[i - 1]);
        let mut images = vec![RationalFunction::var(nv, i - 1), RationalFunction::var(nv, n)];
        images.extend((0..nparams).map(|k| RationalFunction::var(nv, src + k)));
        let eta_coord = eta.coords[0].compose(&images, nv).expect("polynomial map");
        let coords = (0..n)
            .map(|k| if k == i - 1 { eta_coord.clone() } else { RationalFunction::var(nv, k) })
            .collect();
        CubeMorphism { source_dim: src, target_dim: n, nparams, coords, kind: MorphismKind::Flat }
    }

    /// Face inclusion `□^{n-1} → □^n` inserting `eps` at slot `j`.
    pub fn face_inclusion(n: usize, j: usize, eps: u8, nparams: usize) -> Self {
        let nv = n - 1 + nparams;
        let coords = (0..n)
            .map(|k| match (k + 1).cmp(&j) {
                std::cmp::Ordering::Less => RationalFunction::var(nv, k),
                std::cmp::Ordering::Equal => RationalFunction::constant(nv, Rational::from_integer(eps.into())),
                std::cmp::Ordering::Greater => RationalFunction::var(nv, k - 1),
            })
            .collect();
        CubeMorphism { source_dim: n - 1, target_dim: n, nparams, coords, kind: MorphismKind::Closed }
    }

    /// Projection `□^n → □^{n-1}` forgetting coordinate `j`.
    pub fn projection(n: usize, j: usize, nparams: usize) -> Self {
        let nv = n + nparams;
        let coords = (0..n).filter(|&k| k != j - 1).map(|k| RationalFunction::var(nv, k)).collect();
        CubeMorphism { source_dim: n, target_dim: n - 1, nparams, coords, kind: MorphismKind::Flat }
    }

    /// Coordinate permutation: target coordinate `k` is source coordinate `perm[k]` (0-based).
    pub fn permutation(perm: &[usize], nparams: usize) -> Self {
        let n = perm.len();
        let nv = n + nparams;
        let coords = perm.iter().map(|&k| RationalFunction::var(nv, k)).collect();
        CubeMorphism { source_dim: n, target_dim: n, nparams, coords, kind: MorphismKind::Isomorphism }
    }

    /// Flips the coordinates where `v` is 1.
    pub fn vertex_flip(v: &[u8], nparams: usize) -> Self {
        let mut f = Self::identity(v.len(), nparams);
        for (k, &e) in v.iter().enumerate() {
            if e == 1 {
                f.coords[k] = Self::one(f.nvars()).sub(&f.y(k));
            }
        }
        f
    }

    /// Scales coordinate `i` by `c_i` where `v_i = 0` and by `1 - c_i` where `v_i = 1`.
    pub fn vertex_scaling(v: &[u8], c: &[Scalar]) -> Self {
        let n = v.len();
        let nparams = c.first().map_or(0, Scalar::nparams);
        let mut f = Self::identity(n, nparams);
        for k in 0..n {
            let s = if v[k] == 0 { c[k].clone() } else { c[k].one_minus() };
            f.coords[k] = RationalFunction::from(s.lift(n)).mul(&f.y(k));
        }
        f
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &CubeMorphism) -> Result<CubeMorphism, MorphismError> {
        if inner.target_dim != self.source_dim {
            return Err(MorphismError::DimensionMismatch {
                expected: self.source_dim,
                found: inner.target_dim,
            });
        }
        if inner.nparams != self.nparams {
            return Err(MorphismError::ParameterMismatch);
        }
        let nv = inner.nvars();
        let mut images: Vec<RationalFunction> = inner.coords.clone();
        images.extend((0..self.nparams).map(|k| RationalFunction::var(nv, inner.source_dim + k)));
        let coords = self
            .coords
            .iter()
            .map(|c| c.compose(&images, nv).map_err(|_| MorphismError::UndefinedComposition))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CubeMorphism {
            source_dim: inner.source_dim,
            target_dim: self.target_dim,
            nparams: self.nparams,
            coords,
            kind: inner.kind.then(self.kind),
        })
    }

    /// Coordinate-wise equality of rational functions.
    pub fn equals(&self, other: &CubeMorphism) -> bool {
        self.source_dim == other.source_dim
            && self.target_dim == other.target_dim
            && self.nparams == other.nparams
            && self.coords == other.coords
    }

    /// Substitutes values for every formal parameter.
    pub fn specialize(&self, values: &[Rational]) -> Result<CubeMorphism, MorphismError> {
        if values.len() != self.nparams {
            return Err(MorphismError::ParameterMismatch);
        }
        let mut assignment: Vec<Option<Rational>> = vec![None; self.source_dim];
        assignment.extend(values.iter().cloned().map(Some));
        let keep: Vec<bool> = (0..self.nvars()).map(|k| k >= self.source_dim).collect();
        let coords = self
            .coords
            .iter()
            .map(|c| {
                let r = c.partial_eval(&assignment).map_err(|_| MorphismError::UndefinedComposition)?;
                let num = r.numerator().drop_vars(&keep);
                let den = r.denominator().drop_vars(&keep);
                RationalFunction::new(num, den).map_err(|_| MorphismError::UndefinedComposition)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CubeMorphism { source_dim: self.source_dim, target_dim: self.target_dim, nparams: 0, coords, kind: self.kind })
    }

    pub fn variable_names(&self) -> Vec<String> {
        (1..=self.source_dim)
            .map(|i| format!("y{i}"))
            .chain((1..=self.nparams).map(|i| format!("c{i}")))
            .collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        let names = self.variable_names();
        self.coords.iter().map(|c| c.to_string_with(&names)).collect()
    }

    pub fn describe(&self) -> String {
        format!("({})", self.to_strings().join(", "))
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            nparams: self.nparams,
            coords: self.to_strings(),
            kind: self.kind,
        }
    }

    pub fn from_json(json: &MorphismJson) -> Result<Self, MorphismError> {
        if json.coords.len() != json.target_dim {
            return Err(MorphismError::DimensionMismatch { expected: json.target_dim, found: json.coords.len() });
        }
        let names: Vec<String> = (1..=json.source_dim)
            .map(|i| format!("y{i}"))
            .chain((1..=json.nparams).map(|i| format!("c{i}")))
            .collect();
        let coords = json
            .coords
            .iter()
            .map(|s| parse_rational_function(s, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_coords(json.source_dim, json.nparams, coords, json.kind)
    }
}

impl PartialEq for CubeMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.equals(other)
    }
}

impl fmt::Display for CubeMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Named building blocks with checked indices (1-based).
#[derive(Clone, Debug)]
pub enum BasicMorphism {
    Involution { j: usize },
    Scaling { j: usize, scalar: Scalar },
    Multiplication,
    Face { j: usize, eps: u8 },
    Projection { j: usize },
    VertexFlip { vertex: Vec<u8> },
    VertexScaling { vertex: Vec<u8>, params: Vec<Scalar> },
}

impl BasicMorphism {
    /// Builds the morphism on `□^n` (for faces, into `□^n`).
    pub fn build(&self, n: usize, nparams: usize) -> Result<CubeMorphism, MorphismError> {
        let check = |j: usize| {
            if (1..=n).contains(&j) {
                Ok(())
            } else {
                Err(MorphismError::IndexOutOfRange { index: j, dim: n })
            }
        };
        match self {
            BasicMorphism::Involution { j } => {
                check(*j)?;
                Ok(CubeMorphism::involution(n, *j, nparams))
            }
            BasicMorphism::Scaling { j, scalar } => {
                check(*j)?;
                if scalar.nparams() != nparams {
                    return Err(MorphismError::ParameterMismatch);
                }
                CubeMorphism::scaling(n, *j, scalar)
            }
            BasicMorphism::Multiplication => {
                if n != 2 {
                    return Err(MorphismError::DimensionMismatch { expected: 2, found: n });
                }
                Ok(CubeMorphism::multiplication(nparams))
            }
            BasicMorphism::Face { j, eps } => {
                check(*j)?;
                Ok(CubeMorphism::face_inclusion(n, *j, *eps, nparams))
            }
            BasicMorphism::Projection { j } => {
                check(*j)?;
                Ok(CubeMorphism::projection(n, *j, nparams))
            }
            BasicMorphism::VertexFlip { vertex } => {
                if vertex.len() != n {
                    return Err(MorphismError::DimensionMismatch { expected: n, found: vertex.len() });
                }
                Ok(CubeMorphism::vertex_flip(vertex, nparams))
            }
            BasicMorphism::VertexScaling { vertex, params } => {
                if vertex.len() != n || params.len() != n {
                    return Err(MorphismError::DimensionMismatch { expected: n, found: vertex.len() });
                }
                if params.iter().any(|p| p.nparams() != nparams) {
                    return Err(MorphismError::ParameterMismatch);
                }
                Ok(CubeMorphism::vertex_scaling(vertex, params))
            }
        }
    }
}

/// Serialized morphism: coordinate strings in `y1..y_source` and `c1..c_r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphismJson {
    pub source_dim: usize,
    pub target_dim: usize,
    #[serde(default)]
    pub nparams: usize,
    pub coords: Vec<String>,
    #[serde(default = "general_kind")]
    pub kind: MorphismKind,
}

fn general_kind() -> MorphismKind {
    MorphismKind::General
}

/// Parameters `c1..c_n` as symbolic scalars.
pub fn symbolic_parameters(n: usize) -> Vec<Scalar> {
    (0..n).map(|k| Scalar::param(k, n)).collect()
}

/// Rational values as scalars with no formal parameters.
pub fn numeric_parameters(values: &[Rational]) -> Vec<Scalar> {
    values.iter().map(|v| Scalar::constant(v.clone(), 0)).collect()
}
