//! Bi-division, its homotopy, cubical subdivision and general-position sampling.

use std::fmt;

use cubechow_poly::{is_zero_or_one, Rational};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cube::{vertex_sign, vertices};
use crate::cycle::Cycle;
use crate::error::SubdivisionError;
use crate::morphism::{numeric_parameters, CubeMorphism, Scalar};

/// Rational point of `□^n` off every face: no coordinate is 0 or 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneralPoint(Vec<Rational>);

impl GeneralPoint {
    pub fn new(values: Vec<Rational>) -> Result<Self, SubdivisionError> {
        if let Some(v) = values.iter().find(|v| is_zero_or_one(v)) {
            return Err(SubdivisionError::ParameterOnFace(v.to_string()));
        }
        Ok(GeneralPoint(values))
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Coordinate `i` (1-based).
    pub fn coord(&self, i: usize) -> &Rational {
        &self.0[i - 1]
    }

    fn scalars(&self) -> Vec<Scalar> {
        numeric_parameters(&self.0)
    }
}

impl fmt::Display for GeneralPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn ensure_admissible(cycle: Cycle, stage: usize, what: &str) -> Result<Cycle, SubdivisionError> {
    match cycle.admissibility() {
        Ok(()) => Ok(cycle),
        Err(w) => Err(SubdivisionError::NonGeneral { stage, detail: format!("{what}: {w}") }),
    }
}

fn ensure_off_faces(c: &Rational) -> Result<(), SubdivisionError> {
    if is_zero_or_one(c) {
        Err(SubdivisionError::ParameterOnFace(c.to_string()))
    } else {
        Ok(())
    }
}

/// `y_i ↦ 1 - (1 - c) y_i`, the composite of the involution and the scaling by `1 - c`.
fn flipped_scaling(n: usize, i: usize, c: &Rational) -> CubeMorphism {
    let s = Scalar::constant(Rational::one() - c, 0);
    CubeMorphism::involution(n, i, 0)
        .compose(&CubeMorphism::scaling(n, i, &s).expect("1 - c is off the faces"))
        .expect("same dimension")
}

/// `δ_{c,i}(Z) = σ_{c,i}^* Z - (τ_i σ_{1-c,i})^* Z`. Both pullbacks must stay admissible.
pub fn bidivision(z: &Cycle, i: usize, c: &Rational) -> Result<Cycle, SubdivisionError> {
    ensure_off_faces(c)?;
    let n = z.cube_dim();
    let scaled = CubeMorphism::scaling(n, i, &Scalar::constant(c.clone(), 0)).expect("c is off the faces");
    let first = ensure_admissible(z.pullback(&scaled)?, i, "scaled pullback")?;
    let second = ensure_admissible(z.pullback(&flipped_scaling(n, i, c))?, i, "flipped pullback")?;
    Ok(first.try_sub(&second)?)
}

/// Whether the homotopy carries the sign `(-1)^(n+1)`. `Unsigned` exists to check
/// that the certificate notices a dropped sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignConvention {
    Alternating,
    Unsigned,
}

/// `φ_{c,i}(Z) = (-1)^(n+1) (H0^* Z - H1^* Z)` on `Y × □^(n+1)`.
pub fn phi(z: &Cycle, i: usize, c: &GeneralPoint, sign: SignConvention) -> Result<Cycle, SubdivisionError> {
    let n = z.cube_dim();
    let scalars = c.scalars();
    let h0 = CubeMorphism::homotopy_map(n, 0, &scalars, i);
    let h1 = CubeMorphism::homotopy_map(n, 1, &scalars, i);
    let a = ensure_admissible(z.pullback(&h0)?, i, "level-0 homotopy pullback")?;
    let b = ensure_admissible(z.pullback(&h1)?, i, "level-1 homotopy pullback")?;
    let k = match sign {
        SignConvention::Alternating if n.is_multiple_of(2) => -1,
        _ => 1,
    };
    Ok(a.try_sub(&b)?.scale(k))
}

/// Both sides of `∂φ_{c,i}(Z) = Z - δ_{c_i,i}(Z)`.
#[derive(Clone, Debug)]
pub struct HomotopyCertificate {
    pub input: Cycle,
    pub point: GeneralPoint,
    pub index: usize,
    pub homotopy: Cycle,
    pub lhs: Cycle,
    pub rhs: Cycle,
    pub pass: bool,
}

fn require_normalized(z: &Cycle, member: Option<&dyn Fn(&Cycle) -> bool>) -> Result<(), SubdivisionError> {
    for (i, eps, f) in z.nonzero_faces()? {
        if !member.is_some_and(|m| m(&f)) {
            return Err(SubdivisionError::NotNormalized { face: format!("y{i}={eps}") });
        }
    }
    Ok(())
}

pub fn phi_homotopy(z: &Cycle, i: usize, c: &GeneralPoint) -> Result<HomotopyCertificate, SubdivisionError> {
    phi_homotopy_with(z, i, c, SignConvention::Alternating, None)
}

/// Homotopy certificate. With a membership test, faces of `Z` only need to pass it
/// and the two sides only need to agree up to a cycle that passes it.
pub fn phi_homotopy_with(
    z: &Cycle,
    i: usize,
    c: &GeneralPoint,
    sign: SignConvention,
    member: Option<&dyn Fn(&Cycle) -> bool>,
) -> Result<HomotopyCertificate, SubdivisionError> {
    require_normalized(z, member)?;
    let homotopy = phi(z, i, c, sign)?;
    let lhs = homotopy.boundary()?;
    let rhs = z.try_sub(&bidivision(z, i, c.coord(i))?)?;
    let pass = lhs == rhs || member.is_some_and(|m| m(&lhs.try_sub(&rhs).expect("same space")));
    Ok(HomotopyCertificate { input: z.clone(), point: c.clone(), index: i, homotopy, lhs, rhs, pass })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubdivisionForm {
    Iterated,
    VertexSum,
}

/// `π_v ∘ ι_v`: scale coordinate `i` by `c_i` where `v_i = 0`, and send it to
/// `1 - (1 - c_i) y_i` where `v_i = 1`.
pub fn vertex_map(v: &[u8], c: &GeneralPoint) -> CubeMorphism {
    CubeMorphism::vertex_flip(v, 0)
        .compose(&CubeMorphism::vertex_scaling(v, &c.scalars()))
        .expect("same dimension")
}

/// Signed vertex terms `(ε(v), (π_v ι_v)^* Z)` of the vertex-sum subdivision.
pub fn vertex_terms(z: &Cycle, c: &GeneralPoint) -> Result<Vec<(i64, Cycle)>, SubdivisionError> {
    vertices(z.cube_dim())
        .into_iter()
        .enumerate()
        .map(|(k, v)| {
            let pulled = ensure_admissible(z.pullback(&vertex_map(&v, c))?, k, "vertex pullback")?;
            Ok((vertex_sign(&v), pulled))
        })
        .collect()
}

pub fn cubical_subdivision(z: &Cycle, c: &GeneralPoint, form: SubdivisionForm) -> Result<Cycle, SubdivisionError> {
    match form {
        SubdivisionForm::Iterated => {
            let mut acc = z.clone();
            for i in 1..=z.cube_dim() {
                acc = bidivision(&acc, i, c.coord(i))?;
            }
            Ok(acc)
        }
        SubdivisionForm::VertexSum => {
            let mut acc = Cycle::zero(z.ambient().clone(), z.cube_dim(), z.rel_dim());
            for (sign, term) in vertex_terms(z, c)? {
                acc = acc.try_add(&term.scale(sign))?;
            }
            Ok(acc)
        }
    }
}

/// Telescoping homotopy `φ_n = Σ_i φ_{c,i}(δ_{i-1} ⋯ δ_1 Z)` with both sides of
/// `∂φ_n = Z - sd_c(Z)`.
#[derive(Clone, Debug)]
pub struct ChainCertificate {
    pub chain: Cycle,
    /// `Z, δ_1 Z, δ_2 δ_1 Z, …`; the last entry is `sd_c(Z)`.
    pub stages: Vec<Cycle>,
    /// Whether each stage has only zero codimension-one faces.
    pub stages_normalized: Vec<bool>,
    pub lhs: Cycle,
    pub rhs: Cycle,
    pub pass: bool,
}

pub fn phi_chain(z: &Cycle, c: &GeneralPoint) -> Result<ChainCertificate, SubdivisionError> {
    require_normalized(z, None)?;
    let n = z.cube_dim();
    let mut chain = Cycle::zero(z.ambient().clone(), n + 1, z.rel_dim());
    let mut stages = vec![z.clone()];
    for i in 1..=n {
        let current = stages.last().expect("nonempty").clone();
        let term = phi(&current, i, c, SignConvention::Alternating).map_err(|e| restage(e, i))?;
        chain = chain.try_add(&term)?;
        stages.push(bidivision(&current, i, c.coord(i)).map_err(|e| restage(e, i))?);
    }
    let stages_normalized = stages
        .iter()
        .map(|s| s.is_normalized())
        .collect::<Result<Vec<_>, _>>()?;
    let lhs = chain.boundary()?;
    let rhs = z.try_sub(stages.last().expect("nonempty"))?;
    let pass = lhs == rhs && stages_normalized.iter().all(|&b| b);
    Ok(ChainCertificate { chain, stages, stages_normalized, lhs, rhs, pass })
}

fn restage(e: SubdivisionError, stage: usize) -> SubdivisionError {
    match e {
        SubdivisionError::NonGeneral { detail, .. } => SubdivisionError::NonGeneral { stage, detail },
        other => other,
    }
}

/// Every object built from `c` is admissible: the bi-division chain, the vertex
/// terms, and the homotopy pullbacks at each stage.
pub fn is_general_for(z: &Cycle, c: &GeneralPoint) -> bool {
    let check = || -> Result<(), SubdivisionError> {
        let mut current = z.clone();
        for i in 1..=z.cube_dim() {
            phi(&current, i, c, SignConvention::Alternating)?;
            phi(z, i, c, SignConvention::Alternating)?;
            current = bidivision(&current, i, c.coord(i))?;
        }
        vertex_terms(z, c)?;
        Ok(())
    };
    check().is_ok()
}

/// Deterministic stream of candidate points with coordinates `a/b`, `2 <= b <= 30`.
pub struct CandidateStream {
    rng: ChaCha8Rng,
    dim: usize,
}

impl CandidateStream {
    pub fn new(seed: u64, dim: usize) -> Self {
        CandidateStream { rng: ChaCha8Rng::seed_from_u64(seed), dim }
    }
}

impl Iterator for CandidateStream {
    type Item = GeneralPoint;

    fn next(&mut self) -> Option<GeneralPoint> {
        let values = (0..self.dim)
            .map(|_| {
                let den: i64 = self.rng.gen_range(2..=30);
                let num: i64 = self.rng.gen_range(1..den);
                Rational::new(num.into(), den.into())
            })
            .collect();
        Some(GeneralPoint(values))
    }
}

/// Outcome of rejection sampling: the accepted point and the rejected ones.
#[derive(Clone, Debug)]
pub struct Sample {
    pub point: GeneralPoint,
    pub rejected: Vec<GeneralPoint>,
}

/// First candidate accepted by [`is_general_for`], trying at most `budget` of them.
pub fn sample_from<I>(z: &Cycle, candidates: I, budget: usize) -> Result<Sample, SubdivisionError>
where
    I: IntoIterator<Item = GeneralPoint>,
{
    let mut rejected = Vec::new();
    for c in candidates.into_iter().take(budget) {
        if is_general_for(z, &c) {
            return Ok(Sample { point: c, rejected });
        }
        rejected.push(c);
    }
    Err(SubdivisionError::BudgetExhausted { attempts: rejected.len() })
}

pub fn sample_general_position(z: &Cycle, seed: u64, budget: usize) -> Result<GeneralPoint, SubdivisionError> {
    Ok(sample_from(z, CandidateStream::new(seed, z.cube_dim()), budget)?.point)
}
