use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::context::VarContext;
use crate::groebner::{groebner_basis, normal_form};
use crate::linalg::{characteristic_polynomial, DependencyFinder};
use crate::monomial::{Monomial, MonomialOrder};
use crate::parse::parse_polynomial;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::univariate::UniPoly;
use crate::PolyError;

/// Finitely generated ideal. The reduced Gröbner basis under the context's default
/// order is computed on first use and cached.
pub struct Ideal {
    ctx: Arc<VarContext>,
    gens: Vec<Polynomial>,
    basis: OnceLock<Vec<Polynomial>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal { ctx: self.ctx.clone(), gens: self.gens.clone(), basis }
    }
}

impl Ideal {
    pub fn new(ctx: Arc<VarContext>, gens: Vec<Polynomial>) -> Result<Self, PolyError> {
        let n = ctx.nvars();
        if let Some(g) = gens.iter().find(|g| g.nvars() != n) {
            return Err(PolyError::RingMismatch { expected: n, found: g.nvars() });
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ctx, gens, basis: OnceLock::new() })
    }

    fn from_basis(ctx: Arc<VarContext>, basis: Vec<Polynomial>) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(basis.clone());
        Ideal { ctx, gens: basis, basis: cell }
    }

    pub fn parse(ctx: Arc<VarContext>, gens: &[&str]) -> Result<Self, PolyError> {
        let names = ctx.names();
        let polys = gens
            .iter()
            .map(|g| parse_polynomial(g, &names))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ctx, polys)
    }

    pub fn unit(ctx: Arc<VarContext>) -> Self {
        let n = ctx.nvars();
        Ideal::from_basis(ctx, vec![Polynomial::one(n)])
    }

    pub fn zero(ctx: Arc<VarContext>) -> Self {
        Ideal::from_basis(ctx, Vec::new())
    }

    pub fn context(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.nvars()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    /// Reduced Gröbner basis under the default order.
    pub fn groebner(&self) -> &[Polynomial] {
        self.basis
            .get_or_init(|| groebner_basis(&self.gens, &self.ctx.default_order()))
    }

    pub fn groebner_with(&self, order: &MonomialOrder) -> Vec<Polynomial> {
        groebner_basis(self.groebner(), order)
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().first().is_some_and(|g| g.is_one())
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        normal_form(f, self.groebner(), &self.ctx.default_order()).is_zero()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        self.with_generators(other.gens.iter().cloned())
    }

    pub fn with_generators<I: IntoIterator<Item = Polynomial>>(&self, extra: I) -> Ideal {
        let mut gens: Vec<Polynomial> = self.groebner().to_vec();
        gens.extend(extra);
        Ideal::new(self.ctx.clone(), gens).expect("same ring")
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(self.ctx.clone(), gens).expect("same ring")
    }

    /// Krull dimension of the zero set, counting only non-parameter variables.
    /// `None` means the zero set is empty.
    pub fn dimension(&self) -> Option<usize> {
        let n = self.ctx.nvars();
        let free = n - self.ctx.nparams();
        let leads: Vec<Monomial> = self
            .groebner()
            .iter()
            .map(|g| g.leading_monomial(&self.ctx.default_order()).unwrap().clone())
            .collect();
        let param_mask: Vec<bool> = (0..n).map(|v| v >= free).collect();
        if leads.iter().any(|m| m.supported_in(&param_mask)) {
            return None;
        }
        for size in (0..=free).rev() {
            for subset in subsets_of_size(free, size) {
                let mut mask = param_mask.clone();
                for v in subset {
                    mask[v] = true;
                }
                if leads.iter().all(|m| !m.supported_in(&mask)) {
                    return Some(size);
                }
            }
        }
        unreachable!("the empty set is independent when the ideal is proper")
    }

    /// `I : f^∞`.
    pub fn saturate(&self, f: &Polynomial) -> Ideal {
        if f.is_zero() {
            return Ideal::unit(self.ctx.clone());
        }
        if f.is_constant() || self.is_unit() {
            return self.clone();
        }
        let n = self.nvars();
        let r = self.ctx.nparams();
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.groebner().iter().map(|g| g.extend(n + 1)).collect();
        gens.push(&Polynomial::one(n + 1) - &(&t * &f.extend(n + 1)));
        let order = fix_param_block(MonomialOrder::elimination(&[n], n + 1, 0), n, r);
        let basis = groebner_basis(&gens, &order);
        let mut drop = vec![false; n + 1];
        drop[n] = true;
        let kept: Vec<Polynomial> = basis
            .into_iter()
            .filter(|g| !g.uses_var(n))
            .map(|g| g.drop_vars(&drop))
            .collect();
        Ideal::new(self.ctx.clone(), kept).expect("same ring")
    }

    /// `I : J^∞`, the intersection of the saturations by the generators of `J`.
    pub fn saturate_ideal(&self, other: &Ideal) -> Ideal {
        let gens = other.groebner();
        if gens.is_empty() {
            return Ideal::unit(self.ctx.clone());
        }
        let mut acc = self.saturate(&gens[0]);
        for g in &gens[1..] {
            acc = acc.intersect(&self.saturate(g));
        }
        acc
    }

    /// `I ∩ k[remaining variables]`, kept in the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Ideal {
        if vars.is_empty() {
            return self.clone();
        }
        let order = MonomialOrder::elimination(vars, self.nvars(), self.ctx.nparams());
        let kept: Vec<Polynomial> = groebner_basis(self.groebner(), &order)
            .into_iter()
            .filter(|g| vars.iter().all(|&v| !g.uses_var(v)))
            .collect();
        Ideal::new(self.ctx.clone(), kept).expect("same ring")
    }

    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let n = self.nvars();
        let t = Polynomial::var(n + 1, n);
        let one_minus_t = &Polynomial::one(n + 1) - &t;
        let mut gens: Vec<Polynomial> =
            self.gens.iter().map(|g| &t * &g.extend(n + 1)).collect();
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.extend(n + 1)));
        let r = self.ctx.nparams();
        let order = fix_param_block(MonomialOrder::elimination(&[n], n + 1, 0), n, r);
        let mut drop = vec![false; n + 1];
        drop[n] = true;
        let kept: Vec<Polynomial> = groebner_basis(&gens, &order)
            .into_iter()
            .filter(|g| !g.uses_var(n))
            .map(|g| g.drop_vars(&drop))
            .collect();
        Ideal::new(self.ctx.clone(), kept).expect("same ring")
    }

    /// `g ∈ √I`, by testing `1 ∈ I + ⟨1 - t g⟩`.
    pub fn radical_contains(&self, g: &Polynomial) -> bool {
        if self.is_unit() || g.is_zero() {
            return true;
        }
        let n = self.nvars();
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.groebner().iter().map(|p| p.extend(n + 1)).collect();
        gens.push(&Polynomial::one(n + 1) - &(&t * &g.extend(n + 1)));
        let basis = groebner_basis(&gens, &MonomialOrder::GrevLex);
        basis.first().is_some_and(|b| b.is_one())
    }

    /// `V(self) ⊆ V(other)`.
    pub fn variety_contained(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.radical_contains(g))
    }

    /// Canonical basis printed with the context's names.
    pub fn to_strings(&self) -> Vec<String> {
        let names = self.ctx.names();
        self.groebner().iter().map(|g| g.to_string_with(&names)).collect()
    }

    fn require_no_params(&self) -> Result<(), PolyError> {
        if self.ctx.nparams() > 0 {
            Err(PolyError::ParametersUnsupported)
        } else {
            Ok(())
        }
    }

    /// Monomials outside the leading-term ideal, or `None` when the quotient ring is
    /// infinite dimensional.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, PolyError> {
        self.require_no_params()?;
        let order = self.ctx.default_order();
        let n = self.nvars();
        let leads: Vec<Monomial> = self
            .groebner()
            .iter()
            .map(|g| g.leading_monomial(&order).unwrap().clone())
            .collect();
        for v in 0..n {
            let pure = leads.iter().any(|m| {
                m.exponents().iter().enumerate().all(|(k, &e)| (k == v) == (e > 0))
            });
            if !pure && !leads.iter().any(|m| m.is_one()) {
                return Err(PolyError::NotZeroDimensional);
            }
        }
        let mut seen: BTreeSet<Monomial> = BTreeSet::new();
        let mut stack = vec![Monomial::one(n)];
        while let Some(m) = stack.pop() {
            if leads.iter().any(|l| l.divides(&m)) || !seen.insert(m.clone()) {
                continue;
            }
            for v in 0..n {
                stack.push(m.mul(&Monomial::var(n, v)));
            }
        }
        let mut out: Vec<Monomial> = seen.into_iter().collect();
        out.sort_by(|a, b| order.compare(a, b));
        Ok(out)
    }

    /// Dimension of the quotient ring as a vector space (the length of the scheme).
    pub fn length(&self) -> Result<usize, PolyError> {
        Ok(self.standard_monomials()?.len())
    }

    fn coordinates(&self, f: &Polynomial, basis: &BTreeMap<Monomial, usize>) -> Vec<Rational> {
        let nf = normal_form(f, self.groebner(), &self.ctx.default_order());
        let mut v = vec![Rational::zero(); basis.len()];
        for (m, c) in nf.terms() {
            v[basis[m]] = c.clone();
        }
        v
    }

    fn basis_index(&self) -> Result<(Vec<Monomial>, BTreeMap<Monomial, usize>), PolyError> {
        let std = self.standard_monomials()?;
        let index = std.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok((std, index))
    }

    /// Minimal polynomial of `f` acting on the quotient ring of a zero-dimensional ideal.
    pub fn minimal_polynomial(&self, f: &Polynomial) -> Result<UniPoly, PolyError> {
        let (_, index) = self.basis_index()?;
        let mut finder = DependencyFinder::new(index.len());
        let mut power = Polynomial::one(self.nvars());
        loop {
            let v = self.coordinates(&power, &index);
            if let Some(dep) = finder.push(v) {
                return Ok(UniPoly::new(dep));
            }
            power = normal_form(&(&power * f), self.groebner(), &self.ctx.default_order());
        }
    }

    /// Characteristic polynomial of multiplication by `f` on the quotient ring.
    pub fn characteristic_polynomial(&self, f: &Polynomial) -> Result<UniPoly, PolyError> {
        let (std, index) = self.basis_index()?;
        let cols: Vec<Vec<Rational>> = std
            .iter()
            .map(|m| self.coordinates(&(f * &Polynomial::monomial(m.clone(), Rational::one())), &index))
            .collect();
        let size = std.len();
        let matrix: Vec<Vec<Rational>> = (0..size)
            .map(|i| (0..size).map(|j| cols[j][i].clone()).collect())
            .collect();
        Ok(UniPoly::new(characteristic_polynomial(&matrix)))
    }

    /// Radical of a zero-dimensional ideal: add the square-free part of each
    /// variable's minimal polynomial.
    pub fn radical_zero_dim(&self) -> Result<Ideal, PolyError> {
        if self.is_unit() {
            return Ok(self.clone());
        }
        let n = self.nvars();
        let mut extra = Vec::new();
        for v in 0..n {
            let x = Polynomial::var(n, v);
            let mp = self.minimal_polynomial(&x)?;
            let sq = mp.squarefree_part();
            if sq.degree() != mp.degree() {
                extra.push(sq.eval_polynomial(&x));
            }
        }
        if extra.is_empty() {
            return Ok(self.clone());
        }
        Ok(self.with_generators(extra))
    }

    /// Splits a zero-dimensional scheme into reduced pieces grouped by multiplicity.
    /// Each returned ideal is radical; the pieces are not split further into
    /// irreducible components.
    pub fn multiplicity_decomposition(&self) -> Result<Vec<(u64, Ideal)>, PolyError> {
        if self.is_unit() {
            return Ok(Vec::new());
        }
        let total = self.length()?;
        let radical = self.radical_zero_dim()?;
        let reduced_len = radical.length()?;
        if total == reduced_len {
            return Ok(vec![(1, self.clone())]);
        }
        let n = self.nvars();
        for k in 1..=(2 * reduced_len as i64 + 2) {
            // x_0 + k x_1 + k^2 x_2 + ... separates the points for all but finitely many k.
            let mut form = Polynomial::zero(n);
            let mut w = Rational::one();
            for v in 0..n {
                form = &form + &Polynomial::var(n, v).scale(&w);
                w *= Rational::from_integer(k.into());
            }
            if radical.minimal_polynomial(&form)?.degree() != Some(reduced_len) {
                continue;
            }
            let chi = self.characteristic_polynomial(&form)?;
            let mut out = Vec::new();
            let mut check = 0usize;
            for (mult, g) in chi.squarefree_decomposition() {
                let piece = radical.with_generators([g.eval_polynomial(&form)]);
                if piece.is_unit() {
                    continue;
                }
                check += mult * piece.length()?;
                out.push((mult as u64, piece));
            }
            debug_assert_eq!(check, total);
            return Ok(out);
        }
        Err(PolyError::UnsupportedMultiplicity)
    }

    /// Top-dimensional cycle of the scheme `V(I)` as `(multiplicity, ideal)` pieces.
    ///
    /// Zero-dimensional schemes are split by multiplicity. A positive-dimensional
    /// scheme is accepted with multiplicity one when a generic linear slice of
    /// complementary dimension is reduced; otherwise the result is unsupported.
    pub fn top_cycle(&self) -> Result<Vec<(u64, Ideal)>, PolyError> {
        self.require_no_params()?;
        let dim = match self.dimension() {
            None => return Ok(Vec::new()),
            Some(d) => d,
        };
        if dim == 0 {
            return self.multiplicity_decomposition();
        }
        if self.groebner().iter().all(|g| g.total_degree().unwrap_or(0) <= 1) {
            return Ok(vec![(1, self.clone())]);
        }
        let n = self.nvars();
        for attempt in 0..4u64 {
            let slices: Vec<Polynomial> = (0..dim as u64)
                .map(|h| {
                    let mut p = Polynomial::constant(n, probe(attempt, h, n as u64));
                    for v in 0..n {
                        let c = probe(attempt, h, v as u64);
                        p = &p + &Polynomial::var(n, v).scale(&c);
                    }
                    p
                })
                .collect();
            let sliced = self.with_generators(slices);
            if sliced.dimension() != Some(0) {
                continue;
            }
            if sliced.length()? == sliced.radical_zero_dim()?.length()? {
                return Ok(vec![(1, self.clone())]);
            }
        }
        Err(PolyError::UnsupportedMultiplicity)
    }
}

/// Deterministic small nonzero integers used as slice coefficients.
fn probe(attempt: u64, hyperplane: u64, var: u64) -> Rational {
    let h = attempt
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .wrapping_add(hyperplane.wrapping_mul(0xC2B2_AE3D_27D4_EB4F))
        .wrapping_add(var.wrapping_mul(0x1656_67B1_9E37_79F9))
        .wrapping_add(0x27D4_EB2F_1656_67C5);
    let h = (h ^ (h >> 29)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    let v = ((h >> 33) % 37) as i64 - 18;
    Rational::from_integer(if v == 0 { 19 } else { v }.into())
}

/// Moves parameter variables (`n-r..n`) of a block order on `n+1` variables into
/// their own last block.
fn fix_param_block(order: MonomialOrder, n: usize, r: usize) -> MonomialOrder {
    if r == 0 {
        return order;
    }
    match order {
        MonomialOrder::Blocks(blocks) => {
            let params: Vec<usize> = (n - r..n).collect();
            let mut out: Vec<Vec<usize>> = blocks
                .into_iter()
                .map(|b| b.into_iter().filter(|v| !params.contains(v)).collect::<Vec<_>>())
                .filter(|b| !b.is_empty())
                .collect();
            out.push(params);
            MonomialOrder::Blocks(out)
        }
        other => other,
    }
}

fn subsets_of_size(n: usize, size: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u64..(1u64 << n))
        .filter(move |mask| mask.count_ones() as usize == size)
        .map(move |mask| (0..n).filter(|v| mask >> v & 1 == 1).collect())
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ctx == other.ctx && self.groebner() == other.groebner()
    }
}

impl Eq for Ideal {}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.to_strings().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(names: &[&str]) -> Arc<VarContext> {
        Arc::new(VarContext::plain(names).unwrap())
    }

    #[test]
    fn saturation_examples() {
        let c = ctx(&["x", "y"]);
        let i = Ideal::parse(c.clone(), &["x*y"]).unwrap();
        let x = parse_polynomial("x", &c.names()).unwrap();
        assert_eq!(i.saturate(&x), Ideal::parse(c.clone(), &["y"]).unwrap());
        let sq = Ideal::parse(c.clone(), &["x^2"]).unwrap();
        assert!(sq.saturate(&x).is_unit());
    }

    #[test]
    fn zero_dimensional_multiplicities() {
        let c = ctx(&["y"]);
        let i = Ideal::parse(c.clone(), &["(y - 2)^2*(y - 3)"]).unwrap();
        assert_eq!(i.length().unwrap(), 3);
        let dec = i.multiplicity_decomposition().unwrap();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (1, Ideal::parse(c.clone(), &["y - 3"]).unwrap()));
        assert_eq!(dec[1], (2, Ideal::parse(c.clone(), &["y - 2"]).unwrap()));
    }

    #[test]
    fn nonreduced_curve_is_rejected() {
        let c = ctx(&["x", "y"]);
        let i = Ideal::parse(c.clone(), &["(x*y - 1)^2"]).unwrap();
        assert_eq!(i.top_cycle(), Err(PolyError::UnsupportedMultiplicity));
        let ok = Ideal::parse(c, &["x*y^2 - 1"]).unwrap();
        assert_eq!(ok.top_cycle().unwrap().len(), 1);
    }
}
