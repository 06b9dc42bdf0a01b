use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::monomial::{Monomial, MonomialOrder};
use crate::rational::Rational;
use crate::ratfun::RationalFunction;

/// Sparse polynomial with rational coefficients in a fixed number of variables.
///
/// Variable names live in a [`crate::VarContext`]; a polynomial only knows how many
/// variables its ring has.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        assert!(index < nvars, "variable index {index} out of range");
        Self::monomial(Monomial::var(nvars, index), Rational::one())
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars);
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (including zero).
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponents()[var] > 0)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|t| t.0)
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self, order: &MonomialOrder) -> Polynomial {
        match self.leading_term(order) {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Replaces the assigned variables by constants; the ring is unchanged.
    pub fn partial_eval(&self, assignment: &[Option<Rational>]) -> Polynomial {
        assert_eq!(assignment.len(), self.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut coef = c.clone();
            let mut exps = m.clone();
            for (v, a) in assignment.iter().enumerate() {
                if let Some(value) = a {
                    let e = exps.exponents()[v];
                    if e > 0 {
                        coef *= num_traits::pow(value.clone(), e as usize);
                        exps.exponents_mut()[v] = 0;
                    }
                }
            }
            out.add_term(exps, coef);
        }
        out
    }

    /// Substitutes polynomial `images[i]` for variable `i`; all images live in a ring
    /// with `target_nvars` variables.
    pub fn compose(&self, images: &[Polynomial], target_nvars: usize) -> Polynomial {
        assert_eq!(images.len(), self.nvars);
        let powers = power_tables(self, images, target_nvars);
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_nvars, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &powers[v][e as usize];
                }
            }
            out = out + t;
        }
        out
    }

    /// Substitutes rational functions for every variable. Each variable's denominator
    /// is raised to that variable's degree, so the result denominator is a product of
    /// powers of the image denominators.
    pub fn compose_rational(
        &self,
        images: &[RationalFunction],
        target_nvars: usize,
    ) -> RationalFunction {
        assert_eq!(images.len(), self.nvars);
        if images.iter().all(|r| r.denominator().is_one()) {
            let polys: Vec<Polynomial> = images.iter().map(|r| r.numerator().clone()).collect();
            return RationalFunction::from_polynomial(self.compose(&polys, target_nvars));
        }
        let nums: Vec<Polynomial> = images.iter().map(|r| r.numerator().clone()).collect();
        let dens: Vec<Polynomial> = images.iter().map(|r| r.denominator().clone()).collect();
        let degs: Vec<u32> = (0..self.nvars).map(|v| self.degree_in(v)).collect();
        let num_pows = power_tables(self, &nums, target_nvars);
        let den_pows = power_tables(self, &dens, target_nvars);
        let mut numer = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(target_nvars, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                let full = degs[v];
                if full == 0 {
                    continue;
                }
                if e > 0 {
                    t = &t * &num_pows[v][e as usize];
                }
                if full > e && !dens[v].is_one() {
                    t = &t * &den_pows[v][(full - e) as usize];
                }
            }
            numer = numer + t;
        }
        let mut denom = Polynomial::one(target_nvars);
        for v in 0..self.nvars {
            if degs[v] > 0 && !dens[v].is_one() {
                denom = &denom * &den_pows[v][degs[v] as usize];
            }
        }
        RationalFunction::new(numer, denom).expect("image denominators are nonzero")
    }

    /// Moves variable `i` to position `map[i]` of a ring with `target_nvars` variables.
    pub fn rename(&self, map: &[usize], target_nvars: usize) -> Polynomial {
        assert_eq!(map.len(), self.nvars);
        let mut out = Polynomial::zero(target_nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target_nvars];
            for (v, &k) in m.exponents().iter().enumerate() {
                if k > 0 {
                    e[map[v]] += k;
                }
            }
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    /// Appends unused variables so the ring has `new_nvars` variables.
    pub fn extend(&self, new_nvars: usize) -> Polynomial {
        assert!(new_nvars >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.rename(&map, new_nvars)
    }

    /// Removes variables whose mask entry is true. Panics if a removed variable occurs.
    pub fn drop_vars(&self, removed: &[bool]) -> Polynomial {
        assert_eq!(removed.len(), self.nvars);
        let kept = removed.iter().filter(|r| !**r).count();
        let mut out = Polynomial::zero(kept);
        for (m, c) in &self.terms {
            let e: Vec<u32> = m
                .exponents()
                .iter()
                .zip(removed)
                .filter_map(|(&k, &r)| {
                    assert!(!r || k == 0, "dropping a variable that occurs");
                    (!r).then_some(k)
                })
                .collect();
            out.add_term(Monomial::from_exponents(e), c.clone());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponents()[var];
            if e > 0 {
                let mut n = m.clone();
                n.exponents_mut()[var] -= 1;
                out.add_term(n, c * Rational::from_integer(e.into()));
            }
        }
        out
    }

    /// Exact quotient `self / divisor` when the division leaves no remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        if divisor.is_zero() {
            return None;
        }
        let order = MonomialOrder::Lex;
        let (dm, dc) = divisor.leading_term(&order).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rest = self.clone();
        let mut quotient = Polynomial::zero(self.nvars);
        while let Some((m, c)) = rest.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())) {
            if !dm.divides(&m) {
                return None;
            }
            let qm = dm.quotient_of(&m);
            let qc = c / &dc;
            rest = rest - divisor.mul_monomial(&qm, &qc);
            quotient.add_term(qm, qc);
        }
        Some(quotient)
    }

    /// Prints with the given variable names, terms in descending graded reverse
    /// lexicographic order.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let order = MonomialOrder::GrevLex;
        let mut terms: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| order.compare(b.0, a.0));
        let mut out = String::new();
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{}", names[v], e)),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    fn default_names(&self) -> Vec<String> {
        (1..=self.nvars).map(|i| format!("v{i}")).collect()
    }
}

fn power_tables(p: &Polynomial, images: &[Polynomial], target_nvars: usize) -> Vec<Vec<Polynomial>> {
    (0..p.nvars)
        .map(|v| {
            let d = p.degree_in(v) as usize;
            let mut table = vec![Polynomial::one(target_nvars)];
            for k in 1..=d {
                let next = &table[k - 1] * &images[v];
                table.push(next);
            }
            table
        })
        .collect()
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&self.default_names()))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn x(i: usize) -> Polynomial {
        Polynomial::var(3, i)
    }

    #[test]
    fn arithmetic_and_printing() {
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let p = &(&x(0) * &x(1)) - &Polynomial::constant(3, rat(3, 2));
        assert_eq!(p.to_string_with(&names), "x*y - 3/2");
        let q = (&x(0) + &x(1)).pow(2);
        assert_eq!(q.to_string_with(&names), "x^2 + 2*x*y + y^2");
    }

    #[test]
    fn exact_division() {
        let a = &x(0) - &x(1);
        let b = &x(0) + &x(2);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a), Some(b.clone()));
        assert_eq!((&prod + &Polynomial::one(3)).div_exact(&a), None);
    }

    #[test]
    fn partial_evaluation() {
        let p = &x(0) * &x(1);
        let q = p.partial_eval(&[Some(int(2)), None, None]);
        assert_eq!(q, x(1).scale(&int(2)));
        assert_eq!(p.eval(&[int(2), int(3), int(0)]), int(6));
    }
}
