use num_traits::{One, Zero};

use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Dense univariate polynomial, coefficients in ascending degree. No trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly(Vec<Rational>);

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly(coeffs)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn monic(&self) -> UniPoly {
        match self.0.last() {
            Some(lc) => UniPoly(self.0.iter().map(|c| c / lc).collect()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.0[dd].clone();
        let mut rem = self.0.clone();
        if rem.len() <= dd {
            return (UniPoly(Vec::new()), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lc;
            if !c.is_zero() {
                for (j, d) in divisor.0.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Square-free factorization `f = lc * prod_k g_k^k` (Yun). Returns `(k, g_k)` for
    /// every nonconstant `g_k`.
    pub fn squarefree_decomposition(&self) -> Vec<(usize, UniPoly)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_rem(&a0).0;
        let mut c = df.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((k, a.clone()));
            }
            b = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            k += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.0.len().max(other.0.len());
        UniPoly::new(
            (0..n)
                .map(|k| {
                    self.0.get(k).cloned().unwrap_or_else(Rational::zero)
                        - other.0.get(k).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    /// `self(p)` by Horner's rule.
    pub fn eval_polynomial(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(p.nvars());
        for c in self.0.iter().rev() {
            acc = &(&acc * p) + &Polynomial::constant(p.nvars(), c.clone());
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn from_roots(roots: &[(i64, usize)]) -> UniPoly {
        let mut acc = UniPoly::new(vec![int(1)]);
        for &(r, m) in roots {
            for _ in 0..m {
                let lin = [int(-r), int(1)];
                let mut next = vec![Rational::zero(); acc.0.len() + 1];
                for (i, a) in acc.0.iter().enumerate() {
                    for (j, b) in lin.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                acc = UniPoly::new(next);
            }
        }
        acc
    }

    #[test]
    fn yun_recovers_multiplicities() {
        let f = from_roots(&[(2, 3), (3, 1), (5, 2)]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(1, from_roots(&[(3, 1)])), (2, from_roots(&[(5, 1)])), (3, from_roots(&[(2, 1)]))]);
        assert_eq!(f.squarefree_part(), from_roots(&[(2, 1), (3, 1), (5, 1)]));
    }
}
