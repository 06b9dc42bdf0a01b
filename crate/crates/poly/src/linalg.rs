use num_traits::{One, Zero};

use crate::rational::Rational;

/// Incremental linear-dependence detector over the rationals.
pub(crate) struct DependencyFinder {
    dim: usize,
    // (reduced vector, pivot column, combination of inserted vectors giving it)
    rows: Vec<(Vec<Rational>, usize, Vec<Rational>)>,
    inserted: usize,
}

impl DependencyFinder {
    pub(crate) fn new(dim: usize) -> Self {
        DependencyFinder { dim, rows: Vec::new(), inserted: 0 }
    }

    /// Adds vector number `k`. If it depends on the earlier ones, returns
    /// coefficients `a_0..a_k` with `a_k = 1` and `sum a_i v_i = 0`.
    pub(crate) fn push(&mut self, v: Vec<Rational>) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.dim);
        let k = self.inserted;
        self.inserted += 1;
        let mut vec = v;
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (row, pivot, rc) in &self.rows {
            let f = vec[*pivot].clone();
            if f.is_zero() {
                continue;
            }
            for (a, b) in vec.iter_mut().zip(row) {
                *a -= &f * b;
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                *a -= &f * b;
            }
        }
        match vec.iter().position(|a| !a.is_zero()) {
            None => Some(comb),
            Some(p) => {
                let inv = vec[p].recip();
                for a in vec.iter_mut() {
                    *a *= &inv;
                }
                for a in comb.iter_mut() {
                    *a *= &inv;
                }
                self.rows.push((vec, p, comb));
                None
            }
        }
    }
}

/// Characteristic polynomial `det(t I - A)` in ascending coefficients
/// (Faddeev–LeVerrier).
pub(crate) fn characteristic_polynomial(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        m = next;
        let am = matmul(a, &m);
        let trace: Rational = (0..n).map(|i| am[i][i].clone()).sum();
        coeffs[n - k] = -trace / Rational::from_integer(k.into());
    }
    coeffs
}

fn matmul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}
