//! Buchberger's algorithm with the normal selection strategy, the coprime
//! leading-monomial criterion and the chain criterion.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::monomial::{Monomial, MonomialOrder};
use crate::polynomial::Polynomial;
use crate::rational::Rational;

/// Terms sorted ascending under the working order, so the leading term is last.
#[derive(Clone)]
struct Sorted {
    terms: Vec<(Monomial, Rational)>,
}

impl Sorted {
    fn from_poly(p: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, Rational)> =
            p.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| order.compare(&a.0, &b.0));
        Sorted { terms }
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn lead(&self) -> &(Monomial, Rational) {
        self.terms.last().expect("nonzero")
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.last() {
            if !c.is_one() {
                let inv = c.recip();
                for t in &mut self.terms {
                    t.1 *= &inv;
                }
            }
        }
    }

    /// `self - c * m * other`, merging two ascending term lists.
    fn sub_scaled(&self, c: &Rational, m: &Monomial, other: &Sorted, order: &MonomialOrder) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(k, v)| (k.mul(m), v * c)).peekable();
        loop {
            let next = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Some(Ordering::Less),
                (None, Some(_)) => Some(Ordering::Greater),
                (Some(x), Some(y)) => Some(order.compare(&x.0, &y.0)),
            };
            match next {
                Some(Ordering::Less) => out.push(a.next().unwrap().clone()),
                Some(Ordering::Greater) => {
                    let (k, v) = b.next().unwrap();
                    out.push((k, -v));
                }
                _ => {
                    let (k, x) = a.next().unwrap().clone();
                    let (_, y) = b.next().unwrap();
                    let diff = x - y;
                    if !diff.is_zero() {
                        out.push((k, diff));
                    }
                }
            }
        }
        Sorted { terms: out }
    }
}

/// Fully reduces `f` modulo `basis`.
fn reduce(f: &Sorted, basis: &[Sorted], order: &MonomialOrder) -> Sorted {
    let mut p = f.clone();
    let mut remainder: Vec<(Monomial, Rational)> = Vec::new();
    while let Some((lm, lc)) = p.terms.last().cloned() {
        let divisor = basis.iter().find(|g| g.lead().0.divides(&lm));
        match divisor {
            Some(g) => {
                let (gm, gc) = g.lead();
                let q = gm.quotient_of(&lm);
                let c = &lc / gc;
                p = p.sub_scaled(&c, &q, g, order);
            }
            None => {
                remainder.push(p.terms.pop().unwrap());
            }
        }
    }
    remainder.reverse();
    Sorted { terms: remainder }
}

fn s_polynomial(f: &Sorted, g: &Sorted, order: &MonomialOrder) -> Sorted {
    let (fm, fc) = f.lead();
    let (gm, gc) = g.lead();
    let l = fm.lcm(gm);
    let a = fm.quotient_of(&l);
    let b = gm.quotient_of(&l);
    let left = Sorted { terms: Vec::new() }.sub_scaled(&-fc.recip(), &a, f, order);
    left.sub_scaled(&gc.recip(), &b, g, order)
}

/// Reduced Gröbner basis of the ideal generated by `gens` under `order`.
///
/// Elements are monic and sorted by descending leading monomial. The zero ideal
/// gives the empty basis and the unit ideal gives `[1]`.
pub fn groebner_basis(gens: &[Polynomial], order: &MonomialOrder) -> Vec<Polynomial> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Vec::new(),
    };
    let mut basis: Vec<Sorted> = Vec::new();
    for g in gens {
        let mut s = Sorted::from_poly(g, order);
        if s.is_zero() {
            continue;
        }
        if s.terms.len() == 1 && s.lead().0.is_one() {
            return vec![Polynomial::one(nvars)];
        }
        s.make_monic();
        basis.push(s);
    }
    if basis.is_empty() {
        return Vec::new();
    }

    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pending.insert((i, j));
        }
    }

    while !pending.is_empty() {
        // Normal strategy: the pair with the smallest lcm of leading monomials.
        let &(i, j) = pending
            .iter()
            .min_by(|p, q| {
                let lp = basis[p.0].lead().0.lcm(&basis[p.1].lead().0);
                let lq = basis[q.0].lead().0.lcm(&basis[q.1].lead().0);
                order.compare(&lp, &lq).then(p.cmp(q))
            })
            .unwrap();
        pending.remove(&(i, j));

        let mi = &basis[i].lead().0;
        let mj = &basis[j].lead().0;
        if mi.is_coprime(mj) {
            continue;
        }
        let l = mi.lcm(mj);
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lead().0.divides(&l)
                && !pending.contains(&(i.min(k), i.max(k)))
                && !pending.contains(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }

        let s = s_polynomial(&basis[i], &basis[j], order);
        let mut h = reduce(&s, &basis, order);
        if h.is_zero() {
            continue;
        }
        if h.terms.len() == 1 && h.lead().0.is_one() {
            return vec![Polynomial::one(nvars)];
        }
        h.make_monic();
        let n = basis.len();
        basis.push(h);
        for k in 0..n {
            pending.insert((k, n));
        }
    }

    interreduce(basis, order)
        .into_iter()
        .map(|s| s.to_poly(nvars))
        .collect()
}

fn interreduce(basis: Vec<Sorted>, order: &MonomialOrder) -> Vec<Sorted> {
    // Minimal basis: drop elements whose leading monomial is divisible by another's.
    let mut minimal: Vec<Sorted> = Vec::new();
    for (idx, g) in basis.iter().enumerate() {
        let lm = &g.lead().0;
        let redundant = basis.iter().enumerate().any(|(k, h)| {
            k != idx && h.lead().0.divides(lm) && (h.lead().0 != *lm || k < idx)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced: Vec<Sorted> = Vec::with_capacity(minimal.len());
    for idx in 0..minimal.len() {
        let others: Vec<Sorted> = minimal
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, s)| s.clone())
            .collect();
        let lead = minimal[idx].terms.last().unwrap().clone();
        let mut tail = minimal[idx].clone();
        tail.terms.pop();
        let mut r = reduce(&tail, &others, order);
        r.terms.push(lead);
        r.make_monic();
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.compare(&b.lead().0, &a.lead().0));
    reduced
}

/// Normal form of `f` modulo a Gröbner basis computed under the same order.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    let sorted: Vec<Sorted> = basis.iter().map(|g| Sorted::from_poly(g, order)).collect();
    reduce(&Sorted::from_poly(f, order), &sorted, order).to_poly(f.nvars())
}
