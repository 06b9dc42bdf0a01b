use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a monomial. Its length is the number of ring variables.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when every variable with a positive exponent belongs to `allowed`.
    pub fn supported_in(&self, allowed: &[bool]) -> bool {
        self.0.iter().zip(allowed).all(|(e, ok)| *e == 0 || *ok)
    }

    pub(crate) fn exponents_mut(&mut self) -> &mut Vec<u32> {
        &mut self.0
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Monomial orders. Variable 0 is the largest variable in every order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Product of graded reverse lexicographic orders: the blocks are compared
    /// in turn and the first block that differs decides.
    Blocks(Vec<Vec<usize>>),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(a, b, 0..a.0.len()),
            MonomialOrder::Blocks(blocks) => {
                for block in blocks {
                    let ord = grevlex(a, b, block.iter().copied());
                    if ord != Ordering::Equal {
                        return ord;
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Elimination order for `eliminated` inside a ring of `nvars` variables whose
    /// last `nparams` variables are parameters.
    pub fn elimination(eliminated: &[usize], nvars: usize, nparams: usize) -> MonomialOrder {
        let mut mask = vec![false; nvars];
        for &v in eliminated {
            mask[v] = true;
        }
        let first: Vec<usize> = (0..nvars).filter(|&v| mask[v]).collect();
        let middle: Vec<usize> = (0..nvars - nparams).filter(|&v| !mask[v]).collect();
        let last: Vec<usize> = (nvars - nparams..nvars).filter(|&v| !mask[v]).collect();
        MonomialOrder::Blocks(
            [first, middle, last]
                .into_iter()
                .filter(|b| !b.is_empty())
                .collect(),
        )
    }
}

fn grevlex<I>(a: &Monomial, b: &Monomial, vars: I) -> Ordering
where
    I: Iterator<Item = usize> + Clone,
{
    let da: u32 = vars.clone().map(|v| a.0[v]).sum();
    let db: u32 = vars.clone().map(|v| b.0[v]).sum();
    if da != db {
        return da.cmp(&db);
    }
    let idx: Vec<usize> = vars.collect();
    for &v in idx.iter().rev() {
        if a.0[v] != b.0[v] {
            return b.0[v].cmp(&a.0[v]);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_breaks_ties_on_last_variable() {
        let o = MonomialOrder::GrevLex;
        // x*z < y^2 in grevlex with x > y > z
        assert_eq!(o.compare(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.compare(&m(&[2, 0, 0]), &m(&[0, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn lex_prefers_first_variable() {
        let o = MonomialOrder::Lex;
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates_first_block() {
        let o = MonomialOrder::elimination(&[2], 3, 0);
        assert_eq!(o.compare(&m(&[0, 0, 1]), &m(&[4, 4, 0])), Ordering::Greater);
        assert_eq!(o.compare(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }
}
