use std::fmt;

use num_traits::Zero;

use crate::monomial::MonomialOrder;
use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::PolyError;

/// Quotient of two polynomials in the same ring. Equality is tested by
/// cross-multiplication, so different representations of the same function compare equal.
#[derive(Clone)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::UndefinedSubstitution);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let n = p.nvars();
        RationalFunction { num: p, den: Polynomial::one(n) }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::from_polynomial(Polynomial::constant(nvars, c))
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        Self::from_polynomial(Polynomial::var(nvars, index))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        let n = num.nvars();
        if num.is_zero() {
            return RationalFunction { num, den: Polynomial::one(n) };
        }
        if let Some(c) = den.constant_value() {
            return RationalFunction { num: num.scale(&c.recip()), den: Polynomial::one(n) };
        }
        if let Some(q) = num.div_exact(&den) {
            return RationalFunction { num: q, den: Polynomial::one(n) };
        }
        if !num.is_constant() {
            if let Some(q) = den.div_exact(&num) {
                return Self::normalized(Polynomial::one(n), q);
            }
        }
        let lc = den.leading_term(&MonomialOrder::Lex).map(|t| t.1.clone()).unwrap();
        let inv = lc.recip();
        RationalFunction { num: num.scale(&inv), den: den.scale(&inv) }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_polynomial(&self) -> Option<&Polynomial> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if self.is_polynomial() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.den == other.den {
            return Self::normalized(&self.num + &other.num, self.den.clone());
        }
        Self::normalized(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
    }

    pub fn neg(&self) -> Self {
        RationalFunction { num: -&self.num, den: self.den.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::normalized(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn div(&self, other: &Self) -> Result<Self, PolyError> {
        if other.is_zero() {
            return Err(PolyError::UndefinedSubstitution);
        }
        Ok(Self::normalized(&self.num * &other.den, &self.den * &other.num))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational, PolyError> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return Err(PolyError::UndefinedSubstitution);
        }
        Ok(self.num.eval(point) / d)
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn compose(&self, images: &[RationalFunction], target_nvars: usize) -> Result<Self, PolyError> {
        let n = self.num.compose_rational(images, target_nvars);
        let d = self.den.compose_rational(images, target_nvars);
        n.div(&d)
    }

    pub fn partial_eval(&self, assignment: &[Option<Rational>]) -> Result<Self, PolyError> {
        Self::new(self.num.partial_eval(assignment), self.den.partial_eval(assignment))
    }

    pub fn rename(&self, map: &[usize], target_nvars: usize) -> Self {
        RationalFunction {
            num: self.num.rename(map, target_nvars),
            den: self.den.rename(map, target_nvars),
        }
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.den.is_one() {
            self.num.to_string_with(names)
        } else {
            format!("({})/({})", self.num.to_string_with(names), self.den.to_string_with(names))
        }
    }
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        self.num.nvars() == other.num.nvars()
            && &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RationalFunction {}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        Self::from_polynomial(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn cancels_exact_factors_and_compares_by_cross_multiplication() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let r = RationalFunction::new(&x * &y, y.clone()).unwrap();
        assert!(r.is_polynomial());
        let a = RationalFunction::new(x.clone(), y.clone()).unwrap();
        let b = RationalFunction::new(x.scale(&int(2)), y.scale(&int(2))).unwrap();
        assert_eq!(a, b);
        assert!(RationalFunction::new(x, Polynomial::zero(2)).is_err());
    }
}
