//! Text grammar for polynomials and rational functions.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := ('-' | '+') unary | power
//! power := atom ('^' integer)?
//! atom  := integer | name | '(' expr ')'
//! ```
//! Names match `[A-Za-z][A-Za-z0-9_]*` and must be variables of the supplied list.

use num_bigint::BigInt;

use crate::polynomial::Polynomial;
use crate::rational::Rational;
use crate::ratfun::RationalFunction;
use crate::PolyError;

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Op(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>, PolyError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Int(s.parse().expect("digits")));
        } else if ch.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Name(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(ch) {
            out.push(Token::Op(ch));
            i += 1;
        } else {
            return Err(PolyError::Parse(format!("unexpected character `{ch}` in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    names: &'a [String],
    text: &'a str,
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn error(&self, what: &str) -> PolyError {
        PolyError::Parse(format!("{what} at token {} in `{}`", self.pos + 1, self.text))
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Token::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, PolyError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat_op('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, PolyError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat_op('/') {
                let rhs = self.unary()?;
                acc = acc
                    .div(&rhs)
                    .map_err(|_| self.error("division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, PolyError> {
        if self.eat_op('-') {
            return Ok(self.unary()?.neg());
        }
        if self.eat_op('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, PolyError> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let e = match self.peek() {
            Some(Token::Int(k)) => u32::try_from(k.clone()).map_err(|_| self.error("exponent too large"))?,
            _ => return Err(self.error("expected exponent")),
        };
        self.pos += 1;
        let mut acc = RationalFunction::constant(self.nvars(), Rational::from_integer(1.into()));
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<RationalFunction, PolyError> {
        match self.peek().cloned() {
            Some(Token::Int(k)) => {
                self.pos += 1;
                Ok(RationalFunction::constant(self.nvars(), Rational::from_integer(k)))
            }
            Some(Token::Name(name)) => {
                self.pos += 1;
                let idx = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
                Ok(RationalFunction::var(self.nvars(), idx))
            }
            Some(Token::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}

pub fn parse_rational_function(text: &str, names: &[String]) -> Result<RationalFunction, PolyError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(PolyError::Parse("empty expression".into()));
    }
    let mut parser = Parser { tokens, pos: 0, names, text };
    let value = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(parser.error("trailing input"));
    }
    Ok(value)
}

pub fn parse_polynomial(text: &str, names: &[String]) -> Result<Polynomial, PolyError> {
    let r = parse_rational_function(text, names)?;
    r.as_polynomial()
        .cloned()
        .ok_or_else(|| PolyError::Parse(format!("`{text}` is not a polynomial")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn names() -> Vec<String> {
        ["x1", "y2"].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn round_trips_grammar_example() {
        let p = parse_polynomial("3/2*x1^2*y2 - 1", &names()).unwrap();
        assert_eq!(p.to_string_with(&names()), "3/2*x1^2*y2 - 1");
        assert_eq!(p.eval(&[rat(2, 1), rat(1, 3)]), rat(1, 1));
    }

    #[test]
    fn parses_quotients() {
        let r = parse_rational_function("(x1)/(1 - y2)", &names()).unwrap();
        assert!(!r.is_polynomial());
        assert_eq!(r.to_string_with(&names()), "(-x1)/(y2 - 1)");
    }

    #[test]
    fn rejects_unknown_names_and_garbage() {
        assert!(matches!(parse_polynomial("z", &names()), Err(PolyError::UnknownVariable(_))));
        assert!(parse_polynomial("x1 +", &names()).is_err());
        assert!(parse_polynomial("x1 $ 2", &names()).is_err());
        assert!(parse_polynomial("1/x1", &names()).is_err());
    }
}
