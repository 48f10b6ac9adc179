//! Recursive-descent parser for
//!
//! ```text
//! expr     := term (("+"|"-") term)*
//! term     := factor ("*" factor)*
//! factor   := rational | var ("^" uint)?
//! rational := int ("/" uint)?
//! ```
//!
//! A leading sign on the first term is accepted as well.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{Monomial, Polynomial, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable '{name}' at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit run parses"))
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut sign = Rational::one();
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?.scale(&sign);
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                None => return Ok(acc),
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let n = self.vars.len();
        let mut coeff = Rational::one();
        let mut mono = Monomial::one(n);
        self.factor(&mut coeff, &mut mono)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coeff, &mut mono)?;
        }
        Ok(Polynomial::term(mono, coeff))
    }

    fn factor(&mut self, coeff: &mut Rational, mono: &mut Monomial) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits()?;
                let mut den = BigInt::one();
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    den = self.digits()?;
                    if den.is_zero() {
                        return self.err("zero denominator");
                    }
                }
                *coeff *= Rational::new(num, den);
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident");
                let idx = self.vars.iter().position(|v| v == name).ok_or_else(|| {
                    ParseError::UnknownVariable { name: name.to_string(), pos: start }
                })?;
                let mut e: u32 = 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let k = self.digits()?;
                    e = u32::try_from(k).or_else(|_| self.err("exponent too large"))?;
                }
                mono.0[idx] += e;
                Ok(())
            }
            Some(_) => self.err("expected a number or a variable"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `text` over the ordered variable list `variables`.
pub fn parse_polynomial(text: &str, variables: &[String]) -> Result<Polynomial, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: variables };
    p.expr()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn vars(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn single_power() {
        let p = parse_polynomial("x^4", &vars(&["x"])).unwrap();
        assert_eq!(p, Polynomial::monomial(Monomial(vec![4])));
    }

    #[test]
    fn rational_coefficients() {
        let p = parse_polynomial("1/3*x^3 + x*y^2", &vars(&["x", "y"])).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Monomial(vec![3, 0])), rat(1, 3));
        assert_eq!(p.coeff(&Monomial(vec![1, 2])), rat(1, 1));
    }

    #[test]
    fn subtraction_of_products() {
        let p = parse_polynomial("x^3 + y^3 + z^3 - 1*x*y*z", &vars(&["x", "y", "z"])).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.coeff(&Monomial(vec![1, 1, 1])), rat(-1, 1));
    }

    #[test]
    fn whitespace_is_ignored() {
        let a = parse_polynomial(" x ^ 2 *y+ 2 / 4 ", &vars(&["x", "y"])).unwrap();
        let b = parse_polynomial("x^2*y+1/2", &vars(&["x", "y"])).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_positions() {
        let v = vars(&["x", "y"]);
        assert_eq!(
            parse_polynomial("x + w", &v),
            Err(ParseError::UnknownVariable { name: "w".into(), pos: 4 })
        );
        assert!(matches!(parse_polynomial("x +", &v), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_polynomial("x^", &v), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("1/0", &v), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_polynomial("x y", &v), Err(ParseError::Syntax { pos: 2, .. })));
    }
}
