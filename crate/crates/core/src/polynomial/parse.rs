//! Text grammar for polynomials:
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' natural)?
//! atom   := rational | 'x' index | '(' expr ')' | '-' factor
//! ```
//!
//! Rationals are `p` or `p/q`. Whitespace is insignificant.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::MultiPoly;
use crate::exact::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

impl fmt::Display for PolyParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for PolyParseError {}

const MAX_EXPONENT: u32 = 64;

/// Parses `text` as a polynomial in `x1 … x{nvars}`.
pub fn parse_poly(text: &str, nvars: usize) -> Result<MultiPoly, PolyParseError> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, nvars };
    p.skip_ws();
    if p.at_end() {
        return Err(p.error("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err(p.error(&format!("unexpected '{}'", p.chars[p.pos])));
    }
    Ok(e)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn error(&self, message: &str) -> PolyParseError {
        PolyParseError { column: self.pos + 1, message: message.to_string() }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = if self.eat('-') {
            self.term()?.neg()
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, PolyParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, PolyParseError> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(self.error("expected a natural exponent after '^'"));
            }
            let e: u32 = digits
                .parse()
                .ok()
                .filter(|&e| e <= MAX_EXPONENT)
                .ok_or_else(|| PolyParseError { column: start + 1, message: format!("exponent {digits} too large") })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn atom(&mut self) -> Result<MultiPoly, PolyParseError> {
        match self.peek() {
            None => Err(self.error("unexpected end of expression")),
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some('x') => {
                let start = self.pos;
                self.pos += 1;
                let digits = self.digits();
                let idx: usize = digits.parse().map_err(|_| PolyParseError {
                    column: start + 1,
                    message: "expected a variable index after 'x'".into(),
                })?;
                if idx == 0 || idx > self.nvars {
                    return Err(PolyParseError {
                        column: start + 1,
                        message: format!("unknown variable x{idx} (vars {})", self.nvars),
                    });
                }
                Ok(MultiPoly::var(self.nvars, idx - 1))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                let n: BigInt = self.digits().parse().expect("digits");
                let mut value = Rational::from_integer(n);
                // a '/' directly after a literal is part of the number
                let save = self.pos;
                if self.eat('/') {
                    self.skip_ws();
                    let d = self.digits();
                    if d.is_empty() {
                        self.pos = save;
                        return Err(self.error("expected a denominator after '/'"));
                    }
                    let d: BigInt = d.parse().expect("digits");
                    if d.is_zero() {
                        return Err(PolyParseError { column: start + 1, message: "zero denominator".into() });
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(MultiPoly::constant(self.nvars, value))
            }
            Some(c) => Err(self.error(&format!("unexpected '{c}'"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn grammar() {
        let p = parse_poly("x1*x2 - 2/3*x3^2 + 1", 3).unwrap();
        assert_eq!(p.num_terms(), 3);
        assert_eq!(p.coefficient(&[0, 0, 2]), rat(-2, 3));
        let q = parse_poly(" (x1 + 1)^2 ", 1).unwrap();
        assert_eq!(q.coefficient(&[1]), int(2));
        assert_eq!(parse_poly("-(x1)", 1).unwrap().coefficient(&[1]), int(-1));
        assert_eq!(parse_poly("2*-x1", 1).unwrap().coefficient(&[1]), int(-2));
    }

    #[test]
    fn positioned_errors() {
        let e = parse_poly("x1 + x3", 2).unwrap_err();
        assert_eq!(e.column, 6);
        assert!(e.message.contains("unknown variable x3"));
        assert_eq!(parse_poly("x1 +", 1).unwrap_err().column, 5);
        assert_eq!(parse_poly("1/0", 1).unwrap_err().message, "zero denominator");
        assert!(parse_poly("x1 x2", 2).is_err());
        assert!(parse_poly("", 2).is_err());
    }
}
