//! Text parser for polynomials.
//!
//! Grammar (whitespace insignificant):
//!
//! ```text
//! expression := sign? term (sign term)*
//! sign       := '+' | '-'
//! term       := factor ('*' factor)*
//! factor     := atom ('^' digits)?
//! atom       := number | identifier | '(' expression ')'
//! number     := digits ('/' digits)?
//! identifier := [a-zA-Z][a-zA-Z0-9]*
//! ```
//!
//! Multiplication is always explicit (`2*x*y`, never `2xy`), exponents are
//! non-negative integers, and rational constants use `/` between two integer
//! literals. Note that `x^2/4` is *not* valid: `/` only joins two integer
//! literals, so write `1/4*x^2` instead. Parse errors carry the byte offset
//! of the offending token.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::poly::{Poly, Rational};

const MAX_EXPONENT: u32 = 100_000;

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    allowed: Option<Vec<String>>,
}

impl<'a> Parser<'a> {
    fn new(input: &'a str, allowed: Option<&[&str]>) -> Self {
        Parser {
            bytes: input.as_bytes(),
            pos: 0,
            allowed: allowed.map(|vs| vs.iter().map(|s| s.to_string()).collect()),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse { position: self.pos, message: message.into() }
    }

    fn expression(&mut self) -> Result<Poly, Error> {
        let mut negative = false;
        match self.peek() {
            Some(b'+') => {
                self.pos += 1;
            }
            Some(b'-') => {
                self.pos += 1;
                negative = true;
            }
            _ => {}
        }
        let mut acc = self.term()?;
        if negative {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t);
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, Error> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, Error> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let exp = self.digits("exponent")?;
            let exp: u32 = exp
                .to_string()
                .parse()
                .map_err(|_| self.error("exponent too large"))?;
            if exp > MAX_EXPONENT {
                return Err(self.error("exponent too large"));
            }
            return Ok(base.pow(exp));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expression()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("unbalanced parenthesis: expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.identifier(),
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("expected a term")),
        }
    }

    fn number(&mut self) -> Result<Poly, Error> {
        let numer = self.digits("number")?;
        let mut value = Rational::from_integer(numer);
        // A '/' continues the rational literal only when followed by digits;
        // the grammar has no other use for '/'.
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let denom_pos = self.pos;
            let denom = self.digits("denominator")?;
            if denom.is_zero() {
                return Err(Error::Parse {
                    position: denom_pos,
                    message: "zero denominator".to_string(),
                });
            }
            value = Rational::new(value.numer().clone(), denom);
        }
        Ok(Poly::constant(&[], value))
    }

    fn digits(&mut self, what: &str) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(Error::Parse {
                position: start,
                message: format!("expected {what}"),
            });
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        Ok(text.parse().expect("digit run parses as integer"))
    }

    fn identifier(&mut self) -> Result<Poly, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric())
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        if let Some(allowed) = &self.allowed {
            if !allowed.iter().any(|v| v == name) {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unknown variable '{name}'"),
                });
            }
        }
        Ok(Poly::variable(&[name], name).unwrap())
    }
}

/// Parses a polynomial from text.
///
/// With `vars: None` the variable list is inferred in first-appearance
/// order. With `vars: Some(list)` the result is expressed over exactly that
/// list (in that order) and any other identifier is a parse error.
pub fn parse_polynomial(input: &str, vars: Option<&[&str]>) -> Result<Poly, Error> {
    let mut parser = Parser::new(input, vars);
    let poly = parser.expression()?;
    parser.skip_ws();
    if parser.pos != parser.bytes.len() {
        return Err(parser.error("trailing input"));
    }
    match vars {
        None => Ok(poly),
        Some(list) => {
            let target: Vec<String> = list.iter().map(|s| s.to_string()).collect();
            poly.aligned(&target)
        }
    }
}
