use super::coeff::{Coefficient, Gen};
use super::rational::Rational;
use num::BigInt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} at byte {pos}: {msg}")]
pub struct ParseError {
    pub input: String,
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    b: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError { input: self.src.to_string(), pos: self.pos, msg: msg.to_string() })
    }
    fn skip_ws(&mut self) {
        while self.pos < self.b.len() && (self.b[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.b.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Coefficient, ParseError> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Coefficient, ParseError> {
        let mut acc = self.power()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc * self.power()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.power()?;
                    match d.inverse() {
                        Some(inv) => acc = acc * inv,
                        None => return self.err("division by a non-monomial value"),
                    }
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Coefficient, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.power()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return self.err("expected integer exponent");
            }
            let e: i32 = self.src[start..self.pos].parse().unwrap();
            let e = if neg { -e } else { e };
            return match base.powi(e) {
                Some(v) => Ok(v),
                None => self.err("negative power of a non-monomial value"),
            };
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Coefficient, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.b.len() && self.b[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n = BigInt::from_str(&self.src[start..self.pos]).unwrap();
                Ok(Coefficient::from_rational(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.b.len() && self.b[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = &self.src[start..self.pos];
                match Gen::from_name(name) {
                    Some(g) => Ok(Coefficient::gen(g)),
                    None => {
                        self.pos = start;
                        self.err(&format!("unknown generator {name:?}"))
                    }
                }
            }
            _ => self.err("unexpected token"),
        }
    }
}

/// Parse the text form produced by [`Coefficient::render`], plus parentheses
/// and division by monomials.
pub fn parse_coefficient(src: &str) -> Result<Coefficient, ParseError> {
    let mut p = Parser { src, b: src.as_bytes(), pos: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(v)
}

impl FromStr for Coefficient {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_coefficient(s)
    }
}
