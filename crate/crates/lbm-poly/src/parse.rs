use num_bigint::BigInt;
use thiserror::Error;

use crate::poly::Poly;
use crate::rational::Rational;
use crate::vars::Vars;

/// Parse failure at a byte offset (0-based) within the parsed text.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{msg} at column {}", .offset + 1)]
pub struct ParseError {
    pub offset: usize,
    pub msg: String,
}

/// Parses `+ - * / ^ ( )` expressions with integer literals over the names
/// of `S`. Division and negative powers are restricted to single terms.
pub fn parse_poly<S: Vars>(text: &str) -> Result<Poly<S>, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, _v: std::marker::PhantomData::<S> };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a, S> {
    src: &'a [u8],
    pos: usize,
    _v: std::marker::PhantomData<S>,
}

impl<S: Vars> Parser<'_, S> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError { offset: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<S>, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc -= &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<S>, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.unary()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if d.len() != 1 {
                        return Err(ParseError { offset: at, msg: "divisor must be a single term".into() });
                    }
                    acc = acc
                        .div_exact(&d)
                        .map_err(|e| ParseError { offset: at, msg: e.to_string() })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<S>, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly<S>, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let n = self.integer()?;
        let n: u32 = n.try_into().map_err(|_| ParseError { offset: at, msg: "exponent too large".into() })?;
        let p = base.pow(n);
        if neg {
            if p.len() != 1 {
                return Err(ParseError { offset: at, msg: "negative power of a sum".into() });
            }
            return Poly::one()
                .div_exact(&p)
                .map_err(|e| ParseError { offset: at, msg: e.to_string() });
        }
        Ok(p)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn atom(&mut self) -> Result<Poly<S>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                S::from_name(name)
                    .map(Poly::var)
                    .ok_or(ParseError { offset: start, msg: format!("unknown symbol `{name}`") })
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of expression")),
        }
    }
}
