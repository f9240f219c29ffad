use std::sync::Arc;

use num_bigint::BigInt;

use super::cyclotomic::{Cyclotomic, CyclotomicField};
use super::kappa::Scalar;
use super::Rational;
use crate::error::{Error, Result};

/// Parse a scalar literal such as `(1/2)*z^2*k - 3`.
///
/// `k` is kappa and `z` the primitive root zeta_L of `field`.
pub fn parse_scalar(text: &str, field: &Arc<CyclotomicField>) -> Result<Scalar> {
    let mut p = Parser {
        text,
        bytes: text.as_bytes(),
        pos: 0,
        field,
    };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

/// Parse a literal and substitute kappa := `kappa`.
pub fn parse_cyclotomic(
    text: &str,
    field: &Arc<CyclotomicField>,
    kappa: &Rational,
) -> Result<Cyclotomic> {
    Ok(parse_scalar(text, field)?.eval_kappa(kappa))
}

/// Parse a literal that must be rational (no z, no k), e.g. `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let f = CyclotomicField::new(1);
    let s = parse_scalar(text, &f)?;
    match s.as_constant() {
        Some(c) => Ok(c.as_rational().cloned().expect("Q(zeta_1) = Q")),
        None => Err(Error::Literal {
            text: text.to_string(),
            pos: 0,
            msg: "expected a rational constant".into(),
        }),
    }
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    field: &'a Arc<CyclotomicField>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Literal {
            text: self.text.to_string(),
            pos: self.pos,
            msg: msg.to_string(),
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

    fn expr(&mut self) -> Result<Scalar> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc * self.factor()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    let inv = d.as_constant().and_then(|c| c.inv()).ok_or(Error::Literal {
                        text: self.text.to_string(),
                        pos: at,
                        msg: "division by zero or by a kappa-dependent value".into(),
                    })?;
                    acc = acc.scale_cyc(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar> {
        let mut neg = false;
        while self.peek() == Some(b'-') {
            self.pos += 1;
            neg = !neg;
        }
        let v = self.power()?;
        Ok(if neg { -v } else { v })
    }

    fn power(&mut self) -> Result<Scalar> {
        let base = self.primary()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(self.text[start..self.pos].parse().expect("digits"))
    }

    fn primary(&mut self) -> Result<Scalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'k') => {
                self.pos += 1;
                Ok(Scalar::kappa(self.field))
            }
            Some(b'z') => {
                self.pos += 1;
                Ok(Scalar::from_cyclotomic(Cyclotomic::zeta_pow(self.field, 1)))
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.uint()?;
                Ok(Scalar::from_rational(self.field, Rational::from_integer(v)))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
