//! Textual scalar literals: integers, parameter names, `+ - * / ^`, parentheses.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::poly::Poly;
use super::{ParamSpace, Scalar, ScalarError};

impl ParamSpace {
    /// Parses a scalar literal such as `(1+q)*t12^-1`.
    pub fn parse_scalar(&self, src: &str) -> Result<Scalar, ScalarError> {
        let mut p = LiteralParser {
            src: src.as_bytes(),
            pos: 0,
            params: self,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(v)
    }

    /// Canonical literal for `s`; parsing it back yields `s`.
    pub fn format_scalar(&self, s: &Scalar) -> String {
        if s.denominator().is_one() {
            self.format_poly(s.numerator())
        } else {
            format!(
                "({})/({})",
                self.format_poly(s.numerator()),
                self.format_poly(s.denominator())
            )
        }
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in p.terms().iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(a.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = self.name(v);
                if e == 1 {
                    factors.push(name.to_string());
                } else {
                    factors.push(format!("{}^{}", name, e));
                }
            }
            let _ = write!(out, "{}", factors.join("*"));
        }
        out
    }
}

struct LiteralParser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a ParamSpace,
}

impl LiteralParser<'_> {
    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Syntax {
            column: self.pos + 1,
            message: msg.to_string(),
        }
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

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
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
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    acc = acc.checked_div(&d).map_err(|_| ScalarError::Syntax {
                        column: at + 1,
                        message: "division by zero".into(),
                    })?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.power()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
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
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected integer exponent"));
            }
            let k: i64 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            let k = if neg { -k } else { k };
            return base
                .pow(k)
                .map_err(|_| self.err("zero raised to a negative power"));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
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
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .unwrap()
                    .parse()
                    .expect("digits");
                Ok(Scalar::rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_lowercase() || self.src[self.pos].is_ascii_digit())
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.params.index(name) {
                    Some(v) => Ok(Scalar::param(v)),
                    None => {
                        self.pos = start;
                        Err(ScalarError::UndeclaredParameter(name.to_string()))
                    }
                }
            }
            _ => Err(self.err("expected a number, parameter or '('")),
        }
    }
}
