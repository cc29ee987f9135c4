//! Relation expressions: sums of scalar-weighted products of generators,
//! skew brackets and parenthesized groups.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::PresentationError;
use crate::algebra::{skew_commutator, NcPoly};
use crate::scalar::{Bicharacter, Scalar};

/// Parses relation `index` (used only for error reporting).
pub fn parse_relation(p: &Bicharacter, index: usize, src: &str) -> Result<NcPoly, PresentationError> {
    let mut ps = ExprParser {
        src: src.as_bytes(),
        pos: 0,
        p,
        index,
    };
    let f = ps.expr()?;
    ps.skip_ws();
    if ps.pos != ps.src.len() {
        return Err(ps.syntax("unexpected trailing input"));
    }
    Ok(f)
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
    p: &'a Bicharacter,
    index: usize,
}

impl ExprParser<'_> {
    fn syntax(&self, msg: &str) -> PresentationError {
        PresentationError::Syntax {
            relation: self.index,
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

    fn at_generator(&self) -> bool {
        self.src.get(self.pos) == Some(&b'x')
            && self.src.get(self.pos + 1).is_some_and(|c| c.is_ascii_digit())
    }

    fn expr(&mut self) -> Result<NcPoly, PresentationError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
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
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(c: u8) -> bool {
        c == b'(' || c == b'[' || c.is_ascii_alphanumeric()
    }

    fn term(&mut self) -> Result<NcPoly, PresentationError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    let s = constant_value(&d).ok_or_else(|| PresentationError::Syntax {
                        relation: self.index,
                        column: at + 1,
                        message: "can only divide by a scalar".into(),
                    })?;
                    let inv = s.inv().map_err(|_| PresentationError::Syntax {
                        relation: self.index,
                        column: at + 1,
                        message: "division by zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                Some(c) if Self::starts_factor(c) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<NcPoly, PresentationError> {
        let base = self.factor()?;
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
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected integer exponent"));
        }
        let k: u32 = std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| self.syntax("exponent too large"))?;
        if neg {
            let s =
                constant_value(&base).ok_or_else(|| self.syntax("negative powers apply to scalars only"))?;
            let v = s
                .pow(-(k as i64))
                .map_err(|_| self.syntax("zero raised to a negative power"))?;
            return Ok(NcPoly::constant(v));
        }
        Ok(base.pow(k))
    }

    fn factor(&mut self) -> Result<NcPoly, PresentationError> {
        let n = self.p.n();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.syntax("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(b'[') => {
                self.pos += 1;
                let left_at = self.pos;
                let a = self.expr()?;
                if self.peek() != Some(b',') {
                    return Err(self.syntax("expected ',' inside bracket"));
                }
                self.pos += 1;
                let right_at = self.pos;
                let b = self.expr()?;
                if self.peek() != Some(b']') {
                    return Err(self.syntax("expected ']'"));
                }
                self.pos += 1;
                for (f, at) in [(&a, left_at), (&b, right_at)] {
                    if f.constitution(n).is_err() {
                        return Err(PresentationError::Inhomogeneous {
                            relation: self.index,
                            column: at + 1,
                        });
                    }
                }
                Ok(skew_commutator(self.p, &a, &b).expect("checked homogeneous"))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let v: BigInt = std::str::from_utf8(&self.src[start..self.pos])
                    .expect("ascii")
                    .parse()
                    .expect("digits");
                Ok(NcPoly::constant(Scalar::rational(BigRational::from_integer(v))))
            }
            Some(b'x') if self.at_generator() => {
                let start = self.pos;
                self.pos += 1;
                let ds = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let k: usize = std::str::from_utf8(&self.src[ds..self.pos])
                    .expect("ascii")
                    .parse()
                    .unwrap_or(0);
                if k == 0 || k > n {
                    self.pos = start;
                    return Err(self.syntax(&format!("generator out of range 1..={n}")));
                }
                Ok(NcPoly::letter(k as u8))
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_lowercase() || self.src[self.pos].is_ascii_digit())
                    && !self.at_generator()
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.p.params().param(name) {
                    Some(s) => Ok(NcPoly::constant(s)),
                    None => {
                        self.pos = start;
                        Err(PresentationError::UndeclaredParameter {
                            relation: self.index,
                            column: start + 1,
                            name: name.to_string(),
                        })
                    }
                }
            }
            _ => Err(self.syntax("expected a generator, scalar, '[' or '('")),
        }
    }
}

fn constant_value(f: &NcPoly) -> Option<Scalar> {
    if f.is_zero() {
        return Some(Scalar::zero());
    }
    if f.len() == 1 {
        let (w, c) = f.iter().next()?;
        if w.is_empty() {
            return Some(c.clone());
        }
    }
    None
}
