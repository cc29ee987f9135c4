use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::scalar::{ParamSpace, Scalar};
use crate::words::{compare_hall, Constitution, Word};

/// A finite linear combination of words with scalar coefficients.
///
/// Terms are kept in descending [`compare_lex`](crate::words::compare_lex)
/// order when iterated in reverse; explicit zeros are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::word(Word::empty())
    }

    pub fn word(w: Word) -> Self {
        NcPoly::term(w, Scalar::one())
    }

    pub fn letter(i: u8) -> Self {
        NcPoly::word(Word::letter(i))
    }

    pub fn term(w: Word, c: Scalar) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn constant(c: Scalar) -> Self {
        NcPoly::term(Word::empty(), c)
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(it: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lex order.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn words(&self) -> impl DoubleEndedIterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, k) in &other.terms {
            self.add_term(w.clone(), k * c);
        }
    }

    pub fn add(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::one());
        out
    }

    pub fn sub(&self, other: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    pub fn neg(&self) -> NcPoly {
        self.scale(&Scalar::int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly {
            terms: self.terms.iter().map(|(w, k)| (w.clone(), k * c)).collect(),
        }
    }

    /// Noncommutative product (concatenation of words).
    pub fn mul(&self, other: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), a * b);
            }
        }
        out
    }

    /// `a · self · b` for words `a`, `b`.
    pub fn wrap(&self, a: &Word, b: &Word) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, k)| (w.wrap(a.letters(), b.letters()), k.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> NcPoly {
        let mut acc = NcPoly::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// The common constitution of all words; `Ok(None)` for zero, `Err(())` when mixed.
    pub fn constitution(&self, n: usize) -> Result<Option<Constitution>, ()> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Ok(None);
        };
        let c = first.constitution(n);
        for w in it {
            if w.constitution(n) != c {
                return Err(());
            }
        }
        Ok(Some(c))
    }

    pub fn is_homogeneous(&self, n: usize) -> bool {
        self.constitution(n).is_ok()
    }

    /// Hall-greatest word with its coefficient.
    pub fn leading(&self, degrees: &[u32]) -> Option<(&Word, &Scalar)> {
        self.terms.iter().max_by(|a, b| compare_hall(a.0, b.0, degrees))
    }

    /// Greatest word in plain lex order (the leading word of a homogeneous polynomial).
    pub fn lex_leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coefficients<F, E>(&self, mut f: F) -> Result<NcPoly, E>
    where
        F: FnMut(&Scalar) -> Result<Scalar, E>,
    {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Expression-string form, `c*x1x2 + ...`, parsable by the relation grammar.
    pub fn format(&self, params: &ParamSpace) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let lit = params.format_scalar(c);
            let (neg, body) = match lit.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '+', '-', '/']) => (true, rest.to_string()),
                _ => (false, lit),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word = if w.is_empty() {
                String::new()
            } else {
                w.to_string()
            };
            if body == "1" && !word.is_empty() {
                let _ = write!(out, "{}", word);
            } else if word.is_empty() {
                let _ = write!(out, "({})", body);
            } else {
                let _ = write!(out, "({})*{}", body, word);
            }
        }
        out
    }
}

impl std::fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(w, c)| format!("{:?}*{}", c, w))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
