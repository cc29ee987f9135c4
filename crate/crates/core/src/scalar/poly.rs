//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are plain indices into a [`ParamSpace`](super::ParamSpace);
//! terms are kept sorted in descending graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use smallvec::SmallVec;

/// Exponent vector with trailing zeros trimmed, so equal monomials compare equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[u16; 8]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: usize) -> Self {
        let mut e = SmallVec::from_elem(0, v + 1);
        e[v] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let mut m = Monomial(SmallVec::from_slice(exps));
        m.trim();
        m
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exp(&self, v: usize) -> u16 {
        self.0.get(v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut e = long.0.clone();
        for (i, &x) in short.0.iter().enumerate() {
            e[i] += x;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.0.clone();
        for (i, &x) in self.0.iter().enumerate() {
            e[i] -= x;
        }
        let mut m = Monomial(e);
        m.trim();
        m
    }

    pub fn meet(&self, other: &Monomial) -> Monomial {
        let mut e: SmallVec<[u16; 8]> = self
            .0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        while e.last() == Some(&0) {
            e.pop();
        }
        Monomial(e)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        let mut m = Monomial(self.0.iter().map(|&e| e * k).collect());
        m.trim();
        m
    }

    pub fn without_var(&self, v: usize) -> Monomial {
        let mut e = self.0.clone();
        if v < e.len() {
            e[v] = 0;
        }
        let mut m = Monomial(e);
        m.trim();
        m
    }

    /// Bit set of the variables that occur.
    pub fn support(&self) -> u64 {
        let mut s = 0u64;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                s |= 1 << i;
            }
        }
        s
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree().cmp(&other.total_degree()).then_with(|| {
            let n = self.0.len().max(other.0.len());
            for i in 0..n {
                let c = self.exp(i).cmp(&other.exp(i));
                if c != Ordering::Equal {
                    return c;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// A polynomial with rational coefficients; terms in strictly descending order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Monomial, BigRational)>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(rat(n))
    }

    pub fn var(v: usize) -> Self {
        Poly {
            terms: vec![(Monomial::var(v), BigRational::one())],
        }
    }

    pub fn term(m: Monomial, c: BigRational) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, BigRational)>>(it: I) -> Self {
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            let slot = acc.entry(m).or_insert_with(BigRational::zero);
            *slot += c;
        }
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Poly { terms }
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<&(Monomial, BigRational)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn support(&self) -> u64 {
        self.terms.iter().fold(0, |s, (m, _)| s | m.support())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map(|t| t.0.total_degree()).unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(v)).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        if mono.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.mul(mono), c.clone())).collect(),
        }
    }

    pub fn div_monomial(&self, mono: &Monomial) -> Poly {
        if mono.is_one() {
            return self.clone();
        }
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono.quotient_of(m), c.clone()))
                .collect(),
        }
    }

    fn merge(&self, other: &Poly, negate_other: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            let c = if negate_other { -&t.1 } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Poly { terms: out }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        if other.is_zero() {
            return self.clone();
        }
        self.merge(other, true)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_monomial(m).scale(c);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_monomial(m).scale(c);
        }
        let mut acc: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let slot = acc.entry(ma.mul(mb)).or_insert_with(BigRational::zero);
                *slot += ca * cb;
            }
        }
        Poly {
            terms: acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            let mut cc = BigRational::one();
            for _ in 0..k {
                cc *= c;
            }
            return Poly::term(m.pow(k as u16), cc);
        }
        let mut base = self.clone();
        let mut acc = Poly::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => Poly::zero(),
            Some((_, c)) if c.is_one() => self.clone(),
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
        }
    }

    /// Componentwise minimum of exponents over all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let Some((first, _)) = it.next() else {
            return Monomial::one();
        };
        let mut m = first.clone();
        for (t, _) in it {
            if m.is_one() {
                break;
            }
            m = m.meet(t);
        }
        m
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if divisor.terms.len() == 1 {
            let (dm, dc) = &divisor.terms[0];
            if !self.terms.iter().all(|(m, _)| dm.divides(m)) {
                return None;
            }
            let inv = dc.recip();
            return Some(Poly {
                terms: self
                    .terms
                    .iter()
                    .map(|(m, c)| (dm.quotient_of(m), c * &inv))
                    .collect(),
            });
        }
        let (lm, lc) = divisor.terms[0].clone();
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = &c * &lc_inv;
            rem = rem.sub(&divisor.mul_monomial(&qm).scale(&qc));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Coefficients with respect to variable `v`: entry `i` multiplies `v^i`.
    pub fn to_univariate(&self, v: usize) -> Vec<Poly> {
        let deg = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigRational)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            buckets[m.exp(v) as usize].push((m.without_var(v), c.clone()));
        }
        buckets
            .into_iter()
            .map(|ts| {
                let mut p = Poly { terms: ts };
                p.terms.sort_by(|a, b| b.0.cmp(&a.0));
                p
            })
            .collect()
    }

    pub fn from_univariate(coeffs: &[Poly], v: usize) -> Poly {
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            let xm = Monomial::var(v).pow(i as u16);
            for (m, k) in &c.terms {
                terms.push((m.mul(&xm), k.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    /// Substitutes values for some variables (`None` keeps the variable).
    pub fn substitute(&self, values: &[Option<BigRational>]) -> Poly {
        let mut acc = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps: SmallVec<[u16; 8]> = SmallVec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match values.get(i).and_then(|v| v.as_ref()) {
                    Some(val) if e > 0 => {
                        coeff *= pow_rat(val, e as u32);
                        exps.push(0);
                    }
                    _ => exps.push(e),
                }
            }
            acc.push((Monomial::from_exponents(&exps), coeff));
        }
        Poly::from_terms(acc)
    }
}

pub(crate) fn pow_rat(x: &BigRational, k: u32) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..k {
        acc *= x;
    }
    acc
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{}*{:?}", c, m)?;
        }
        Ok(())
    }
}
