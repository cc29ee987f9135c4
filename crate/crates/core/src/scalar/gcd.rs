//! Greatest common divisors of multivariate rational polynomials.
//!
//! Monomial contents are split off first; variables present in only one
//! argument are eliminated through contents; the remaining case runs a
//! primitive pseudo-remainder sequence in a chosen main variable.

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::{Monomial, Poly};

/// Monic gcd of `a` and `b` (zero only when both are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.meet(&mb);
    let a1 = a.div_monomial(&ma);
    let b1 = b.div_monomial(&mb);
    let core = gcd_no_content(&a1, &b1);
    core.mul_monomial(&m).monic()
}

fn lowest_var(mask: u64) -> usize {
    mask.trailing_zeros() as usize
}

/// Coefficient gcd of `p` viewed as a polynomial in `v`.
fn content_in(p: &Poly, v: usize) -> Poly {
    let coeffs = p.to_univariate(v);
    let mut g = Poly::zero();
    for c in coeffs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn gcd_no_content(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let sa = a.support();
    let sb = b.support();
    if sa & sb == 0 {
        return Poly::one();
    }
    if sa & !sb != 0 {
        let v = lowest_var(sa & !sb);
        return gcd(&content_in(a, v), b);
    }
    if sb & !sa != 0 {
        let v = lowest_var(sb & !sa);
        return gcd(a, &content_in(b, v));
    }
    if sa.count_ones() == 1 {
        return univariate_gcd(a, b, lowest_var(sa));
    }
    // Main variable: smallest maximal degree keeps the remainder sequence short.
    let mut best = None;
    let mut mask = sa;
    while mask != 0 {
        let v = lowest_var(mask);
        mask &= mask - 1;
        let d = a.degree_in(v).max(b.degree_in(v));
        if best.map(|(_, bd)| d < bd).unwrap_or(true) {
            best = Some((v, d));
        }
    }
    let (x, _) = best.expect("non-empty support");
    multivariate_gcd(a, b, x)
}

fn univariate_gcd(a: &Poly, b: &Poly, v: usize) -> Poly {
    let to_dense = |p: &Poly| -> Vec<BigRational> {
        let mut d = vec![BigRational::zero(); p.degree_in(v) as usize + 1];
        for (m, c) in p.terms() {
            d[m.exp(v) as usize] = c.clone();
        }
        d
    };
    let mut x = to_dense(a);
    let mut y = to_dense(b);
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !(y.len() == 1 && y[0].is_zero()) && !y.is_empty() {
        let r = dense_rem(&x, &y);
        x = y;
        y = r;
    }
    let coeffs: Vec<Poly> = x.into_iter().map(Poly::constant).collect();
    Poly::from_univariate(&coeffs, v).monic()
}

fn trim_dense(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn dense_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb_inv = b[db].recip();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let c = &r[dr] * &lb_inv;
        if !c.is_zero() {
            for i in 0..=db {
                let t = &c * &b[i];
                r[dr - db + i] -= t;
            }
        }
        r.pop();
        if r.is_empty() {
            r.push(BigRational::zero());
        }
        trim_dense(&mut r);
        if r.len() - 1 < db {
            break;
        }
    }
    if r.is_empty() {
        r.push(BigRational::zero());
    }
    trim_dense(&mut r);
    r
}

fn coeff_content(coeffs: &[Poly]) -> Poly {
    let mut g = Poly::zero();
    for c in coeffs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

fn primitive(coeffs: &[Poly]) -> (Poly, Vec<Poly>) {
    let c = coeff_content(coeffs);
    if c.is_one() || c.is_zero() {
        return (c, coeffs.to_vec());
    }
    let pp = coeffs
        .iter()
        .map(|k| k.div_exact(&c).expect("content divides every coefficient"))
        .collect();
    (c, pp)
}

fn trim_coeffs(v: &mut Vec<Poly>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Pseudo-remainder of `a` by `b` as polynomials in the main variable.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim_coeffs(&mut r);
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for i in 0..=db {
            let t = lr.mul(&b[i]);
            r[shift + i] = r[shift + i].sub(&t);
        }
        r.pop();
        if r.is_empty() {
            r.push(Poly::zero());
        }
        trim_coeffs(&mut r);
    }
    r
}

fn multivariate_gcd(a: &Poly, b: &Poly, x: usize) -> Poly {
    let (ca, pa) = primitive(&a.to_univariate(x));
    let (cb, pb) = primitive(&b.to_univariate(x));
    let c = gcd(&ca, &cb);
    let (mut f, mut g) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        if g.len() == 1 {
            if g[0].is_zero() {
                break;
            }
            // A nonzero constant in x: the primitive parts are coprime.
            return c.monic();
        }
        let r = prem(&f, &g);
        f = g;
        if r.len() == 1 && r[0].is_zero() {
            break;
        }
        g = primitive(&r).1;
    }
    let (_, pf) = primitive(&f);
    let out = Poly::from_univariate(&pf, x).mul(&c);
    out.monic()
}

/// Least common multiple of two monomials.
pub fn monomial_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    let n = a.exponents().len().max(b.exponents().len());
    let e: Vec<u16> = (0..n).map(|i| a.exp(i).max(b.exp(i))).collect();
    Monomial::from_exponents(&e)
}
