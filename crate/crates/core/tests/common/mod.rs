//! Oracles shared by the integration tests. None of them go through the
//! rewriting engine or the library's linear algebra.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use qpbw::algebra::NcPoly;
use qpbw::scalar::Scalar;
use qpbw::words::{Constitution, Word};
use rand::Rng;

/// Rank of a list of sparse vectors, by plain Gaussian elimination.
pub fn rank(vectors: Vec<BTreeMap<Word, Scalar>>) -> usize {
    // Each row is stored with its pivot (largest key) for elimination.
    let mut basis: BTreeMap<Word, BTreeMap<Word, Scalar>> = BTreeMap::new();
    for mut v in vectors {
        loop {
            v.retain(|_, c| !c.is_zero());
            let Some((top, c)) = v.iter().next_back().map(|(w, c)| (w.clone(), c.clone())) else {
                break;
            };
            match basis.get(&top) {
                Some(row) => {
                    // v -= c * row, row is monic at `top`
                    for (w, r) in row {
                        let e = v.entry(w.clone()).or_insert_with(Scalar::zero);
                        *e = &*e - &(&c * r);
                    }
                }
                None => {
                    let inv = c.inv().unwrap();
                    let row = v.iter().map(|(w, x)| (w.clone(), x * &inv)).collect();
                    basis.insert(top, row);
                    break;
                }
            }
        }
    }
    basis.len()
}

fn words_with_counts(c: &[u32]) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut rem = c.to_vec();
    fn rec(rem: &mut Vec<u32>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8 + 1);
                rec(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    rec(&mut rem, &mut cur, &mut out);
    out
}

/// Dimension of the constitution-`c` component of the free algebra modulo the
/// two-sided ideal of `relations`: all words minus the rank of all `a f b`.
pub fn diamond_dimension(relations: &[NcPoly], c: &Constitution) -> usize {
    let n = c.counts().len();
    let total = words_with_counts(c.counts()).len();
    let mut spanning = Vec::new();
    for f in relations {
        let Some(cf) = f.constitution(n).unwrap() else {
            continue;
        };
        let Some(rest) = c.checked_sub(&cf) else { continue };
        for ab in words_with_counts(rest.counts()) {
            for cut in 0..=ab.len() {
                let a = Word::from_letters(&ab[..cut]);
                let b = Word::from_letters(&ab[cut..]);
                let v: BTreeMap<Word, Scalar> = f
                    .iter()
                    .map(|(w, x)| (a.concat(w).concat(&b), x.clone()))
                    .collect();
                spanning.push(v);
            }
        }
    }
    total - rank(spanning)
}

/// A word is standard iff it is strictly greater than each of its proper
/// rotations, where a proper prefix counts as greater than its extensions.
pub fn brute_standard(w: &[u8]) -> bool {
    let greater = |a: &[u8], b: &[u8]| -> bool {
        // lex with x1 > x2 > ..., i.e. smaller index is greater
        for (x, y) in a.iter().zip(b) {
            if x != y {
                return x < y;
            }
        }
        a.len() < b.len()
    };
    if w.is_empty() {
        return false;
    }
    (1..w.len()).all(|k| {
        let mut rot = w[k..].to_vec();
        rot.extend_from_slice(&w[..k]);
        rot != w && greater(w, &rot)
    })
}

/// All words of length `1..=max_len` over `n` letters.
pub fn all_words_up_to(n: usize, max_len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<u8>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in 1..=n as u8 {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn contains(w: &[u8], sub: &[u8]) -> bool {
    sub.is_empty() || w.windows(sub.len()).any(|x| x == sub)
}

pub fn set(ws: &[&str]) -> BTreeSet<Word> {
    ws.iter().map(|s| s.parse().unwrap()).collect()
}

/// A random rational avoiding 0 and ±1, numerator and denominator up to `bound`.
pub fn random_rational<R: Rng>(rng: &mut R, bound: i64) -> BigRational {
    loop {
        let num = rng.gen_range(-bound..=bound);
        let den = rng.gen_range(1..=bound);
        let r = BigRational::new(BigInt::from(num), BigInt::from(den));
        if num != 0 && r != BigRational::from_integer(1.into()) && r != BigRational::from_integer((-1).into())
        {
            return r;
        }
    }
}

/// Gaussian binomial `[m choose k]_x` computed by the q-Pascal rule.
pub fn gaussian_binomial(x: &Scalar, m: u32, k: u32) -> Scalar {
    if k > m {
        return Scalar::zero();
    }
    let mut row = vec![Scalar::one()];
    for i in 1..=m {
        let mut next = vec![Scalar::one(); i as usize + 1];
        for j in 1..i as usize {
            // [i, j] = [i-1, j-1] + x^j [i-1, j]
            next[j] = &row[j - 1] + &(&x.powi(j as i64) * &row[j]);
        }
        row = next;
    }
    row[k as usize].clone()
}
