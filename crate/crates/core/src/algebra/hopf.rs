use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::{AlgebraError, NcPoly};
use crate::scalar::{Bicharacter, GroupElement, Scalar};
use crate::words::{Constitution, Word};

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(k) {
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

/// Element of `G<X>` in the normal form `sum c * g·w`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct GPoly {
    terms: BTreeMap<(GroupElement, Word), Scalar>,
}

impl GPoly {
    pub fn zero() -> Self {
        GPoly::default()
    }

    pub fn term(g: GroupElement, w: Word, c: Scalar) -> Self {
        let mut p = GPoly::zero();
        p.add_term(g, w, c);
        p
    }

    pub fn group(g: GroupElement) -> Self {
        GPoly::term(g, Word::empty(), Scalar::one())
    }

    /// Embeds `f` with trivial group parts.
    pub fn from_ncpoly(n: usize, f: &NcPoly) -> Self {
        let mut p = GPoly::zero();
        for (w, c) in f.iter() {
            p.add_term(GroupElement::identity(n), w.clone(), c.clone());
        }
        p
    }

    pub fn add_term(&mut self, g: GroupElement, w: Word, c: Scalar) {
        accumulate(&mut self.terms, (g, w), c);
    }

    pub fn terms(&self) -> &BTreeMap<(GroupElement, Word), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &GPoly) -> GPoly {
        let mut out = self.clone();
        for ((g, w), c) in &other.terms {
            out.add_term(g.clone(), w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> GPoly {
        let mut out = GPoly::zero();
        for ((g, w), k) in &self.terms {
            out.add_term(g.clone(), w.clone(), k * c);
        }
        out
    }

    /// Product with straightening `(g·u)(h·v) = chi^u(h) (gh)·(uv)`.
    pub fn mul(&self, p: &Bicharacter, other: &GPoly) -> GPoly {
        let n = p.n();
        let mut out = GPoly::zero();
        for ((g, u), a) in &self.terms {
            let cu = u.constitution(n);
            for ((h, v), b) in &other.terms {
                let chi = p.character(&cu, h);
                out.add_term(g.mul(h), u.concat(v), &(a * b) * &chi);
            }
        }
        out
    }

    /// The common constitution of the word parts, if all group parts are trivial.
    fn plain_constitution(&self, n: usize) -> Result<Option<Constitution>, AlgebraError> {
        let mut c: Option<Constitution> = None;
        for (g, w) in self.terms.keys() {
            if !g.is_identity() {
                return Err(AlgebraError::NotPlain);
            }
            let wc = w.constitution(n);
            match &c {
                None => c = Some(wc),
                Some(c0) if *c0 != wc => return Err(AlgebraError::NonHomogeneous),
                _ => {}
            }
        }
        Ok(c)
    }
}

/// Element of `G<X> ⊗ G<X>`: `sum c * (g·u) ⊗ (h·v)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(GroupElement, Word, GroupElement, Word), Scalar>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn add_term(&mut self, g: GroupElement, u: Word, h: GroupElement, v: Word, c: Scalar) {
        accumulate(&mut self.terms, (g, u, h, v), c);
    }

    pub fn terms(&self) -> &BTreeMap<(GroupElement, Word, GroupElement, Word), Scalar> {
        &self.terms
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

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Scalar) {
        for ((g, u, h, v), k) in &other.terms {
            self.add_term(g.clone(), u.clone(), h.clone(), v.clone(), k * c);
        }
    }

    pub fn sub(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    /// `a ⊗ b`.
    pub fn tensor(a: &GPoly, b: &GPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((g, u), x) in &a.terms {
            for ((h, v), y) in &b.terms {
                out.add_term(g.clone(), u.clone(), h.clone(), v.clone(), x * y);
            }
        }
        out
    }

    /// Componentwise product, each leg straightened.
    pub fn mul(&self, p: &Bicharacter, other: &TensorPoly) -> TensorPoly {
        let n = p.n();
        let mut out = TensorPoly::zero();
        for ((g1, u1, h1, v1), a) in &self.terms {
            let cu = u1.constitution(n);
            let cv = v1.constitution(n);
            for ((g2, u2, h2, v2), b) in &other.terms {
                let chi = &p.character(&cu, g2) * &p.character(&cv, h2);
                out.add_term(
                    g1.mul(g2),
                    u1.concat(u2),
                    h1.mul(h2),
                    v1.concat(v2),
                    &(a * b) * &chi,
                );
            }
        }
        out
    }
}

/// `Δ(w)` of a single word as `(g, left word, right word, coefficient)` terms,
/// with the right leg carrying no group part.
///
/// Uses the shuffle form: a subset `S` of positions goes to the right leg,
/// the rest stays left behind `g_{w_S}`, and each pair `a < b` with `a ∉ S`,
/// `b ∈ S` contributes `p_{w_a w_b}` from moving `g_{w_b}` across `w_a`.
pub fn coproduct_word(p: &Bicharacter, w: &Word) -> Vec<(GroupElement, Word, Word, Scalar)> {
    let n = p.n();
    let l = w.letters();
    let k = l.len();
    assert!(k < 31, "word too long for subset enumeration");
    let mut out = Vec::with_capacity(1 << k);
    for mask in 0u32..(1u32 << k) {
        let mut left = Vec::with_capacity(k);
        let mut right = Vec::with_capacity(k);
        let mut before = vec![0i32; n];
        let mut crossings = vec![0i64; n * n];
        for (pos, &x) in l.iter().enumerate() {
            let xi = x as usize - 1;
            if mask & (1 << pos) != 0 {
                right.push(x);
                for (a, &m) in before.iter().enumerate() {
                    crossings[a * n + xi] += m as i64;
                }
            } else {
                left.push(x);
                before[xi] += 1;
            }
        }
        let mut coeff = Scalar::one();
        for (idx, &e) in crossings.iter().enumerate() {
            if e != 0 {
                coeff = &coeff * &p.entry(idx / n + 1, idx % n + 1).powi(e);
            }
        }
        let right = Word::from_letters(&right);
        let g = GroupElement::of_constitution(&right.constitution(n));
        out.push((g, Word::from_letters(&left), right, coeff));
    }
    out
}

/// The algebra-map extension of `Δ(x_i) = x_i⊗1 + g_i⊗x_i`, `Δ(g) = g⊗g`.
pub fn coproduct(p: &Bicharacter, f: &GPoly) -> TensorPoly {
    let mut out = TensorPoly::zero();
    for ((g, w), c) in &f.terms {
        for (h, u, v, k) in coproduct_word(p, w) {
            // (g⊗g)(h·u ⊗ v) = gh·u ⊗ g·v
            out.add_term(g.mul(&h), u, g.clone(), v, c * &k);
        }
    }
    out
}

/// `Δ` computed as an explicit product of generator coproducts; used to cross-check [`coproduct`].
pub fn coproduct_multiplicative(p: &Bicharacter, f: &GPoly) -> TensorPoly {
    let n = p.n();
    let mut out = TensorPoly::zero();
    for ((g, w), c) in &f.terms {
        let mut acc = TensorPoly::zero();
        acc.add_term(g.clone(), Word::empty(), g.clone(), Word::empty(), c.clone());
        for &x in w.letters() {
            let mut dx = TensorPoly::zero();
            let e = GroupElement::identity(n);
            dx.add_term(
                e.clone(),
                Word::letter(x),
                e.clone(),
                Word::empty(),
                Scalar::one(),
            );
            dx.add_term(
                GroupElement::generator(n, x as usize),
                Word::empty(),
                e,
                Word::letter(x),
                Scalar::one(),
            );
            acc = acc.mul(p, &dx);
        }
        out.add_scaled(&acc, &Scalar::one());
    }
    out
}

/// `Δ(f) - f⊗1 - g_c⊗f` for `f` homogeneous of constitution `c`.
pub fn primitivity_defect(p: &Bicharacter, f: &GPoly) -> Result<TensorPoly, AlgebraError> {
    let n = p.n();
    let Some(c) = f.plain_constitution(n)? else {
        return Ok(TensorPoly::zero());
    };
    let mut d = coproduct(p, f);
    let e = GroupElement::identity(n);
    let gc = GroupElement::of_constitution(&c);
    let minus = Scalar::int(-1);
    for ((_, w), k) in &f.terms {
        let nk = k * &minus;
        d.add_term(e.clone(), w.clone(), e.clone(), Word::empty(), nk.clone());
        d.add_term(gc.clone(), Word::empty(), e.clone(), w.clone(), nk);
    }
    Ok(d)
}

/// True iff `f` is `(1, g_c)`-primitive in `G<X>`.
pub fn is_skew_primitive(p: &Bicharacter, f: &GPoly) -> Result<bool, AlgebraError> {
    Ok(primitivity_defect(p, f)?.is_zero())
}

/// [`is_skew_primitive`] for a plain polynomial.
pub fn is_skew_primitive_poly(p: &Bicharacter, f: &NcPoly) -> Result<bool, AlgebraError> {
    is_skew_primitive(p, &GPoly::from_ncpoly(p.n(), f))
}
