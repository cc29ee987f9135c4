//! Noncommutative polynomials, skew commutators, super letters and the free
//! character Hopf algebra `G<X>`.
//!
//! A polynomial is a quantum operation exactly when it is skew-primitive in
//! `G<X>`: any Hopf algebra evaluation factors through the free one, since
//! `x_i ↦ a_i`, `g_i ↦ g_{a_i}` extends to a Hopf map from `G<X>` whenever
//! the `a_i` are skew-primitive with the same characters. So testing in the
//! free algebra is both necessary and sufficient.

mod fuzz;
mod hopf;
mod ncpoly;

use std::collections::HashMap;

use thiserror::Error;

pub use fuzz::{fuzz_identities, random_homogeneous, FuzzSummary, IdentityTally};
pub use hopf::{
    coproduct, coproduct_multiplicative, coproduct_word, is_skew_primitive, is_skew_primitive_poly,
    primitivity_defect, GPoly, TensorPoly,
};
pub use ncpoly::NcPoly;

use crate::scalar::{Bicharacter, Scalar};
use crate::words::{standard_bracketing, BracketTree, Constitution, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operand is not constitution-homogeneous")]
    NonHomogeneous,
    #[error("operand carries group-like factors")]
    NotPlain,
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("restricted identity needs p_vv = -1")]
    NotMinusOne,
}

fn constitution_of(n: usize, f: &NcPoly) -> Result<Option<Constitution>, AlgebraError> {
    f.constitution(n).map_err(|_| AlgebraError::NonHomogeneous)
}

/// `[f, g] = f·g - p(f, g)·g·f` for homogeneous `f`, `g`.
pub fn skew_commutator(p: &Bicharacter, f: &NcPoly, g: &NcPoly) -> Result<NcPoly, AlgebraError> {
    let n = p.n();
    let (Some(cf), Some(cg)) = (constitution_of(n, f)?, constitution_of(n, g)?) else {
        return Ok(NcPoly::zero());
    };
    let mut out = f.mul(g);
    out.add_scaled(&g.mul(f), &-p.value(&cf, &cg));
    Ok(out)
}

/// A standard word together with its bracketing and polynomial value.
#[derive(Clone, Debug, PartialEq)]
pub struct SuperLetter {
    pub word: Word,
    pub tree: BracketTree,
    pub value: NcPoly,
}

/// Memoized expansion of super letters under a fixed bicharacter.
#[derive(Debug)]
pub struct SuperLetters<'a> {
    p: &'a Bicharacter,
    cache: HashMap<Word, NcPoly>,
}

impl<'a> SuperLetters<'a> {
    pub fn new(p: &'a Bicharacter) -> Self {
        SuperLetters {
            p,
            cache: HashMap::new(),
        }
    }

    pub fn get(&mut self, u: &Word) -> Result<SuperLetter, AlgebraError> {
        let tree = standard_bracketing(u)?;
        let value = self.expand(&tree)?;
        Ok(SuperLetter {
            word: u.clone(),
            tree,
            value,
        })
    }

    /// The polynomial value of a standard word.
    pub fn value(&mut self, u: &Word) -> Result<NcPoly, AlgebraError> {
        if let Some(v) = self.cache.get(u) {
            return Ok(v.clone());
        }
        let tree = standard_bracketing(u)?;
        self.expand(&tree)
    }

    fn expand(&mut self, t: &BracketTree) -> Result<NcPoly, AlgebraError> {
        let w = t.word();
        if let Some(v) = self.cache.get(&w) {
            return Ok(v.clone());
        }
        let v = match t {
            BracketTree::Leaf(l) => NcPoly::letter(*l),
            BracketTree::Pair(a, b) => {
                let va = self.expand(a)?;
                let vb = self.expand(b)?;
                skew_commutator(self.p, &va, &vb)?
            }
        };
        self.cache.insert(w, v.clone());
        Ok(v)
    }
}

/// Expands the standard bracketing of `u` through [`skew_commutator`].
pub fn super_letter_value(p: &Bicharacter, u: &Word) -> Result<SuperLetter, AlgebraError> {
    SuperLetters::new(p).get(u)
}

/// Which bracket identity [`identity_check`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Identity {
    Jacobi1,
    Jacobi2,
    DiffLeft,
    DiffRight,
    Restricted,
}

impl std::str::FromStr for Identity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "jacobi1" => Identity::Jacobi1,
            "jacobi2" => Identity::Jacobi2,
            "diff_left" => Identity::DiffLeft,
            "diff_right" => Identity::DiffRight,
            "restricted" => Identity::Restricted,
            _ => return Err(format!("unknown identity `{s}`")),
        })
    }
}

/// Both sides of the chosen identity, evaluated exactly. `w` is ignored for
/// the two-argument forms (`Restricted`).
pub fn identity_sides(
    p: &Bicharacter,
    which: Identity,
    u: &NcPoly,
    v: &NcPoly,
    w: &NcPoly,
) -> Result<Vec<(NcPoly, NcPoly)>, AlgebraError> {
    let n = p.n();
    let cu = constitution_of(n, u)?.unwrap_or_else(|| Constitution::zero(n));
    let cv = constitution_of(n, v)?.unwrap_or_else(|| Constitution::zero(n));
    let cw = constitution_of(n, w)?.unwrap_or_else(|| Constitution::zero(n));
    let br = |a: &NcPoly, b: &NcPoly| skew_commutator(p, a, b);
    let pvw = p.value(&cv, &cw);
    let pwv = p.value(&cw, &cv);
    let puv = p.value(&cu, &cv);
    Ok(match which {
        Identity::Jacobi1 => {
            let lhs = br(&br(u, v)?, w)?;
            let uw = br(u, w)?;
            let pwv_inv = pwv.inv().map_err(|_| AlgebraError::NonHomogeneous)?;
            let mut rhs = br(u, &br(v, w)?)?;
            rhs.add_scaled(&br(&uw, v)?, &pwv_inv);
            rhs.add_scaled(&uw.mul(v), &(&pvw - &pwv_inv));
            vec![(lhs, rhs)]
        }
        Identity::Jacobi2 => {
            let lhs = br(&br(u, v)?, w)?;
            let uw = br(u, w)?;
            let mut rhs = br(u, &br(v, w)?)?;
            rhs.add_scaled(&br(&uw, v)?, &pvw);
            rhs.add_scaled(&v.mul(&uw), &(&puv * &(&(&pvw * &pwv) - &Scalar::one())));
            vec![(lhs, rhs)]
        }
        Identity::DiffLeft => {
            let lhs = br(u, &v.mul(w))?;
            let mut rhs = br(u, v)?.mul(w);
            rhs.add_scaled(&v.mul(&br(u, w)?), &puv);
            vec![(lhs, rhs)]
        }
        Identity::DiffRight => {
            let lhs = br(&u.mul(v), w)?;
            let mut rhs = u.mul(&br(v, w)?);
            rhs.add_scaled(&br(u, w)?.mul(v), &pvw);
            vec![(lhs, rhs)]
        }
        Identity::Restricted => {
            if p.value(&cv, &cv) != Scalar::int(-1) {
                return Err(AlgebraError::NotMinusOne);
            }
            let v2 = v.mul(v);
            vec![
                (br(u, &v2)?, br(&br(u, v)?, v)?),
                (br(&v2, u)?, br(v, &br(v, u)?)?),
            ]
        }
    })
}

/// True iff every side pair of the identity agrees.
pub fn identity_check(
    p: &Bicharacter,
    which: Identity,
    u: &NcPoly,
    v: &NcPoly,
    w: &NcPoly,
) -> Result<bool, AlgebraError> {
    Ok(identity_sides(p, which, u, v, w)?.iter().all(|(a, b)| a == b))
}
