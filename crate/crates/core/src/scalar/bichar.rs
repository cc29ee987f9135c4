use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use smallvec::SmallVec;

use super::{ParamSpace, Scalar, ScalarError};
use crate::words::Constitution;

/// An element `g_1^{e_1} ... g_n^{e_n}` of the free abelian group on the generators' group-likes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GroupElement(SmallVec<[i32; 8]>);

impl GroupElement {
    pub fn identity(n: usize) -> Self {
        GroupElement(SmallVec::from_elem(0, n))
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut g = GroupElement::identity(n);
        g.0[i - 1] = 1;
        g
    }

    pub fn from_exponents(e: &[i32]) -> Self {
        GroupElement(SmallVec::from_slice(e))
    }

    /// `g_c`: the group-like carried by a word of constitution `c`.
    pub fn of_constitution(c: &Constitution) -> Self {
        GroupElement(c.counts().iter().map(|&x| x as i32).collect())
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "g{}", i + 1)?;
            } else {
                write!(f, "g{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

/// The quantification matrix `p_ij = chi^{x_i}(g_{x_j})`, extended multiplicatively to words.
pub struct Bicharacter {
    params: ParamSpace,
    entries: Vec<Vec<Scalar>>,
    cache: Mutex<HashMap<(SmallVec<[i32; 8]>, SmallVec<[i32; 8]>), Scalar>>,
}

impl Clone for Bicharacter {
    fn clone(&self) -> Self {
        Bicharacter {
            params: self.params.clone(),
            entries: self.entries.clone(),
            cache: Mutex::new(HashMap::new()),
        }
    }
}

impl fmt::Debug for Bicharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Bicharacter")
            .field("params", &self.params.names())
            .field("entries", &self.entries)
            .finish()
    }
}

impl PartialEq for Bicharacter {
    fn eq(&self, other: &Self) -> bool {
        self.params == other.params && self.entries == other.entries
    }
}

impl Bicharacter {
    /// Rejects non-square matrices and zero entries.
    pub fn new(params: ParamSpace, entries: Vec<Vec<Scalar>>) -> Result<Self, ScalarError> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(ScalarError::Syntax {
                column: 0,
                message: "bicharacter matrix must be square".into(),
            });
        }
        if entries.iter().flatten().any(|s| s.is_zero()) {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Bicharacter {
            params,
            entries,
            cache: Mutex::new(HashMap::new()),
        })
    }

    /// Every entry an independent parameter `p{i}{j}`.
    pub fn fully_generic(n: usize) -> Self {
        let mut params = ParamSpace::default();
        let mut entries = vec![vec![Scalar::zero(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                let v = params
                    .push(format!("p{}{}", i + 1, j + 1))
                    .expect("fresh parameter");
                *e = Scalar::param(v);
            }
        }
        Bicharacter::new(params, entries).expect("parameters are nonzero")
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn params(&self) -> &ParamSpace {
        &self.params
    }

    /// Entry `p_ij` with 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &[Vec<Scalar>] {
        &self.entries
    }

    /// `p(u, v) = prod p_ij^(u_i v_j)` with signed exponent vectors.
    pub fn value_exp(&self, u: &[i32], v: &[i32]) -> Scalar {
        let key = (SmallVec::from_slice(u), SmallVec::from_slice(v));
        if let Some(s) = self.cache.lock().expect("cache lock").get(&key) {
            return s.clone();
        }
        let mut acc = Scalar::one();
        for (i, &ui) in u.iter().enumerate() {
            if ui == 0 {
                continue;
            }
            for (j, &vj) in v.iter().enumerate() {
                if vj == 0 {
                    continue;
                }
                let e = ui as i64 * vj as i64;
                acc = &acc * &self.entries[i][j].powi(e);
            }
        }
        self.cache.lock().expect("cache lock").insert(key, acc.clone());
        acc
    }

    /// `p(u, v)` for constitutions.
    pub fn value(&self, u: &Constitution, v: &Constitution) -> Scalar {
        let a: SmallVec<[i32; 8]> = u.counts().iter().map(|&x| x as i32).collect();
        let b: SmallVec<[i32; 8]> = v.counts().iter().map(|&x| x as i32).collect();
        self.value_exp(&a, &b)
    }

    /// `chi^u(h)` for a constitution `u` and group element `h`.
    pub fn character(&self, u: &Constitution, h: &GroupElement) -> Scalar {
        let a: SmallVec<[i32; 8]> = u.counts().iter().map(|&x| x as i32).collect();
        self.value_exp(&a, h.exponents())
    }

    /// Applies `f` to every entry (used for specialization and deformation).
    pub fn map_entries<F>(&self, params: ParamSpace, mut f: F) -> Result<Bicharacter, ScalarError>
    where
        F: FnMut(usize, usize, &Scalar) -> Result<Scalar, ScalarError>,
    {
        let mut entries = Vec::with_capacity(self.n());
        for (i, row) in self.entries.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (j, e) in row.iter().enumerate() {
                out.push(f(i + 1, j + 1, e)?);
            }
            entries.push(out);
        }
        Bicharacter::new(params, entries)
    }
}

/// Free-function form of [`Bicharacter::value`].
pub fn bichar(p: &Bicharacter, u: &Constitution, v: &Constitution) -> Scalar {
    p.value(u, v)
}
