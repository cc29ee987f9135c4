//! Exact coefficient field `Q(params)` and the bicharacter on words.

mod bichar;
mod gcd;
mod literal;
mod poly;
mod ratfunc;

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use thiserror::Error;

pub use bichar::{bichar, Bicharacter, GroupElement};
pub use gcd::gcd;
pub use poly::{Monomial, Poly};
pub use ratfunc::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at the specialization point")]
    Pole,
    #[error("specialization pole at {point}")]
    PoleAt { point: String },
    #[error("parameter left unassigned")]
    Unassigned,
    #[error("undeclared parameter `{0}`")]
    UndeclaredParameter(String),
    #[error("invalid parameter name `{0}`")]
    InvalidName(String),
    #[error("column {column}: {message}")]
    Syntax { column: usize, message: String },
}

/// Named parameters; a scalar's variable `i` is `names[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ParamSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl ParamSpace {
    pub fn new<I, S>(names: I) -> Result<Self, ScalarError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut ps = ParamSpace::default();
        for n in names {
            ps.push(n.into())?;
        }
        Ok(ps)
    }

    pub fn push(&mut self, name: String) -> Result<usize, ScalarError> {
        if !valid_param_name(&name) || self.index.contains_key(&name) {
            return Err(ScalarError::InvalidName(name));
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn param(&self, name: &str) -> Option<Scalar> {
        self.index(name).map(Scalar::param)
    }

    /// Substitution vector for `assignment`, rejecting unknown names.
    pub fn assignment_vector(
        &self,
        assignment: &BTreeMap<String, BigRational>,
    ) -> Result<Vec<Option<BigRational>>, ScalarError> {
        let mut v = vec![None; self.len()];
        for (k, val) in assignment {
            let i = self
                .index(k)
                .ok_or_else(|| ScalarError::UndeclaredParameter(k.clone()))?;
            v[i] = Some(val.clone());
        }
        Ok(v)
    }

    /// The parameters that survive a partial assignment, in order.
    pub fn remaining(&self, assignment: &BTreeMap<String, BigRational>) -> ParamSpace {
        ParamSpace::new(
            self.names
                .iter()
                .filter(|n| !assignment.contains_key(*n))
                .cloned(),
        )
        .expect("subset of valid names")
    }

    /// Re-indexes `s` (over `self`) after a partial substitution into `target`.
    pub fn specialize_into(
        &self,
        s: &Scalar,
        assignment: &BTreeMap<String, BigRational>,
        target: &ParamSpace,
    ) -> Result<Scalar, ScalarError> {
        let values = self.assignment_vector(assignment)?;
        let partial = s.substitute(&values).map_err(|_| ScalarError::PoleAt {
            point: format_point(assignment),
        })?;
        let map: Vec<Option<usize>> = self.names.iter().map(|n| target.index(n)).collect();
        Ok(reindex(&partial, &map))
    }
}

fn format_point(assignment: &BTreeMap<String, BigRational>) -> String {
    assignment
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn reindex(s: &Scalar, map: &[Option<usize>]) -> Scalar {
    let re = |p: &Poly| {
        Poly::from_terms(p.terms().iter().map(|(m, c)| {
            let mut e = vec![0u16; map.iter().flatten().max().map(|x| x + 1).unwrap_or(0)];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x > 0 {
                    let j = map[i].expect("substituted variables are absent");
                    e[j] = x;
                }
            }
            (Monomial::from_exponents(&e), c.clone())
        }))
    };
    Scalar::from_parts(re(s.numerator()), re(s.denominator())).expect("nonzero denominator")
}

/// Parameter names must match `[a-z][a-z0-9]*` and must not look like a generator `x<digits>`.
pub fn valid_param_name(name: &str) -> bool {
    let b = name.as_bytes();
    if b.is_empty() || !b[0].is_ascii_lowercase() {
        return false;
    }
    if !b.iter().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit()) {
        return false;
    }
    // `x` followed by a digit anywhere would lex as a generator.
    !b.windows(2).any(|w| w[0] == b'x' && w[1].is_ascii_digit())
}

/// Exact value of `s` at a full assignment of its parameters.
pub fn specialize(
    params: &ParamSpace,
    s: &Scalar,
    assignment: &BTreeMap<String, BigRational>,
) -> Result<BigRational, ScalarError> {
    let values = params.assignment_vector(assignment)?;
    let partial = s.substitute(&values).map_err(|_| ScalarError::PoleAt {
        point: format_point(assignment),
    })?;
    partial.as_rational().ok_or(ScalarError::Unassigned)
}

/// True iff `s` is the zero rational function.
pub fn is_zero(s: &Scalar) -> bool {
    s.is_zero()
}
