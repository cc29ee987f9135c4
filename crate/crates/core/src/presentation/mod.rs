//! Cartan data, quantified Serre relations, presets and the presentation file format.

mod cartan;
mod expected;
mod parse;

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

pub use cartan::{
    existence_check, generic_parameters, serre_expression, serre_relations, CartanData, CartanKind,
};
pub use expected::{expected_lists, ExpectedLists};
pub use parse::parse_relation;

use crate::algebra::NcPoly;
use crate::rewrite::{RewriteError, RewriteSystem};
use crate::scalar::{Bicharacter, ParamSpace, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("invalid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema: {0}")]
    Schema(String),
    #[error("relation {relation}, column {column}: {message}")]
    Syntax {
        relation: usize,
        column: usize,
        message: String,
    },
    #[error("relation {relation}, column {column}: bracket operand is not constitution-homogeneous")]
    Inhomogeneous { relation: usize, column: usize },
    #[error("relation {relation}, column {column}: undeclared parameter `{name}`")]
    UndeclaredParameter {
        relation: usize,
        column: usize,
        name: String,
    },
    #[error("relation {0} is not constitution-homogeneous")]
    InhomogeneousRelation(usize),
    #[error("bicharacter entry ({i},{j}): {message}")]
    Entry { i: usize, j: usize, message: String },
    #[error("no quantification: p_ij p_ji != p_ii^a_ij at {0:?}")]
    Existence(Vec<(usize, usize)>),
    #[error("{0}")]
    Rank(String),
    #[error("parameter: {0}")]
    Scalar(#[from] ScalarError),
}

/// A homogeneous presentation of a quantized algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub n: usize,
    pub bicharacter: Bicharacter,
    pub degrees: Vec<u32>,
    /// Relation expressions as written.
    pub sources: Vec<String>,
    /// Their expansions.
    pub relations: Vec<NcPoly>,
    pub cartan: Option<CartanData>,
}

impl Presentation {
    /// Parses relation sources under `p`.
    pub fn new(
        p: Bicharacter,
        degrees: Vec<u32>,
        sources: Vec<String>,
        cartan: Option<CartanData>,
    ) -> Result<Self, PresentationError> {
        let n = p.n();
        if degrees.len() != n || degrees.contains(&0) {
            return Err(PresentationError::Schema(
                "degrees must be one positive integer per generator".into(),
            ));
        }
        let mut relations = Vec::with_capacity(sources.len());
        for (i, s) in sources.iter().enumerate() {
            let f = parse_relation(&p, i, s)?;
            if f.constitution(n).is_err() {
                return Err(PresentationError::InhomogeneousRelation(i));
            }
            relations.push(f);
        }
        Ok(Presentation {
            n,
            bicharacter: p,
            degrees,
            sources,
            relations,
            cartan,
        })
    }

    /// The quantized Serre presentation for a Cartan matrix and an admissible bicharacter.
    pub fn from_cartan(a: &CartanData, p: Bicharacter) -> Result<Self, PresentationError> {
        let rels = serre_relations(a, &p)?;
        let sources = rels.into_iter().map(|(s, _)| s).collect();
        Presentation::new(p, vec![1; a.n], sources, Some(a.clone()))
    }

    /// Classical type with the constrained generic bicharacter.
    pub fn preset(kind: CartanKind, n: usize) -> Result<Self, PresentationError> {
        let a = CartanData::new(kind, n)?;
        let p = generic_parameters(&a)?;
        Presentation::from_cartan(&a, p)
    }

    /// The one-relation algebra `[x1,[x1,[x1,x2]]] = 0` with `p21 = q^-2 t^-1`,
    /// the constraint under which the relation is skew-primitive.
    pub fn one_relation() -> Self {
        let params = ParamSpace::new(["q", "t", "r"]).expect("valid names");
        let q = params.param("q").expect("q");
        let t = params.param("t").expect("t");
        let r = params.param("r").expect("r");
        let p21 = (&q.powi(2) * &t).inv().expect("nonzero");
        let p = Bicharacter::new(params, vec![vec![q, t], vec![p21, r]]).expect("nonzero");
        Presentation::new(p, vec![1, 1], vec!["[x1,[x1,[x1,x2]]]".into()], None).expect("well-formed")
    }

    pub fn params(&self) -> &ParamSpace {
        self.bicharacter.params()
    }

    pub fn kind(&self) -> CartanKind {
        self.cartan.as_ref().map_or(CartanKind::Custom, |a| a.kind)
    }

    /// The same relation sources reinterpreted under a new bicharacter.
    pub fn with_bicharacter(&self, p: Bicharacter) -> Result<Self, PresentationError> {
        if let Some(a) = &self.cartan {
            let bad = existence_check(&p, a)?;
            if !bad.is_empty() {
                return Err(PresentationError::Existence(bad));
            }
        }
        Presentation::new(p, self.degrees.clone(), self.sources.clone(), self.cartan.clone())
    }

    /// Substitutes rational values for some parameters.
    pub fn specialize(&self, assignment: &BTreeMap<String, BigRational>) -> Result<Self, PresentationError> {
        let ps = self.params();
        let target = ps.remaining(assignment);
        let p = self.bicharacter.map_entries(target.clone(), |i, j, e| {
            let v = ps.specialize_into(e, assignment, &target)?;
            if v.is_zero() {
                return Err(ScalarError::Syntax {
                    column: 0,
                    message: format!("entry ({i},{j}) vanishes"),
                });
            }
            Ok(v)
        })?;
        self.with_bicharacter(p)
    }

    /// Multiplies `p_ij` by `z` and `p_ji` by `z^-1` for each `(i, j) -> z`.
    pub fn z_deform(&self, z: &BTreeMap<(usize, usize), Scalar>) -> Result<Self, PresentationError> {
        let mut factors = vec![vec![Scalar::one(); self.n]; self.n];
        for (&(i, j), v) in z {
            if i == j || i == 0 || j == 0 || i > self.n || j > self.n {
                return Err(PresentationError::Schema(format!(
                    "bad deformation index ({i},{j})"
                )));
            }
            let inv = v.inv()?;
            factors[i - 1][j - 1] = &factors[i - 1][j - 1] * v;
            factors[j - 1][i - 1] = &factors[j - 1][i - 1] * &inv;
        }
        let p = self
            .bicharacter
            .map_entries(self.params().clone(), |i, j, e| Ok(e * &factors[i - 1][j - 1]))?;
        self.with_bicharacter(p)
    }

    /// Interreduced rewriting system of the relations (before completion).
    pub fn rewrite_system(&self) -> Result<RewriteSystem, RewriteError> {
        RewriteSystem::from_relations(self.n, self.degrees.clone(), &self.relations)
    }

    pub fn to_json(&self) -> Value {
        let ps = self.params();
        let entries: Vec<Vec<String>> = self
            .bicharacter
            .entries()
            .iter()
            .map(|row| row.iter().map(|s| ps.format_scalar(s)).collect())
            .collect();
        let mut v = json!({
            "generators": self.n,
            "degrees": self.degrees,
            "parameters": ps.names(),
            "bicharacter": entries,
            "relations": self.sources,
        });
        if let Some(a) = &self.cartan {
            v["kind"] = json!(a.kind.to_string());
            if a.kind == CartanKind::Custom {
                v["cartan"] = json!(a.matrix);
            }
        }
        v
    }

    /// Canonical text (sorted keys, pretty-printed).
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable") + "\n"
    }

    /// SHA-256 of the compact canonical JSON.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(&self.to_json()).expect("serializable");
        hex::encode(Sha256::digest(text.as_bytes()))
    }

    /// Parses the presentation file format.
    pub fn parse(source: &str) -> Result<Self, PresentationError> {
        let v: Value = serde_json::from_str(source).map_err(|e| PresentationError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        Presentation::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<Self, PresentationError> {
        let schema = |m: &str| PresentationError::Schema(m.to_string());
        let obj = v
            .as_object()
            .ok_or_else(|| schema("top level must be an object"))?;
        for k in obj.keys() {
            if !matches!(
                k.as_str(),
                "generators" | "degrees" | "parameters" | "bicharacter" | "relations" | "kind" | "cartan"
            ) {
                return Err(schema(&format!("unknown field `{k}`")));
            }
        }
        let n = obj
            .get("generators")
            .and_then(Value::as_u64)
            .filter(|&n| (1..=64).contains(&n))
            .ok_or_else(|| schema("`generators` must be an integer in 1..=64"))? as usize;
        let degrees: Vec<u32> = match obj.get("degrees") {
            None => vec![1; n],
            Some(d) => serde_json::from_value(d.clone())
                .map_err(|_| schema("`degrees` must be a list of positive integers"))?,
        };
        let names: Vec<String> = match obj.get("parameters") {
            None => Vec::new(),
            Some(p) => serde_json::from_value(p.clone())
                .map_err(|_| schema("`parameters` must be a list of names"))?,
        };
        let params = ParamSpace::new(names)?;
        let rows = obj
            .get("bicharacter")
            .and_then(Value::as_array)
            .ok_or_else(|| schema("`bicharacter` must be a matrix of scalar literals"))?;
        if rows.len() != n {
            return Err(schema("`bicharacter` must have one row per generator"));
        }
        let mut m = Vec::with_capacity(n);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .filter(|r| r.len() == n)
                .ok_or_else(|| schema("`bicharacter` must be square"))?;
            let mut out = Vec::with_capacity(n);
            for (j, e) in row.iter().enumerate() {
                let entry = |message: String| PresentationError::Entry {
                    i: i + 1,
                    j: j + 1,
                    message,
                };
                let s = match e {
                    Value::String(s) => params.parse_scalar(s).map_err(|e| entry(e.to_string()))?,
                    Value::Number(x) => params
                        .parse_scalar(&x.to_string())
                        .map_err(|e| entry(e.to_string()))?,
                    _ => return Err(entry("expected a scalar literal".into())),
                };
                if s.is_zero() {
                    return Err(entry("entry is not invertible".into()));
                }
                out.push(s);
            }
            m.push(out);
        }
        let p = Bicharacter::new(params, m)?;
        let sources: Vec<String> = serde_json::from_value(
            obj.get("relations")
                .cloned()
                .ok_or_else(|| schema("missing `relations`"))?,
        )
        .map_err(|_| schema("`relations` must be a list of strings"))?;
        let cartan = match obj.get("kind").and_then(Value::as_str) {
            None => None,
            Some(k) => {
                let kind: CartanKind = k.parse()?;
                Some(if kind == CartanKind::Custom {
                    let mat: Vec<Vec<i32>> = serde_json::from_value(
                        obj.get("cartan")
                            .cloned()
                            .ok_or_else(|| schema("custom kind needs `cartan`"))?,
                    )
                    .map_err(|_| schema("`cartan` must be an integer matrix"))?;
                    CartanData::custom(mat)?
                } else {
                    CartanData::new(kind, n)?
                })
            }
        };
        Presentation::new(p, degrees, sources, cartan)
    }
}
