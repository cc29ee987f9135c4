use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{HardLetterReport, HardSetCertificate, HeightStatus, PairVerdict, PrimitiveSpaceReport};
use crate::scalar::ParamSpace;
use crate::words::{Constitution, Word};

pub fn constitution_json(c: &Constitution) -> Value {
    json!(c.counts())
}

impl HeightStatus {
    pub fn to_json(&self) -> Value {
        match self {
            HeightStatus::InfiniteUpTo(h) => json!({ "infinite_up_to": h }),
            HeightStatus::Finite(h) => json!({ "finite": h }),
        }
    }
}

impl std::fmt::Display for HeightStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HeightStatus::InfiniteUpTo(h) => write!(f, "infinite up to {h}"),
            HeightStatus::Finite(h) => write!(f, "{h}"),
        }
    }
}

impl HardLetterReport {
    pub fn to_json(&self) -> Value {
        let letters: Vec<Value> = self
            .letters
            .iter()
            .map(|h| {
                let mut v = json!({
                    "word": h.letter.word.to_string(),
                    "bracketing": h.letter.tree.to_json(),
                    "degree": h.degree,
                });
                if let Some(s) = &h.height {
                    v["height"] = s.to_json();
                }
                v
            })
            .collect();
        json!({
            "max_degree": self.max_degree,
            "exhaustive": self.exhaustive,
            "count": self.letters.len(),
            "letters": letters,
        })
    }
}

impl PrimitiveSpaceReport {
    pub fn to_json(&self, params: &ParamSpace) -> Value {
        let basis: Vec<Value> = self
            .basis
            .iter()
            .map(|f| {
                let terms: Vec<Value> = f
                    .iter()
                    .rev()
                    .map(|(w, c)| json!([w.to_string(), params.format_scalar(c)]))
                    .collect();
                Value::Array(terms)
            })
            .collect();
        json!({
            "constitution": constitution_json(&self.constitution),
            "dimension": self.dimension,
            "basis": basis,
        })
    }
}

impl PairVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            PairVerdict::NonStandard => "non-standard",
            PairVerdict::NonHard => "non-hard",
            PairVerdict::InSet => "in-set",
            PairVerdict::Missing => "missing",
            PairVerdict::Undecided => "undecided",
        }
    }
}

impl HardSetCertificate {
    pub fn to_json(&self) -> Value {
        let words = |ws: &[Word]| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>();
        let pairs: Vec<Value> = self
            .pairs
            .iter()
            .map(|p| {
                json!({
                    "left": p.left.to_string(),
                    "right": p.right.to_string(),
                    "verdict": p.verdict.as_str(),
                })
            })
            .collect();
        json!({
            "certified": self.certified,
            "missing_generators": words(&self.missing_generators),
            "not_hard": words(&self.not_hard),
            "pairs": pairs,
        })
    }
}

/// `[{"constitution": [..], "dimension": d}, ..]` in the map's order.
pub fn dimensions_json(dims: &BTreeMap<Constitution, u64>) -> Value {
    Value::Array(
        dims.iter()
            .map(|(c, d)| json!({ "constitution": constitution_json(c), "dimension": d }))
            .collect(),
    )
}

pub fn crystal_json(basis: &BTreeMap<Constitution, Vec<Word>>) -> Value {
    Value::Array(
        basis
            .iter()
            .map(|(c, ws)| {
                json!({
                    "constitution": constitution_json(c),
                    "words": ws.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}
