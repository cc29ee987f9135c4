use serde_json::{json, Value};
use thiserror::Error;

use super::{Provenance, RewriteRule, RewriteSystem};
use crate::algebra::NcPoly;
use crate::scalar::{ParamSpace, ScalarError};
use crate::words::{Constitution, Word, WordError};

pub const FORMAT: &str = "qpbw-rewrite-system/1";

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("malformed rewrite-system file: {0}")]
    Malformed(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("presentation hash mismatch: file has {found}, expected {expected}")]
    HashMismatch { found: String, expected: String },
}

fn bad(msg: &str) -> SerialError {
    SerialError::Malformed(msg.to_string())
}

impl RewriteSystem {
    /// Canonical JSON form; keys are sorted and rules appear in id order.
    pub fn to_json(&self, params: &ParamSpace, presentation_hash: &str) -> Value {
        let rules: Vec<Value> = self
            .rules
            .iter()
            .map(|r| {
                let tail: Vec<Value> = r
                    .tail
                    .iter()
                    .rev()
                    .map(|(w, c)| json!([w.to_string(), params.format_scalar(c)]))
                    .collect();
                let prov = match &r.provenance {
                    Provenance::Relation(i) => json!({ "relation": i }),
                    Provenance::Composition { left, right, overlap } => {
                        json!({ "composition": [left, right, overlap] })
                    }
                };
                json!({
                    "id": r.id,
                    "leading": r.leading.to_string(),
                    "tail": tail,
                    "provenance": prov,
                })
            })
            .collect();
        json!({
            "format": FORMAT,
            "presentation_hash": presentation_hash,
            "generators": self.n,
            "degrees": self.degrees,
            "parameters": params.names(),
            "verified_up_to": self.meta.verified_up_to,
            "globally_closed": self.meta.globally_closed,
            "constitution_bound": self.meta.constitution_bound.as_ref().map(|c| c.counts().to_vec()),
            "rules": rules,
        })
    }

    /// Inverse of [`to_json`](Self::to_json); returns the system and the stored hash.
    pub fn from_json(v: &Value, params: &ParamSpace) -> Result<(RewriteSystem, String), SerialError> {
        if v.get("format").and_then(Value::as_str) != Some(FORMAT) {
            return Err(bad("unknown format tag"));
        }
        let hash = v
            .get("presentation_hash")
            .and_then(Value::as_str)
            .ok_or_else(|| bad("missing presentation_hash"))?
            .to_string();
        let n = v
            .get("generators")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing generators"))? as usize;
        let degrees: Vec<u32> =
            serde_json::from_value(v.get("degrees").cloned().ok_or_else(|| bad("missing degrees"))?)?;
        if degrees.len() != n {
            return Err(bad("degree vector length"));
        }
        let names: Vec<String> = serde_json::from_value(
            v.get("parameters")
                .cloned()
                .ok_or_else(|| bad("missing parameters"))?,
        )?;
        if names != params.names() {
            return Err(bad("parameter list differs from the presentation"));
        }
        let mut sys = RewriteSystem::empty(n, degrees);
        let rules = v
            .get("rules")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing rules"))?;
        for r in rules {
            let id = r
                .get("id")
                .and_then(Value::as_u64)
                .ok_or_else(|| bad("rule id"))? as usize;
            let leading: Word = r
                .get("leading")
                .and_then(Value::as_str)
                .ok_or_else(|| bad("rule leading"))?
                .parse()?;
            leading.check_range(n)?;
            let mut tail = NcPoly::zero();
            for t in r
                .get("tail")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("rule tail"))?
            {
                let pair = t
                    .as_array()
                    .filter(|a| a.len() == 2)
                    .ok_or_else(|| bad("tail term"))?;
                let w: Word = pair[0].as_str().ok_or_else(|| bad("tail word"))?.parse()?;
                w.check_range(n)?;
                let c = params.parse_scalar(pair[1].as_str().ok_or_else(|| bad("tail scalar"))?)?;
                tail.add_term(w, c);
            }
            let p = r.get("provenance").ok_or_else(|| bad("provenance"))?;
            let provenance = if let Some(i) = p.get("relation").and_then(Value::as_u64) {
                Provenance::Relation(i as usize)
            } else if let Some(a) = p.get("composition").and_then(Value::as_array) {
                let g = |i: usize| a.get(i).and_then(Value::as_u64).map(|x| x as usize);
                match (g(0), g(1), g(2)) {
                    (Some(left), Some(right), Some(overlap)) => {
                        Provenance::Composition { left, right, overlap }
                    }
                    _ => return Err(bad("composition provenance")),
                }
            } else {
                return Err(bad("provenance kind"));
            };
            sys.validate_rule(&leading, &tail)
                .map_err(|e| SerialError::Malformed(e.to_string()))?;
            sys.lengths.insert(leading.len());
            sys.by_leading.insert(leading.clone(), sys.rules.len());
            sys.rules.push(RewriteRule {
                id,
                leading,
                tail,
                provenance,
            });
            sys.next_id = sys.next_id.max(id + 1);
        }
        sys.check_interreduced()
            .map_err(|e| SerialError::Malformed(e.to_string()))?;
        sys.meta.verified_up_to = v.get("verified_up_to").and_then(Value::as_u64);
        sys.meta.globally_closed = v.get("globally_closed").and_then(Value::as_bool).unwrap_or(false);
        sys.meta.constitution_bound = match v.get("constitution_bound") {
            Some(Value::Array(a)) => Some(Constitution::new(
                a.iter()
                    .map(|x| x.as_u64().map(|y| y as u32))
                    .collect::<Option<Vec<u32>>>()
                    .ok_or_else(|| bad("constitution bound"))?,
            )),
            _ => None,
        };
        Ok((sys, hash))
    }
}
