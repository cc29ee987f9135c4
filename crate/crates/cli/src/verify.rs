use std::collections::BTreeSet;
use std::time::Instant;

use qpbw::pbw::{constitution_json, Analyzer, HeightStatus};
use qpbw::presentation::{expected_lists, CartanKind, Presentation};
use qpbw::rewrite::CompletionCache;
use qpbw::words::Word;
use serde_json::{json, Value};

use crate::CliError;

pub struct VerifyOptions<'a> {
    pub max_degree: u64,
    pub primitive_degree: u64,
    pub max_power: u32,
    pub completion_cap: u64,
    pub cache: Option<&'a CompletionCache>,
    pub timing: bool,
}

pub struct Verification {
    pub report: Value,
    pub pass: bool,
}

fn set_check(computed: &BTreeSet<Word>, expected: &BTreeSet<Word>, decided: bool) -> (bool, Value) {
    let list = |s: &mut dyn Iterator<Item = &Word>| s.map(|w| w.to_string()).collect::<Vec<_>>();
    let pass = decided && computed == expected;
    let v = json!({
        "pass": pass,
        "decided": decided,
        "computed_count": computed.len(),
        "expected_count": expected.len(),
        "computed": list(&mut computed.iter()),
        "expected": list(&mut expected.iter()),
        "extra": list(&mut computed.difference(expected)),
        "missing": list(&mut expected.difference(computed)),
    });
    (pass, v)
}

pub fn verify(kind: CartanKind, rank: usize, opts: &VerifyOptions) -> Result<Verification, CliError> {
    let start = Instant::now();
    let expected = expected_lists(kind, rank).map_err(|e| CliError::Usage(e.to_string()))?;
    let pres = Presentation::preset(kind, rank).map_err(|e| CliError::Usage(e.to_string()))?;
    let hash = pres.hash();
    let an = Analyzer::complete_until_closed(pres, opts.completion_cap, opts.cache)?;
    let meta = &an.system.meta;
    let bound = meta.verified_up_to.unwrap_or(0);
    let closed = meta.globally_closed;

    let hard = an.hard_super_letters(bound)?;
    let decided = closed && hard.exhaustive;
    let (hard_pass, hard_json) = set_check(&hard.words(), &expected.hard, decided);
    let leading: BTreeSet<Word> = an.system.leading_words().into_iter().collect();
    let (lead_pass, lead_json) = set_check(&leading, &expected.leading, closed);

    let mut finite = Vec::new();
    let mut heights_decided = true;
    for h in &hard.letters {
        match an.height(h.word(), opts.max_power) {
            Ok(HeightStatus::InfiniteUpTo(_)) => {}
            Ok(HeightStatus::Finite(k)) => finite.push(json!({ "word": h.word().to_string(), "height": k })),
            Err(_) => heights_decided = false,
        }
    }
    let heights_pass = heights_decided && finite.is_empty();
    let heights_json = json!({
        "pass": heights_pass,
        "max_power": opts.max_power,
        "decided": heights_decided,
        "finite": finite,
    });

    let dims = an.pbw_dimensions(opts.max_degree.min(bound.max(1)))?;
    let crystal = an.crystal_basis(opts.max_degree.min(bound.max(1)))?;
    let mut dims_pass = opts.max_degree <= bound || closed;
    let mut table = Vec::new();
    for (c, d) in &dims {
        let k = crystal.get(c).map_or(0, |ws| ws.len()) as u64;
        dims_pass &= k == *d;
        table.push(json!({ "constitution": constitution_json(c), "pbw": d, "crystal": k }));
    }
    let dims_json = json!({ "pass": dims_pass, "max_degree": opts.max_degree, "table": table });

    let mut prim_pass = true;
    let mut prim_table = Vec::new();
    for c in an.constitutions(opts.primitive_degree) {
        let want = if c.total() == 1 { 1 } else { 0 };
        let r = an.skew_primitive_space(&c)?;
        prim_pass &= r.dimension == want;
        prim_table.push(json!({
            "constitution": constitution_json(&c),
            "dimension": r.dimension,
            "expected": want,
        }));
    }
    let prim_json = json!({ "pass": prim_pass, "max_degree": opts.primitive_degree, "table": prim_table });

    let pass = hard_pass && lead_pass && heights_pass && dims_pass && prim_pass;
    let mut report = json!({
        "kind": kind.to_string(),
        "rank": rank,
        "presentation_hash": hash,
        "completion": {
            "bound": bound,
            "globally_closed": closed,
            "rules": an.system.len(),
        },
        "checks": {
            "hard_letters": hard_json,
            "leading_words": lead_json,
            "heights": heights_json,
            "dimensions": dims_json,
            "primitives": prim_json,
        },
        "verdict": if pass { "pass" } else { "fail" },
    });
    if opts.timing {
        report["timing_ms"] = json!(start.elapsed().as_millis() as u64);
    }
    Ok(Verification { report, pass })
}

pub fn verify_text(r: &Value) -> String {
    let mut s = format!(
        "{}{}: completion bound {}, globally closed {}, {} rules\n",
        r["kind"].as_str().unwrap_or(""),
        r["rank"],
        r["completion"]["bound"],
        r["completion"]["globally_closed"],
        r["completion"]["rules"]
    );
    for name in [
        "hard_letters",
        "leading_words",
        "heights",
        "dimensions",
        "primitives",
    ] {
        let c = &r["checks"][name];
        let verdict = if c["pass"].as_bool() == Some(true) {
            "pass"
        } else {
            "FAIL"
        };
        s.push_str(&format!("  {name}: {verdict}"));
        if let Some(n) = c.get("computed_count") {
            s.push_str(&format!(" ({n} computed, {} expected)", c["expected_count"]));
        }
        s.push('\n');
        for key in ["extra", "missing"] {
            if let Some(ws) = c.get(key).and_then(|v| v.as_array()) {
                if !ws.is_empty() {
                    let ws: Vec<&str> = ws.iter().filter_map(|w| w.as_str()).collect();
                    s.push_str(&format!("    {key}: {}\n", ws.join(" ")));
                }
            }
        }
    }
    s.push_str(&format!("verdict: {}\n", r["verdict"].as_str().unwrap_or("")));
    s
}
