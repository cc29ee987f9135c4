use std::collections::BTreeMap;
use std::path::Path;

use num_rational::BigRational;
use qpbw::presentation::{CartanKind, Presentation};
use qpbw::scalar::ParamSpace;
use qpbw::words::Constitution;

use crate::CliError;

/// A presentation file, or a built-in name such as `a3`, `B2.json` or `one-relation`.
pub fn load_presentation(arg: &str, specialize: Option<&str>) -> Result<Presentation, CliError> {
    let pres = if Path::new(arg).is_file() {
        let text =
            std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("cannot read {arg}: {e}")))?;
        Presentation::parse(&text).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?
    } else {
        builtin(arg).ok_or_else(|| CliError::Usage(format!("no such file or preset: {arg}")))??
    };
    match specialize {
        None => Ok(pres),
        Some(s) => {
            let assignment = parse_assignment(s)?;
            for name in assignment.keys() {
                if pres.params().index(name).is_none() {
                    return Err(CliError::Usage(format!("unknown parameter `{name}`")));
                }
            }
            pres.specialize(&assignment)
                .map_err(|e| CliError::Usage(format!("specialization: {e}")))
        }
    }
}

fn builtin(arg: &str) -> Option<Result<Presentation, CliError>> {
    let name = Path::new(arg).file_name()?.to_str()?;
    let name = name.strip_suffix(".json").unwrap_or(name).to_ascii_lowercase();
    if name == "one-relation" {
        return Some(Ok(Presentation::one_relation()));
    }
    let (kind, rank) = name.split_at(1);
    let kind: CartanKind = kind.parse().ok()?;
    let rank: usize = rank.parse().ok()?;
    Some(Presentation::preset(kind, rank).map_err(|e| CliError::Usage(e.to_string())))
}

/// `q=1,t12=3/2`
pub fn parse_assignment(s: &str) -> Result<BTreeMap<String, BigRational>, CliError> {
    let mut out = BTreeMap::new();
    let lit = ParamSpace::default();
    for part in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("expected name=value, got `{part}`")))?;
        let v = lit
            .parse_scalar(value.trim())
            .ok()
            .and_then(|v| v.as_rational())
            .ok_or_else(|| CliError::Usage(format!("`{value}` is not a rational number")))?;
        out.insert(name.trim().to_string(), v);
    }
    Ok(out)
}

/// `1,1` or `[1,1]`
pub fn parse_constitution(s: &str, n: usize) -> Result<Constitution, CliError> {
    let body = s.trim().trim_start_matches('[').trim_end_matches(']');
    let counts: Result<Vec<u32>, _> = body.split(',').map(|x| x.trim().parse::<u32>()).collect();
    let counts = counts.map_err(|_| CliError::Usage(format!("bad constitution `{s}`")))?;
    if counts.len() != n {
        return Err(CliError::Usage(format!(
            "constitution `{s}` has {} entries, the presentation has {n} generators",
            counts.len()
        )));
    }
    Ok(Constitution::new(counts))
}
