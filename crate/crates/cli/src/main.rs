mod input;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qpbw::algebra::{fuzz_identities, is_skew_primitive_poly};
use qpbw::pbw::{constitution_json, constitutions_up_to, crystal_json, Analyzer, PbwError};
use qpbw::presentation::{existence_check, CartanKind, Presentation};
use qpbw::rewrite::{CompletionCache, RewriteError};
use qpbw::words::Word;
use serde_json::{json, Value};

use input::{load_presentation, parse_constitution};

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments, unreadable or malformed input.
    Usage(String),
    Internal(String),
}

impl From<PbwError> for CliError {
    fn from(e: PbwError) -> Self {
        match e {
            PbwError::Rewrite(RewriteError::Internal(m)) => CliError::Internal(m),
            PbwError::Cache(m) => CliError::Internal(format!("completion cache: {m}")),
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "qpbw",
    version,
    about = "Groebner-Shirshov systems and PBW bases of quantized enveloping algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory of completed systems keyed by presentation hash and bound.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Plain text instead of JSON.
    #[arg(long)]
    text: bool,
}

#[derive(clap::Args)]
struct Input {
    /// Presentation file, or a built-in preset name (a2 .. d4, one-relation).
    presentation: String,
    /// Fix parameters, e.g. `q=1,t12=3/2`.
    #[arg(long)]
    specialize: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a classical preset against its published lists.
    Verify {
        kind: CartanKind,
        rank: usize,
        /// Degree bound for the dimension tables.
        #[arg(long, default_value_t = 6)]
        max_degree: u64,
        /// Largest completion bound tried while looking for global closure.
        #[arg(long, default_value_t = 40)]
        completion_cap: u64,
        #[arg(long, default_value_t = 3)]
        max_power: u32,
        /// Record elapsed time in the report (makes it non-reproducible).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Complete the relations to a Groebner-Shirshov system.
    Complete {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 12)]
        max_degree: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Hard super letters up to a degree.
    Hard {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 8)]
        max_degree: u64,
        /// Also check heights up to this power.
        #[arg(long)]
        heights: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Height of one hard super letter.
    Heights {
        #[command(flatten)]
        input: Input,
        word: Word,
        #[arg(long, default_value_t = 3)]
        max_power: u32,
        /// Completion bound; defaults to the degree of the largest power.
        #[arg(long)]
        max_degree: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Normal words grouped by constitution.
    Crystal {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        max_degree: u64,
        #[command(flatten)]
        common: Common,
    },
    /// PBW and crystal dimension table.
    Dims {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 6)]
        max_degree: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Skew-primitive spaces, for one constitution or all up to a degree.
    Primitives {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        constitution: Option<String>,
        #[arg(long, default_value_t = 4)]
        max_degree: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Random checks of the bracket identities.
    FuzzIdentities {
        rank: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Also check the exponent-two identity at p_vv = -1.
        #[arg(long)]
        restricted: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Quantification existence and skew-primitivity of every relation.
    CheckParams {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        common: Common,
    },
}

enum Outcome {
    Pass,
    Mismatch,
}

fn emit(common: &Common, json: &Value, text: impl FnOnce() -> String) -> Result<(), CliError> {
    let body = if common.text {
        text()
    } else {
        serde_json::to_string_pretty(json).expect("serializable") + "\n"
    };
    match &common.out {
        Some(p) => {
            std::fs::write(p, body).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display())))
        }
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn cache_of(common: &Common) -> Option<CompletionCache> {
    common.cache.as_ref().map(CompletionCache::new)
}

fn analyzer(pres: Presentation, degree: u64, common: &Common) -> Result<Analyzer, CliError> {
    let degree = degree.max(
        pres.rewrite_system()
            .map_err(|e| CliError::Usage(e.to_string()))?
            .max_rule_degree(),
    );
    Ok(Analyzer::complete_cached(
        pres,
        degree,
        cache_of(common).as_ref(),
    )?)
}

fn words_text(ws: &[Word]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify {
            kind,
            rank,
            max_degree,
            completion_cap,
            max_power,
            timing,
            common,
        } => {
            let cache = cache_of(&common);
            let opts = verify::VerifyOptions {
                max_degree,
                primitive_degree: 4,
                max_power,
                completion_cap,
                cache: cache.as_ref(),
                timing,
            };
            let v = verify::verify(kind, rank, &opts)?;
            emit(&common, &v.report, || verify::verify_text(&v.report))?;
            Ok(if v.pass { Outcome::Pass } else { Outcome::Mismatch })
        }
        Command::Complete {
            input,
            max_degree,
            common,
        } => {
            let pres = load_presentation(&input.presentation, input.specialize.as_deref())?;
            let hash = pres.hash();
            let an = analyzer(pres, max_degree, &common)?;
            let v = an.system.to_json(an.presentation.params(), &hash);
            emit(&common, &v, || {
                let ps = an.presentation.params();
                let mut s = format!(
                    "{} rules, verified up to {}, globally closed {}\n",
                    an.system.len(),
                    an.system.meta.verified_up_to.unwrap_or(0),
                    an.system.meta.globally_closed
                );
                for r in an.system.rules() {
                    s.push_str(&format!("{} -> {}\n", r.leading, r.tail.format(ps)));
                }
                s
            })?;
            Ok(Outcome::Pass)
        }
        Command::Hard {
            input,
            max_degree,
            heights,
            common,
        } => {
            let pres = load_presentation(&input.presentation, input.specialize.as_deref())?;
            let an = analyzer(pres, max_degree, &common)?;
            let r = match heights {
                Some(h) => an.hard_super_letters_with_heights(max_degree, h)?,
                None => an.hard_super_letters(max_degree)?,
            };
            emit(&common, &r.to_json(), || {
                let mut s = String::new();
                for h in &r.letters {
                    s.push_str(&format!("{}  {}", h.word(), h.letter.tree));
                    if let Some(st) = &h.height {
                        s.push_str(&format!("  height {st}"));
                    }
                    s.push('\n');
                }
                s.push_str(&format!(
                    "{} hard letters up to degree {}\n",
                    r.letters.len(),
                    r.max_degree
                ));
                s
            })?;
            Ok(Outcome::Pass)
        }
        Command::Heights {
            input,
            word,
            max_power,
            max_degree,
            common,
        } => {
            let pres = load_presentation(&input.presentation, input.specialize.as_deref())?;
            let deg = max_degree.unwrap_or(word.weighted_degree(&pres.degrees) * max_power.max(1) as u64);
            let an = analyzer(pres, deg, &common)?;
            let st = an.height(&word, max_power)?;
            let v = json!({ "word": word.to_string(), "max_power": max_power, "height": st.to_json() });
            emit(&common, &v, || format!("{word}: {st}\n"))?;
            Ok(Outcome::Pass)
        }
        Command::Crystal {
            input,
            max_degree,
            common,
        } => {
            let pres = load_presentation(&input.presentation, input.specialize.as_deref())?;
            let an = analyzer(pres, max_degree, &common)?;
            let basis = an.crystal_basis(max_degree)?;
            emit(&common, &crystal_json(&basis), || {
                basis
                    .iter()
                    .map(|(c, ws)| format!("{:?}: {}\n", c.counts(), words_text(ws)))
                    .collect()
            })?;
            Ok(Outcome::Pass)
        }
        Command::Dims {
            input,
            max_degree,
            common,
        } => {
            let pres = load_presentation(&input.presentation, input.specialize.as_deref())?;
            let an = analyzer(pres, max_degree, &common)?;
            let dims = an.pbw_dimensions(max_degree)?;
            let crystal = an.crystal_basis(max_degree)?;
            let mut agree = true;
            let rows: Vec<Value> = dims
                .iter()
                .map(|(c, d)| {
                    let k = crystal[c].len() as u64;
                    agree &= k == *d;
                    json!({ "constitution": constitution_json(c), "pbw": d, "crystal": k })
                })
                .collect();
            let v = json!({ "max_degree": max_degree, "agree": agree, "table": rows });
            emit(&common, &v, || {
                dims.iter()
                    .map(|(c, d)| format!("{:?}: {d} (crystal {})\n", c.counts(), crystal[c].len()))
                    .collect()
            })?;
            Ok(if agree { Outcome::Pass } else { Outcome::Mismatch })
        }
        Command::Primitives {
            input,
            constitution,
            max_degree,
            common,
        } => {
            let pres = load_presentation(&input.presentation, input.specialize.as_deref())?;
            let cs = match &constitution {
                Some(s) => vec![parse_constitution(s, pres.n)?],
                None => constitutions_up_to(&pres.degrees, max_degree),
            };
            let deg = cs
                .iter()
                .map(|c| c.weighted_degree(&pres.degrees))
                .max()
                .unwrap_or(1);
            let an = analyzer(pres, deg, &common)?;
            let mut reports = Vec::new();
            for c in &cs {
                reports.push(an.skew_primitive_space(c)?);
            }
            let ps = an.presentation.params();
            let v = Value::Array(reports.iter().map(|r| r.to_json(ps)).collect());
            emit(&common, &v, || {
                let mut s = String::new();
                for r in &reports {
                    s.push_str(&format!(
                        "{:?}: dimension {}\n",
                        r.constitution.counts(),
                        r.dimension
                    ));
                    for f in &r.basis {
                        s.push_str(&format!("  {}\n", f.format(ps)));
                    }
                }
                s
            })?;
            Ok(Outcome::Pass)
        }
        Command::FuzzIdentities {
            rank,
            trials,
            seed,
            restricted,
            common,
        } => {
            if rank == 0 {
                return Err(CliError::Usage("rank must be positive".into()));
            }
            let s = fuzz_identities(rank, trials, seed, restricted);
            emit(&common, &s.to_json(), || {
                let mut out = String::new();
                for t in &s.tallies {
                    out.push_str(&format!(
                        "{}: {} trials, {} failures\n",
                        t.identity.name(),
                        t.trials,
                        t.failures
                    ));
                }
                out
            })?;
            Ok(if s.failures() == 0 {
                Outcome::Pass
            } else {
                Outcome::Mismatch
            })
        }
        Command::CheckParams { input, common } => {
            let pres = load_presentation(&input.presentation, input.specialize.as_deref())?;
            let p = &pres.bicharacter;
            let existence = match &pres.cartan {
                Some(a) => {
                    let bad = existence_check(p, a).map_err(|e| CliError::Usage(e.to_string()))?;
                    json!({ "checked": true, "pass": bad.is_empty(), "failing_pairs": bad })
                }
                None => json!({ "checked": false, "pass": true, "failing_pairs": [] }),
            };
            let mut all = existence["pass"].as_bool() == Some(true);
            let mut rels = Vec::new();
            for (src, f) in pres.sources.iter().zip(&pres.relations) {
                let ok = is_skew_primitive_poly(p, f).map_err(|e| CliError::Usage(e.to_string()))?;
                all &= ok;
                rels.push(json!({ "relation": src, "skew_primitive": ok }));
            }
            let v = json!({ "existence": existence, "relations": rels, "pass": all });
            emit(&common, &v, || {
                let mut s = format!("existence: {}\n", existence["pass"]);
                for r in &rels {
                    s.push_str(&format!(
                        "{}: skew-primitive {}\n",
                        r["relation"].as_str().unwrap_or(""),
                        r["skew_primitive"]
                    ));
                }
                s
            })?;
            Ok(if all { Outcome::Pass } else { Outcome::Mismatch })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Completion recurses deeply on long words; the main thread's stack is too small.
    let handle = std::thread::Builder::new()
        .stack_size(1 << 30)
        .spawn(move || run(cli))
        .expect("spawn worker");
    match handle.join() {
        Ok(Ok(Outcome::Pass)) => ExitCode::SUCCESS,
        Ok(Ok(Outcome::Mismatch)) => ExitCode::from(1),
        Ok(Err(CliError::Usage(m))) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Ok(Err(CliError::Internal(m))) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
        Err(_) => {
            eprintln!("internal error: worker panicked");
            ExitCode::from(3)
        }
    }
}
