//! The end-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use common::{all_words_up_to, brute_standard, contains, diamond_dimension, random_rational};
use num_rational::BigRational;
use qpbw::algebra::{fuzz_identities, is_skew_primitive_poly, skew_commutator, NcPoly};
use qpbw::pbw::{constitutions_up_to, Analyzer, HeightStatus};
use qpbw::presentation::{expected_lists, CartanData, CartanKind, Presentation};
use qpbw::scalar::{Bicharacter, ParamSpace, Scalar};
use qpbw::words::Word;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: u64 = 40;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn list(ws: &BTreeSet<Word>) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(" ")
}

fn diff(label: &str, got: &BTreeSet<Word>, want: &BTreeSet<Word>) -> Option<String> {
    if got == want {
        return None;
    }
    let extra: BTreeSet<Word> = got.difference(want).cloned().collect();
    let missing: BTreeSet<Word> = want.difference(got).cloned().collect();
    Some(format!(
        "{label} extra [{}] missing [{}]",
        list(&extra),
        list(&missing)
    ))
}

fn closed(p: Presentation) -> Analyzer {
    Analyzer::complete_until_closed(p, CAP, None).expect("completion")
}

fn hard_set(an: &Analyzer) -> Option<BTreeSet<Word>> {
    if !an.system.meta.globally_closed {
        return None;
    }
    let r = an.hard_super_letters(an.system.max_rule_degree()).ok()?;
    r.exhaustive.then(|| r.words())
}

struct Run {
    kind: CartanKind,
    n: usize,
    analyzer: Analyzer,
}

/// Criteria 1 to 4: hard letters and leading words against the published lists.
fn classical(runs: &mut Vec<Run>, kind: CartanKind, ranks: &[usize], limit: Duration) -> Outcome {
    let mut pass = true;
    let mut notes = Vec::new();
    for &n in ranks {
        let start = Instant::now();
        let pres = Presentation::preset(kind, n).expect("preset");
        let an = closed(pres);
        let expect = expected_lists(kind, n).expect("lists");
        let hard = hard_set(&an);
        let lead: BTreeSet<Word> = an.system.leading_words().into_iter().collect();
        let took = start.elapsed();
        let mut problems = Vec::new();
        match &hard {
            None => problems.push("system not closed below the cap".to_string()),
            Some(h) => problems.extend(diff("hard", h, &expect.hard)),
        }
        problems.extend(diff("leading", &lead, &expect.leading));
        if took > limit {
            problems.push(format!("took {:.1}s", took.as_secs_f64()));
        }
        let count = hard.as_ref().map_or(0, |h| h.len());
        if problems.is_empty() {
            notes.push(format!(
                "{kind}{n}: {count} letters, {} rules, {:.1}s",
                lead.len(),
                took.as_secs_f64()
            ));
        } else {
            pass = false;
            notes.push(format!("{kind}{n}: {}", problems.join("; ")));
        }
        runs.push(Run {
            kind,
            n,
            analyzer: an,
        });
    }
    outcome(pass, notes.join(" | "))
}

fn heights(runs: &[Run]) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for r in runs {
        let Some(h) = hard_set(&r.analyzer) else {
            bad.push(format!("{}{} not closed", r.kind, r.n));
            continue;
        };
        for u in h {
            checked += 1;
            match r.analyzer.height(&u, 3) {
                Ok(HeightStatus::InfiniteUpTo(3)) => {}
                other => bad.push(format!("{}{} {u}: {other:?}", r.kind, r.n)),
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "{checked} hard letters checked; {}",
            if bad.is_empty() {
                "all infinite up to 3".to_string()
            } else {
                bad.join(", ")
            }
        ),
    )
}

fn primitives() -> Outcome {
    let mut bad = Vec::new();
    for kind in [CartanKind::A, CartanKind::B] {
        let pres = Presentation::preset(kind, 2).expect("preset");
        let an = closed(pres.clone());
        for c in constitutions_up_to(&pres.degrees, 4) {
            if c.total() < 2 {
                continue;
            }
            match an.skew_primitive_space(&c) {
                Ok(r) if r.dimension == 0 => {}
                Ok(r) => bad.push(format!("{kind}2 {:?} dimension {}", c.counts(), r.dimension)),
                Err(e) => bad.push(format!("{kind}2 {:?}: {e}", c.counts())),
            }
        }
    }
    let pres = Presentation::preset(CartanKind::A, 2).expect("preset");
    let at: BTreeMap<String, BigRational> = [("q".to_string(), BigRational::from_integer(1.into()))].into();
    let colour = closed(pres.specialize(&at).expect("specialize"));
    let c11 = qpbw::words::Constitution::new(vec![1, 1]);
    let dim = colour.skew_primitive_space(&c11).map(|r| r.dimension);
    if dim.as_ref().ok() != Some(&1) {
        bad.push(format!("A2 colour point (1,1): {dim:?}"));
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            "A2, B2 generic: 0 in total degree 2..4; A2 at q=1, (1,1): 1".to_string()
        } else {
            bad.join(", ")
        },
    )
}

/// `[x_i, [x_i, ... [x_i, x_j]]]` with `m` copies of `x_i`.
fn adjoint_power(p: &Bicharacter, i: usize, j: usize, m: u32) -> NcPoly {
    let xi = NcPoly::letter(i as u8);
    let mut f = NcPoly::letter(j as u8);
    for _ in 0..m {
        f = skew_commutator(p, &xi, &f).expect("homogeneous");
    }
    f
}

fn quantification() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let cartans = [
        CartanData::new(CartanKind::A, 3).unwrap(),
        CartanData::new(CartanKind::B, 3).unwrap(),
        CartanData::new(CartanKind::C, 3).unwrap(),
        CartanData::new(CartanKind::D, 4).unwrap(),
    ];
    let (mut mismatches, mut yes, mut no) = (0, 0, 0);
    for point in 0..20 {
        let a = &cartans[point % cartans.len()];
        let n = a.n;
        let mut entries = vec![vec![Scalar::one(); n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = Scalar::rational(random_rational(&mut rng, 6));
        }
        for i in 0..n {
            for j in i + 1..n {
                let pij = Scalar::rational(random_rational(&mut rng, 6));
                // Satisfy the constraint for (i,j), for (j,i), or for neither.
                let pji = match rng.gen_range(0..3) {
                    0 => Scalar::rational(random_rational(&mut rng, 6)),
                    1 => &entries[i][i].powi(a.a(i + 1, j + 1) as i64) * &pij.inv().unwrap(),
                    _ => &entries[j][j].powi(a.a(j + 1, i + 1) as i64) * &pij.inv().unwrap(),
                };
                entries[i][j] = pij;
                entries[j][i] = pji;
            }
        }
        let p = Bicharacter::new(ParamSpace::new(Vec::<String>::new()).unwrap(), entries).unwrap();
        for i in 1..=n {
            for j in 1..=n {
                if i == j {
                    continue;
                }
                let aij = a.a(i, j);
                let f = adjoint_power(&p, i, j, (1 - aij) as u32);
                let got = is_skew_primitive_poly(&p, &f).unwrap();
                let want = (p.entry(i, j) * p.entry(j, i)) == p.entry(i, i).powi(aij as i64);
                if want {
                    yes += 1;
                } else {
                    no += 1;
                }
                if got != want {
                    mismatches += 1;
                }
            }
        }
    }
    outcome(
        mismatches == 0 && yes > 0 && no > 0,
        format!(
            "20 points, {} pairs ({yes} constrained, {no} not), {mismatches} mismatches",
            yes + no
        ),
    )
}

fn fuzz() -> Outcome {
    let s = fuzz_identities(3, 200, 42, true);
    let parts: Vec<String> = s
        .tallies
        .iter()
        .map(|t| format!("{} {}/{}", t.identity.name(), t.trials - t.failures, t.trials))
        .collect();
    outcome(s.failures() == 0 && s.tallies.len() == 5, parts.join(", "))
}

fn three_way() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for kind in [CartanKind::A, CartanKind::B, CartanKind::C] {
        let pres = Presentation::preset(kind, 2).expect("preset");
        let an = closed(pres.clone());
        let (Ok(dims), Ok(crystal)) = (an.pbw_dimensions(6), an.crystal_basis(6)) else {
            bad.push(format!("{kind}2 bound too low"));
            continue;
        };
        for c in constitutions_up_to(&pres.degrees, 6) {
            count += 1;
            let oracle = diamond_dimension(&pres.relations, &c) as u64;
            let pbw = dims.get(&c).copied().unwrap_or(0);
            let cr = crystal.get(&c).map_or(0, |v| v.len() as u64);
            if pbw != oracle || cr != oracle {
                bad.push(format!(
                    "{kind}2 {:?}: pbw {pbw} crystal {cr} oracle {oracle}",
                    c.counts()
                ));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{count} constitutions agree")
        } else {
            bad.join(", ")
        },
    )
}

fn independence(runs: &[Run]) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    let mut runs_done = 0;
    for r in runs {
        let Some(reference) = hard_set(&r.analyzer) else {
            bad.push(format!("{}{} not closed", r.kind, r.n));
            continue;
        };
        let pres = &r.analyzer.presentation;
        let n = pres.n;
        for k in 0..15 {
            let variant = if k < 10 {
                let at: BTreeMap<String, BigRational> = pres
                    .params()
                    .names()
                    .iter()
                    .map(|name| (name.clone(), random_rational(&mut rng, 7)))
                    .collect();
                pres.specialize(&at)
            } else {
                let mut z = BTreeMap::new();
                for i in 1..=n {
                    for j in i + 1..=n {
                        z.insert((i, j), Scalar::rational(random_rational(&mut rng, 7)));
                    }
                }
                pres.z_deform(&z)
            };
            runs_done += 1;
            let got = variant.map(closed).ok().and_then(|an| hard_set(&an));
            if got.as_ref() != Some(&reference) {
                bad.push(format!("{}{} variant {k}", r.kind, r.n));
            }
        }
    }
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!(
                "{} presets x 15 variants ({runs_done} runs) identical",
                runs.len()
            )
        } else {
            bad.join(", ")
        },
    )
}

fn one_relation() -> Outcome {
    let an = closed(Presentation::one_relation());
    let lead: Vec<String> = an.system.leading_words().iter().map(|w| w.to_string()).collect();
    let want: BTreeSet<Word> = all_words_up_to(2, 5)
        .into_iter()
        .filter(|w| brute_standard(w) && !contains(w, &[1, 1, 1, 2]))
        .map(|w| Word::from_letters(&w))
        .collect();
    let got = an.hard_super_letters(5).map(|r| r.words());
    match got {
        Ok(g) => {
            let d = diff("hard", &g, &want);
            outcome(
                d.is_none() && lead == ["x1x1x1x2"],
                d.unwrap_or(format!(
                    "{} hard letters up to degree 5; leading words {lead:?}",
                    g.len()
                )),
            )
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() {
    let mut runs = Vec::new();
    let min = Duration::from_secs(60);
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    let started = Instant::now();
    results.push((1, "type A", classical(&mut runs, CartanKind::A, &[2, 3, 4], min)));
    results.push((2, "type B", classical(&mut runs, CartanKind::B, &[2, 3], 5 * min)));
    results.push((3, "type C", classical(&mut runs, CartanKind::C, &[2, 3], 5 * min)));
    results.push((4, "type D", classical(&mut runs, CartanKind::D, &[4], 15 * min)));
    results.push((5, "heights", heights(&runs)));
    results.push((6, "skew-primitive spaces", primitives()));
    results.push((7, "quantification", quantification()));
    results.push((8, "identity fuzz", fuzz()));
    results.push((9, "three-way dimensions", three_way()));
    results.push((10, "parameter independence", independence(&runs)));
    results.push((11, "one relation", one_relation()));
    let mut failed = 0;
    for (k, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        if !o.pass {
            failed += 1;
        }
        println!("{tag} criterion {k} ({name}): {}", o.detail);
    }
    println!(
        "acceptance: {}/{} passed in {:.1}s",
        results.len() - failed,
        results.len(),
        started.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
