//! Hard super letters, heights, PBW and crystal bases, graded dimensions and
//! skew-primitive spaces of a completed presentation.
//!
//! Hardness is decided through normal words: a standard word is hard exactly
//! when no leading word of the completed system occurs in it. Every hard word
//! `w` of length at least two splits as `w = uv` with `u`, `v` standard, and
//! both parts are hard because subwords of normal words are normal. So the
//! hard words up to a degree are the closure of the letters under "standard
//! and normal concatenation", which is how they are enumerated.

mod report;

pub use report::{constitution_json, crystal_json, dimensions_json};

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::algebra::{coproduct, AlgebraError, GPoly, NcPoly, SuperLetter, SuperLetters, TensorPoly};
use crate::linalg;
use crate::presentation::Presentation;
use crate::rewrite::{CompletionCache, Reducer, RewriteError, RewriteSystem};
use crate::scalar::{GroupElement, Scalar};
use crate::words::{compare_hall, is_standard, Constitution, Word, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PbwError {
    #[error(
        "the completed system is verified only up to degree {verified:?}; degree {requested} was requested"
    )]
    BoundTooLow { requested: u64, verified: Option<u64> },
    #[error("{0} is not a hard super letter")]
    NotHard(Word),
    #[error("constitution has {got} entries, expected {expected}")]
    Arity { got: usize, expected: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("completion cache: {0}")]
    Cache(String),
}

/// Height verdict for a hard super letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeightStatus {
    /// No power `2..=bound` is expressible through lesser super words.
    InfiniteUpTo(u32),
    Finite(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardLetter {
    pub letter: SuperLetter,
    pub degree: u64,
    pub height: Option<HeightStatus>,
}

impl HardLetter {
    pub fn word(&self) -> &Word {
        &self.letter.word
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardLetterReport {
    /// Ascending lexicographic order.
    pub letters: Vec<HardLetter>,
    pub max_degree: u64,
    /// The list is provably all hard letters of every degree: the system is
    /// globally closed and no product of two listed letters is standard and normal.
    pub exhaustive: bool,
}

impl HardLetterReport {
    pub fn words(&self) -> BTreeSet<Word> {
        self.letters.iter().map(|h| h.word().clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrimitiveSpaceReport {
    pub constitution: Constitution,
    pub dimension: usize,
    /// Each element is a combination of normal words of the constitution.
    pub basis: Vec<NcPoly>,
}

impl PrimitiveSpaceReport {
    pub fn basis_gpolys(&self) -> Vec<GPoly> {
        let n = self.constitution.n();
        self.basis.iter().map(|f| GPoly::from_ncpoly(n, f)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairVerdict {
    NonStandard,
    NonHard,
    InSet,
    /// Standard and hard but absent from the set.
    Missing,
    /// Beyond the verified degree of a system that is not globally closed.
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PairEntry {
    pub left: Word,
    pub right: Word,
    pub verdict: PairVerdict,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HardSetCertificate {
    pub certified: bool,
    pub missing_generators: Vec<Word>,
    /// Members of the set that are not hard (not standard, or reducible).
    pub not_hard: Vec<Word>,
    pub pairs: Vec<PairEntry>,
}

/// A presentation together with a (completed) rewriting system for it.
#[derive(Debug, Clone)]
pub struct Analyzer {
    pub presentation: Presentation,
    pub system: RewriteSystem,
}

impl Analyzer {
    pub fn new(presentation: Presentation, system: RewriteSystem) -> Self {
        Analyzer { presentation, system }
    }

    /// Completes the presentation's relations up to `max_degree`.
    pub fn complete(presentation: Presentation, max_degree: u64) -> Result<Self, PbwError> {
        let system = presentation.rewrite_system()?.complete(max_degree)?;
        Ok(Analyzer::new(presentation, system))
    }

    /// Like [`Analyzer::complete`], reading and filling `cache` when given.
    pub fn complete_cached(
        presentation: Presentation,
        max_degree: u64,
        cache: Option<&CompletionCache>,
    ) -> Result<Self, PbwError> {
        let Some(cache) = cache else {
            return Analyzer::complete(presentation, max_degree);
        };
        let hash = presentation.hash();
        let params = presentation.params().clone();
        let found = cache
            .load(&hash, max_degree, &params)
            .map_err(|e| PbwError::Cache(e.to_string()))?;
        if let Some(system) = found {
            return Ok(Analyzer::new(presentation, system));
        }
        let an = Analyzer::complete(presentation, max_degree)?;
        cache
            .store(&an.system, &hash, &params)
            .map_err(|e| PbwError::Cache(e.to_string()))?;
        Ok(an)
    }

    /// Completes with growing bounds until the system is globally closed or
    /// the bound reaches `cap`. A closed system with longest rule of degree
    /// `L` has no composition above `2L - 1`, which drives the next bound.
    pub fn complete_until_closed(
        presentation: Presentation,
        cap: u64,
        cache: Option<&CompletionCache>,
    ) -> Result<Self, PbwError> {
        let base = presentation.rewrite_system()?.max_rule_degree().max(1);
        let mut bound = (2 * base).min(cap).max(base);
        loop {
            let an = Analyzer::complete_cached(presentation.clone(), bound, cache)?;
            if an.system.meta.globally_closed || bound >= cap {
                return Ok(an);
            }
            let next = (2 * an.system.max_rule_degree()).saturating_sub(1);
            bound = next.max(bound + 1).min(cap);
        }
    }

    fn n(&self) -> usize {
        self.presentation.n
    }

    fn degrees(&self) -> &[u32] {
        &self.presentation.degrees
    }

    fn degree(&self, w: &Word) -> u64 {
        w.weighted_degree(self.degrees())
    }

    /// Whether normal words of this constitution are certainly a basis.
    pub fn covers(&self, c: &Constitution) -> bool {
        let meta = &self.system.meta;
        if meta.globally_closed {
            return true;
        }
        let d = c.weighted_degree(self.degrees());
        meta.verified_up_to.is_some_and(|v| v >= d)
            && meta.constitution_bound.as_ref().is_none_or(|b| c.le(b))
    }

    fn require(&self, w: &Word) -> Result<(), PbwError> {
        if self.covers(&w.constitution(self.n())) {
            Ok(())
        } else {
            Err(self.too_low(self.degree(w)))
        }
    }

    fn too_low(&self, requested: u64) -> PbwError {
        PbwError::BoundTooLow {
            requested,
            verified: self.system.meta.verified_up_to,
        }
    }

    fn require_degree(&self, d: u64) -> Result<(), PbwError> {
        let meta = &self.system.meta;
        if meta.globally_closed
            || (meta.constitution_bound.is_none() && meta.verified_up_to.is_some_and(|v| v >= d))
        {
            Ok(())
        } else {
            Err(self.too_low(d))
        }
    }

    /// Hard words of weighted degree at most `max_degree`, ascending lexicographically.
    pub fn hard_words(&self, max_degree: u64) -> Result<Vec<Word>, PbwError> {
        self.require_degree(max_degree)?;
        let mut by_degree: BTreeMap<u64, Vec<Word>> = BTreeMap::new();
        for i in 1..=self.n() {
            let x = Word::letter(i as u8);
            let d = self.degree(&x);
            if d <= max_degree && self.system.is_normal(&x) {
                by_degree.entry(d).or_default().push(x);
            }
        }
        let mut seen: BTreeSet<Word> = by_degree.values().flatten().cloned().collect();
        let min = self.degrees().iter().copied().min().unwrap_or(1) as u64;
        for d in 2 * min..=max_degree {
            let mut found = Vec::new();
            for (&du, us) in by_degree.range(..d) {
                let Some(vs) = by_degree.get(&(d - du)) else {
                    continue;
                };
                for u in us {
                    for v in vs {
                        let w = u.concat(v);
                        if !seen.contains(&w) && is_standard(&w)? && self.system.is_normal(&w) {
                            seen.insert(w.clone());
                            found.push(w);
                        }
                    }
                }
            }
            if !found.is_empty() {
                by_degree.entry(d).or_default().extend(found);
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn hard_super_letters(&self, max_degree: u64) -> Result<HardLetterReport, PbwError> {
        let words = self.hard_words(max_degree)?;
        let p = &self.presentation.bicharacter;
        let mut sl = SuperLetters::new(p);
        let mut letters = Vec::with_capacity(words.len());
        for w in &words {
            letters.push(HardLetter {
                letter: sl.get(w)?,
                degree: self.degree(w),
                height: None,
            });
        }
        let exhaustive = self.system.meta.globally_closed
            && words.iter().all(|u| {
                words.iter().all(|v| {
                    let w = u.concat(v);
                    self.degree(&w) <= max_degree
                        || !is_standard(&w).unwrap_or(false)
                        || !self.system.is_normal(&w)
                })
            });
        Ok(HardLetterReport {
            letters,
            max_degree,
            exhaustive,
        })
    }

    /// Hard letters with their heights checked up to `max_power`.
    pub fn hard_super_letters_with_heights(
        &self,
        max_degree: u64,
        max_power: u32,
    ) -> Result<HardLetterReport, PbwError> {
        let mut report = self.hard_super_letters(max_degree)?;
        for h in &mut report.letters {
            h.height = Some(self.height(&h.letter.word, max_power)?);
        }
        Ok(report)
    }

    /// The least `h` in `2..=max_power` for which `[u]^h` is a combination of
    /// lesser super words. The normal form of `[u]^h` keeps `u^h` with
    /// coefficient one when `u^h` is normal (every other word of `[u]^h` is
    /// Hall-less and reductions only lower words), and has no `u^h` term
    /// otherwise, so the test is whether `u^h` contains a leading word.
    pub fn height(&self, u: &Word, max_power: u32) -> Result<HeightStatus, PbwError> {
        self.require(u)?;
        if !is_standard(u)? || !self.system.is_normal(u) {
            return Err(PbwError::NotHard(u.clone()));
        }
        for h in 2..=max_power {
            let w = u.pow(h as usize);
            self.require(&w)?;
            if !self.system.is_normal(&w) {
                return Ok(HeightStatus::Finite(h));
            }
        }
        Ok(HeightStatus::InfiniteUpTo(max_power))
    }

    /// Every constitution of weighted degree `1..=max_degree`.
    pub fn constitutions(&self, max_degree: u64) -> Vec<Constitution> {
        constitutions_up_to(self.degrees(), max_degree)
    }

    /// Number of monotone products of hard letters per constitution. A letter
    /// whose power `u^h` is reducible contributes exponents below `h` only.
    pub fn pbw_dimensions(&self, max_degree: u64) -> Result<BTreeMap<Constitution, u64>, PbwError> {
        let hard = self.hard_words(max_degree)?;
        let n = self.n();
        let cs = self.constitutions(max_degree);
        let index: HashMap<&Constitution, usize> = cs.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut dims = vec![0u64; cs.len()];
        let zero = Constitution::zero(n);
        // dims of the empty product live outside `cs`; treat it as an implicit 1.
        for u in &hard {
            let cu = u.constitution(n);
            let du = self.degree(u);
            let mut max_exp = (max_degree / du) as usize;
            for h in 2..=max_exp {
                if !self.system.is_normal(&u.pow(h)) {
                    max_exp = h - 1;
                    break;
                }
            }
            let old = dims.clone();
            for (i, c) in cs.iter().enumerate() {
                for k in 1..=max_exp {
                    let Some(rest) = c.checked_sub(&cu.scale(k as u32)) else {
                        break;
                    };
                    if rest == zero {
                        dims[i] += 1;
                    } else if let Some(&j) = index.get(&rest) {
                        dims[i] += old[j];
                    }
                }
            }
        }
        Ok(cs.into_iter().zip(dims).collect())
    }

    /// Normal words grouped by constitution.
    pub fn crystal_basis(&self, max_degree: u64) -> Result<BTreeMap<Constitution, Vec<Word>>, PbwError> {
        self.require_degree(max_degree)?;
        Ok(self
            .constitutions(max_degree)
            .into_iter()
            .map(|c| {
                let ws = self.system.normal_words(&c);
                (c, ws)
            })
            .collect())
    }

    /// Normal words of one constitution.
    pub fn crystal_component(&self, c: &Constitution) -> Result<Vec<Word>, PbwError> {
        self.check_arity(c)?;
        if !self.covers(c) {
            return Err(self.too_low(c.weighted_degree(self.degrees())));
        }
        Ok(self.system.normal_words(c))
    }

    fn check_arity(&self, c: &Constitution) -> Result<(), PbwError> {
        if c.n() != self.n() {
            return Err(PbwError::Arity {
                got: c.n(),
                expected: self.n(),
            });
        }
        Ok(())
    }

    /// `Δ(f)` in the free algebra with both legs reduced to normal form.
    pub fn quotient_coproduct(&self, f: &GPoly) -> Result<TensorPoly, PbwError> {
        for (_, w) in f.terms().keys() {
            self.require(w)?;
        }
        let delta = coproduct(&self.presentation.bicharacter, f);
        Ok(self.reduce_tensor(&delta))
    }

    fn reduce_tensor(&self, t: &TensorPoly) -> TensorPoly {
        let mut r = Reducer::new(&self.system);
        let mut out = TensorPoly::zero();
        for ((g, u, h, v), c) in t.terms() {
            let fu = r.word(u);
            let fv = r.word(v);
            for (a, ca) in fu.iter() {
                let cca = c * ca;
                for (b, cb) in fv.iter() {
                    out.add_term(g.clone(), a.clone(), h.clone(), b.clone(), &cca * cb);
                }
            }
        }
        out
    }

    /// `Δ(f) - f⊗1 - g_c⊗f` computed in the quotient, for `f` of constitution `c`.
    pub fn quotient_defect(&self, c: &Constitution, f: &NcPoly) -> Result<TensorPoly, PbwError> {
        let n = self.n();
        let gf = GPoly::from_ncpoly(n, f);
        let delta = self.quotient_coproduct(&gf)?;
        let nf = self.system.reduce(f);
        let id = GroupElement::identity(n);
        let gc = GroupElement::of_constitution(c);
        let mut expected = TensorPoly::zero();
        for (w, a) in nf.iter() {
            expected.add_term(id.clone(), w.clone(), id.clone(), Word::empty(), a.clone());
            expected.add_term(gc.clone(), Word::empty(), id.clone(), w.clone(), a.clone());
        }
        Ok(delta.sub(&expected))
    }

    /// Skew-primitive elements of constitution `c`: the kernel of the defect
    /// map on the span of normal words.
    pub fn skew_primitive_space(&self, c: &Constitution) -> Result<PrimitiveSpaceReport, PbwError> {
        let mut words = self.crystal_component(c)?;
        words.sort_by(|a, b| compare_hall(b, a, self.degrees()));
        let mut rows: BTreeMap<(GroupElement, Word, GroupElement, Word), Vec<Scalar>> = BTreeMap::new();
        let ncols = words.len();
        for (j, w) in words.iter().enumerate() {
            let d = self.quotient_defect(c, &NcPoly::word(w.clone()))?;
            for (k, v) in d.terms() {
                rows.entry(k.clone())
                    .or_insert_with(|| vec![Scalar::zero(); ncols])[j] = v.clone();
            }
        }
        let kernel = linalg::kernel(rows.into_values().collect(), ncols);
        let basis: Vec<NcPoly> = kernel
            .into_iter()
            .map(|v| {
                let f = NcPoly::from_terms(words.iter().cloned().zip(v));
                let lc = f.leading(self.degrees()).expect("kernel vectors are nonzero").1;
                f.scale(&lc.inv().expect("nonzero"))
            })
            .collect();
        Ok(PrimitiveSpaceReport {
            constitution: c.clone(),
            dimension: basis.len(),
            basis,
        })
    }

    /// The closure test: for every pair `u > v` in `set`, the concatenation is
    /// non-standard, reducible, or again in `set`.
    pub fn certify_hard_set(&self, set: &[Word], max_degree: u64) -> Result<HardSetCertificate, PbwError> {
        let members: BTreeSet<Word> = set.iter().cloned().collect();
        let decided = |w: &Word| {
            let d = self.degree(w);
            self.system.meta.globally_closed || (d <= max_degree && self.covers(&w.constitution(self.n())))
        };
        let missing_generators: Vec<Word> = (1..=self.n())
            .map(|i| Word::letter(i as u8))
            .filter(|x| !members.contains(x))
            .collect();
        let mut not_hard = Vec::new();
        for w in &members {
            w.check_range(self.n())?;
            if w.is_empty() || !is_standard(w)? || (decided(w) && !self.system.is_normal(w)) {
                not_hard.push(w.clone());
            }
        }
        let mut pairs = Vec::new();
        for u in &members {
            for v in members.range(..u.clone()) {
                let w = u.concat(v);
                let verdict = if w.is_empty() || !is_standard(&w)? {
                    PairVerdict::NonStandard
                } else if !decided(&w) {
                    PairVerdict::Undecided
                } else if !self.system.is_normal(&w) {
                    PairVerdict::NonHard
                } else if members.contains(&w) {
                    PairVerdict::InSet
                } else {
                    PairVerdict::Missing
                };
                pairs.push(PairEntry {
                    left: u.clone(),
                    right: v.clone(),
                    verdict,
                });
            }
        }
        let certified = missing_generators.is_empty()
            && not_hard.is_empty()
            && pairs
                .iter()
                .all(|p| !matches!(p.verdict, PairVerdict::Missing | PairVerdict::Undecided));
        Ok(HardSetCertificate {
            certified,
            missing_generators,
            not_hard,
            pairs,
        })
    }
}

/// Every constitution of weighted degree `1..=max_degree` for these generator
/// degrees, ascending by degree and then lexicographically descending.
pub fn constitutions_up_to(degs: &[u32], max_degree: u64) -> Vec<Constitution> {
    fn rec(i: usize, left: u64, degs: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Constitution>) {
        if i == degs.len() {
            out.push(Constitution::new(cur.clone()));
            return;
        }
        let mut k = 0u32;
        loop {
            let used = k as u64 * degs[i] as u64;
            if used > left {
                break;
            }
            cur[i] = k;
            rec(i + 1, left - used, degs, cur, out);
            k += 1;
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; degs.len()];
    rec(0, max_degree, degs, &mut cur, &mut out);
    out.retain(|c| !c.is_zero());
    out.sort_by(|a, b| {
        a.weighted_degree(degs)
            .cmp(&b.weighted_degree(degs))
            .then_with(|| b.cmp(a))
    });
    out
}

#[cfg(test)]
mod tests;
