//! Gröbner–Shirshov rewriting: reduction, compositions, completion and normal words.

mod cache;
mod serial;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::NcPoly;
use crate::scalar::Scalar;
use crate::words::{compare_hall, Constitution, Word};

pub use cache::CompletionCache;
pub use serial::SerialError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("relation is not constitution-homogeneous")]
    NonHomogeneous,
    #[error("rule {leading} has a tail word {word} that is not Hall-less")]
    TailNotLess { leading: Word, word: Word },
    #[error("rule {leading} contains leading word {inner}")]
    NotInterreduced { leading: Word, inner: Word },
    #[error("relation of degree {degree} exceeds the completion bound {bound}")]
    RelationAboveBound { degree: u64, bound: u64 },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Where a rule came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    /// The i-th input relation.
    Relation(usize),
    /// A composition of rules `left` and `right` overlapping in `overlap` letters.
    Composition {
        left: usize,
        right: usize,
        overlap: usize,
    },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Relation(i) => write!(f, "relation {}", i),
            Provenance::Composition { left, right, overlap } => {
                write!(f, "composition {}/{} overlap {}", left, right, overlap)
            }
        }
    }
}

/// `leading = tail`, every tail word Hall-less than the leading word and of the same constitution.
#[derive(Debug, Clone, PartialEq)]
pub struct RewriteRule {
    pub id: usize,
    pub leading: Word,
    pub tail: NcPoly,
    pub provenance: Provenance,
}

impl RewriteRule {
    /// The relation `leading - tail` as a polynomial.
    pub fn polynomial(&self) -> NcPoly {
        let mut f = self.tail.neg();
        f.add_term(self.leading.clone(), Scalar::one());
        f
    }
}

/// A composition (overlap S-polynomial) with its provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct Composition {
    pub word: Word,
    pub left: usize,
    pub right: usize,
    pub overlap: usize,
    pub poly: NcPoly,
}

/// How far a completed system is known to be closed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompletionMeta {
    /// Every composition of weighted degree at most this reduces to zero.
    pub verified_up_to: Option<u64>,
    /// Every composition of every degree reduces to zero.
    pub globally_closed: bool,
    /// If set, only compositions of constitution at most this were processed.
    pub constitution_bound: Option<Constitution>,
}

/// An interreduced homogeneous rewriting system.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    n: usize,
    degrees: Vec<u32>,
    rules: Vec<RewriteRule>,
    by_leading: HashMap<Word, usize>,
    lengths: BTreeSet<usize>,
    next_id: usize,
    pub meta: CompletionMeta,
}

impl PartialEq for RewriteSystem {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.degrees == other.degrees
            && self.rules == other.rules
            && self.meta == other.meta
    }
}

impl RewriteSystem {
    pub fn empty(n: usize, degrees: Vec<u32>) -> Self {
        assert_eq!(degrees.len(), n);
        RewriteSystem {
            n,
            degrees,
            rules: Vec::new(),
            by_leading: HashMap::new(),
            lengths: BTreeSet::new(),
            next_id: 0,
            meta: CompletionMeta::default(),
        }
    }

    /// Builds a system from explicit `(leading, tail)` rules, validating all invariants.
    pub fn from_rules(n: usize, degrees: Vec<u32>, rules: Vec<(Word, NcPoly)>) -> Result<Self, RewriteError> {
        let mut s = RewriteSystem::empty(n, degrees);
        for (i, (l, t)) in rules.into_iter().enumerate() {
            s.validate_rule(&l, &t)?;
            s.insert(l, t, Provenance::Relation(i));
        }
        s.check_interreduced()?;
        Ok(s)
    }

    /// Turns homogeneous relations into an interreduced system (no compositions yet).
    pub fn from_relations(n: usize, degrees: Vec<u32>, relations: &[NcPoly]) -> Result<Self, RewriteError> {
        let mut s = RewriteSystem::empty(n, degrees);
        let mut order: Vec<usize> = (0..relations.len()).collect();
        for f in relations {
            if f.constitution(n).is_err() {
                return Err(RewriteError::NonHomogeneous);
            }
        }
        order.sort_by_key(|&i| s.poly_degree(&relations[i]));
        for i in order {
            let r = s.reduce(&relations[i]);
            if !r.is_zero() {
                s.add_reduced(r, Provenance::Relation(i));
            }
        }
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn rule(&self, id: usize) -> Option<&RewriteRule> {
        self.rules.iter().find(|r| r.id == id)
    }

    /// Leading words, sorted by Hall order.
    pub fn leading_words(&self) -> Vec<Word> {
        let mut v: Vec<Word> = self.rules.iter().map(|r| r.leading.clone()).collect();
        v.sort_by(|a, b| compare_hall(a, b, &self.degrees));
        v
    }

    pub fn word_degree(&self, w: &Word) -> u64 {
        w.weighted_degree(&self.degrees)
    }

    fn poly_degree(&self, f: &NcPoly) -> u64 {
        f.words().map(|w| self.word_degree(w)).max().unwrap_or(0)
    }

    /// Largest weighted degree of a leading word.
    pub fn max_rule_degree(&self) -> u64 {
        self.rules
            .iter()
            .map(|r| self.word_degree(&r.leading))
            .max()
            .unwrap_or(0)
    }

    fn validate_rule(&self, leading: &Word, tail: &NcPoly) -> Result<(), RewriteError> {
        let c = leading.constitution(self.n);
        for w in tail.words() {
            if w.constitution(self.n) != c {
                return Err(RewriteError::NonHomogeneous);
            }
            if compare_hall(w, leading, &self.degrees) != std::cmp::Ordering::Less {
                return Err(RewriteError::TailNotLess {
                    leading: leading.clone(),
                    word: w.clone(),
                });
            }
        }
        Ok(())
    }

    fn check_interreduced(&self) -> Result<(), RewriteError> {
        for r in &self.rules {
            for s in &self.rules {
                if r.id != s.id && r.leading.contains(&s.leading) {
                    return Err(RewriteError::NotInterreduced {
                        leading: r.leading.clone(),
                        inner: s.leading.clone(),
                    });
                }
            }
        }
        Ok(())
    }

    fn insert(&mut self, leading: Word, tail: NcPoly, provenance: Provenance) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        self.lengths.insert(leading.len());
        self.by_leading.insert(leading.clone(), self.rules.len());
        self.rules.push(RewriteRule {
            id,
            leading,
            tail,
            provenance,
        });
        id
    }

    /// Adds a reduced nonzero polynomial as a monic rule, then re-reduces the
    /// tails of same-degree rules so the system stays fully interreduced.
    fn add_reduced(&mut self, r: NcPoly, provenance: Provenance) -> usize {
        let (lead, c) = r
            .leading(&self.degrees)
            .map(|(w, c)| (w.clone(), c.clone()))
            .expect("nonzero");
        let inv = c.inv().expect("nonzero leading coefficient");
        let mut tail = r.scale(&-inv);
        tail.add_term(lead.clone(), Scalar::one());
        debug_assert!(tail.coefficient(&lead).is_zero());
        let id = self.insert(lead.clone(), tail, provenance);
        // Only rules whose tails can mention `lead` need touching: same
        // constitution and Hall-greater leading word.
        let c = lead.constitution(self.n);
        let affected: Vec<usize> = (0..self.rules.len())
            .filter(|&i| {
                let r = &self.rules[i];
                r.id != id && r.leading.constitution(self.n) == c && r.tail.words().any(|w| w.contains(&lead))
            })
            .collect();
        for i in affected {
            let t = self.rules[i].tail.clone();
            self.rules[i].tail = self.reduce(&t);
        }
        id
    }

    /// First (leftmost, then shortest) occurrence of a leading word in `w`.
    pub fn find_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let l = w.letters();
        for start in 0..l.len() {
            for &len in &self.lengths {
                if start + len > l.len() {
                    break;
                }
                let sub = Word::from_letters(&l[start..start + len]);
                if let Some(&i) = self.by_leading.get(&sub) {
                    return Some((start, i));
                }
            }
        }
        None
    }

    /// All redexes `(start, rule index)` in `w`.
    pub fn redexes(&self, w: &Word) -> Vec<(usize, usize)> {
        let l = w.letters();
        let mut out = Vec::new();
        for start in 0..l.len() {
            for &len in &self.lengths {
                if start + len > l.len() {
                    break;
                }
                let sub = Word::from_letters(&l[start..start + len]);
                if let Some(&i) = self.by_leading.get(&sub) {
                    out.push((start, i));
                }
            }
        }
        out
    }

    pub(crate) fn lengths_iter(&self) -> impl Iterator<Item = &usize> {
        self.lengths.iter()
    }

    pub(crate) fn rule_index(&self, letters: &[u8]) -> Option<usize> {
        self.by_leading.get(&Word::from_letters(letters)).copied()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_redex(w).is_none()
    }

    fn rewrite_at(&self, w: &Word, start: usize, rule: usize) -> NcPoly {
        let r = &self.rules[rule];
        let l = w.letters();
        let a = &l[..start];
        let b = &l[start + r.leading.len()..];
        let mut out = NcPoly::zero();
        for (t, c) in r.tail.iter() {
            out.add_term(t.wrap(a, b), c.clone());
        }
        out
    }

    /// Normal form of `f`: repeatedly rewrites the Hall-greatest reducible word.
    ///
    /// Every rewrite replaces a word by Hall-smaller ones, and each word is
    /// popped at most once, so this terminates in at most as many steps as
    /// there are words below the leading word of `f`.
    pub fn reduce(&self, f: &NcPoly) -> NcPoly {
        let mut work: BTreeMap<(u64, Word), Scalar> = BTreeMap::new();
        for (w, c) in f.iter() {
            work.insert((self.word_degree(w), w.clone()), c.clone());
        }
        let mut out = NcPoly::zero();
        while let Some(((_, w), c)) = work.pop_last() {
            match self.find_redex(&w) {
                None => out.add_term(w, c),
                Some((start, rule)) => {
                    for (v, k) in self.rewrite_at(&w, start, rule).iter() {
                        let key = (self.word_degree(v), v.clone());
                        let val = &c * k;
                        match work.get_mut(&key) {
                            Some(e) => {
                                *e = &*e + &val;
                                if e.is_zero() {
                                    work.remove(&key);
                                }
                            }
                            None => {
                                work.insert(key, val);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduction that picks a random reducible word and a random redex in it
    /// at every step. For a closed system the result equals [`reduce`](Self::reduce).
    pub fn reduce_random<R: rand::Rng>(&self, f: &NcPoly, rng: &mut R) -> NcPoly {
        let mut work: BTreeMap<Word, Scalar> = f.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        let mut out = NcPoly::zero();
        while !work.is_empty() {
            let pos = rng.gen_range(0..work.len());
            let w = work.keys().nth(pos).cloned().expect("in range");
            let c = work.remove(&w).expect("present");
            let red = self.redexes(&w);
            if red.is_empty() {
                out.add_term(w, c);
                continue;
            }
            let (start, rule) = red[rng.gen_range(0..red.len())];
            for (v, k) in self.rewrite_at(&w, start, rule).iter() {
                let val = &c * k;
                let e = work.entry(v.clone()).or_insert_with(Scalar::zero);
                *e = &*e + &val;
                if e.is_zero() {
                    work.remove(v);
                }
            }
        }
        out
    }

    /// Overlaps between two leading words: lengths `o` with `0 < o < min(|a|, |b|)`
    /// and the terminal of `a` equal to the onset of `b`.
    fn overlaps(a: &Word, b: &Word) -> Vec<usize> {
        let (la, lb) = (a.letters(), b.letters());
        let m = la.len().min(lb.len());
        (1..m).filter(|&o| la[la.len() - o..] == lb[..o]).collect()
    }

    fn composition_of(&self, k: usize, j: usize, o: usize) -> Composition {
        let rk = &self.rules[k];
        let rj = &self.rules[j];
        let a = &rk.leading.letters()[..rk.leading.len() - o];
        let b = &rj.leading.letters()[o..];
        let word = rk.leading.concat(&Word::from_letters(b));
        // (w_k - t_k) b - a (w_j - t_j) = a t_j - t_k b
        let mut poly = NcPoly::zero();
        for (t, c) in rj.tail.iter() {
            poly.add_term(t.wrap(a, &[]), c.clone());
        }
        for (t, c) in rk.tail.iter() {
            poly.add_term(t.wrap(&[], b), -c.clone());
        }
        Composition {
            word,
            left: rk.id,
            right: rj.id,
            overlap: o,
            poly,
        }
    }

    /// Every composition over every proper overlap, in deterministic order.
    pub fn compositions(&self) -> Vec<Composition> {
        let mut out = Vec::new();
        for k in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                for o in Self::overlaps(&self.rules[k].leading, &self.rules[j].leading) {
                    out.push(self.composition_of(k, j, o));
                }
            }
        }
        out.sort_by(|x, y| {
            self.word_degree(&x.word)
                .cmp(&self.word_degree(&y.word))
                .then_with(|| x.word.cmp(&y.word))
                .then_with(|| (x.left, x.right, x.overlap).cmp(&(y.left, y.right, y.overlap)))
        });
        out
    }

    /// True iff every composition reduces to zero.
    pub fn is_closed(&self) -> bool {
        let mut r = Reducer::new(self);
        self.compositions().iter().all(|c| r.reduce(&c.poly).is_zero())
    }

    /// Words of constitution `c` containing no leading word.
    pub fn normal_words(&self, c: &Constitution) -> Vec<Word> {
        let mut out: Vec<Word> = Vec::new();
        let mut rem = c.counts().to_vec();
        let mut cur: Vec<u8> = Vec::new();
        self.normal_rec(&mut rem, &mut cur, &mut out);
        out.sort();
        out
    }

    fn normal_rec(&self, rem: &mut Vec<u32>, cur: &mut Vec<u8>, out: &mut Vec<Word>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(Word::from_letters(cur));
            return;
        }
        for i in 0..rem.len() {
            if rem[i] == 0 {
                continue;
            }
            rem[i] -= 1;
            cur.push(i as u8 + 1);
            if !self.has_leading_suffix(cur) {
                self.normal_rec(rem, cur, out);
            }
            cur.pop();
            rem[i] += 1;
        }
    }

    fn has_leading_suffix(&self, w: &[u8]) -> bool {
        self.lengths.iter().any(|&len| {
            len <= w.len()
                && self
                    .by_leading
                    .contains_key(&Word::from_letters(&w[w.len() - len..]))
        })
    }

    /// Degree-by-degree completion up to weighted degree `max_degree`.
    pub fn complete(&self, max_degree: u64) -> Result<RewriteSystem, RewriteError> {
        self.complete_within(max_degree, None)
    }

    /// Completion restricted to compositions of constitution at most `bound`
    /// (componentwise), which suffices for every question inside that box.
    pub fn complete_within(
        &self,
        max_degree: u64,
        bound: Option<&Constitution>,
    ) -> Result<RewriteSystem, RewriteError> {
        let d = self.max_rule_degree();
        if d > max_degree {
            return Err(RewriteError::RelationAboveBound {
                degree: d,
                bound: max_degree,
            });
        }
        let s = self.clone();
        let bound = bound.cloned();
        // Deep rewrite chains recurse; give them room.
        std::thread::scope(|scope| {
            std::thread::Builder::new()
                .stack_size(1 << 30)
                .spawn_scoped(scope, move || completion::run(s, max_degree, bound))
                .expect("spawn completion thread")
                .join()
                .expect("completion thread panicked")
        })
    }
}

mod completion;
mod reducer;

pub use reducer::Reducer;
