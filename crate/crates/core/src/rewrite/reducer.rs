use std::collections::HashMap;
use std::rc::Rc;

use super::RewriteSystem;
use crate::algebra::NcPoly;
use crate::words::Word;

/// Memoizing normal-form engine over a fixed system.
///
/// `nf(w) = nf(nf(w') · x)` for `w = w'x`, so the only words that ever need a
/// rewrite are a normal word times a letter, where the redex is a suffix.
/// Results are cached per word; the cache is valid as long as the system is
/// unchanged (or, for homogeneous systems, as long as no rule of the word's
/// constitution has been added).
pub struct Reducer<'a> {
    sys: &'a RewriteSystem,
    cache: HashMap<Word, Rc<NcPoly>>,
}

impl<'a> Reducer<'a> {
    pub fn new(sys: &'a RewriteSystem) -> Self {
        Reducer {
            sys,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn with_cache(sys: &'a RewriteSystem, cache: HashMap<Word, Rc<NcPoly>>) -> Self {
        Reducer { sys, cache }
    }

    pub(crate) fn into_cache(self) -> HashMap<Word, Rc<NcPoly>> {
        self.cache
    }

    pub fn system(&self) -> &RewriteSystem {
        self.sys
    }

    pub fn reduce(&mut self, f: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in f.iter() {
            let nf = self.word(w);
            out.add_scaled(&nf, c);
        }
        out
    }

    /// Normal form of a single word.
    pub fn word(&mut self, w: &Word) -> Rc<NcPoly> {
        if let Some(v) = self.cache.get(w) {
            return v.clone();
        }
        let v = Rc::new(self.compute(w));
        self.cache.insert(w.clone(), v.clone());
        v
    }

    fn compute(&mut self, w: &Word) -> NcPoly {
        if w.is_empty() || self.sys.is_empty() {
            return NcPoly::word(w.clone());
        }
        let l = w.letters();
        let (prefix, last) = (&l[..l.len() - 1], l[l.len() - 1]);
        let head = if prefix.is_empty() {
            Rc::new(NcPoly::one())
        } else {
            self.word(&Word::from_letters(prefix))
        };
        let mut out = NcPoly::zero();
        for (u, c) in head.iter() {
            let ux = u.wrap(&[], &[last]);
            let nf = self.normal_times_letter(&ux);
            match nf {
                None => out.add_term(ux, c.clone()),
                Some(p) => out.add_scaled(&p, c),
            }
        }
        out
    }

    /// `None` when `ux` is already normal.
    fn normal_times_letter(&mut self, ux: &Word) -> Option<Rc<NcPoly>> {
        if let Some(v) = self.cache.get(ux) {
            return Some(v.clone());
        }
        let (start, rule) = self.sys.suffix_redex(ux)?;
        let r = &self.sys.rules()[rule];
        let a = &ux.letters()[..start];
        let mut out = NcPoly::zero();
        for (t, c) in r.tail.iter() {
            let at = t.wrap(a, &[]);
            let nf = self.word(&at);
            out.add_scaled(&nf, c);
        }
        let out = Rc::new(out);
        self.cache.insert(ux.clone(), out.clone());
        Some(out)
    }

    pub fn cache_len(&self) -> usize {
        self.cache.len()
    }
}

impl RewriteSystem {
    /// A redex that is a suffix of `w` (at most one exists in an interreduced system
    /// when `w` minus its last letter is normal).
    pub(crate) fn suffix_redex(&self, w: &Word) -> Option<(usize, usize)> {
        let l = w.letters();
        for &len in self.lengths_iter() {
            if len > l.len() {
                break;
            }
            let start = l.len() - len;
            if let Some(i) = self.rule_index(&l[start..]) {
                return Some((start, i));
            }
        }
        None
    }
}
