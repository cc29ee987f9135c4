use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use super::{Composition, Provenance, Reducer, RewriteError, RewriteSystem};
use crate::algebra::NcPoly;
use crate::words::{Constitution, Word};

/// Homogeneous completion, one weighted degree at a time.
///
/// A composition of two rules has degree strictly above both, so when degree
/// `d` is processed every rule of lower degree is final and every rule found
/// at degree `d` only spawns compositions of higher degree. The per-word
/// normal-form cache therefore stays valid for all words of lower degree.
pub(super) fn run(
    input: RewriteSystem,
    max_degree: u64,
    bound: Option<Constitution>,
) -> Result<RewriteSystem, RewriteError> {
    let n = input.n();
    let within = |c: &Constitution| bound.as_ref().is_none_or(|b| c.le(b));

    let mut pending: BTreeMap<u64, Vec<(NcPoly, Provenance)>> = BTreeMap::new();
    for r in input.rules() {
        let d = input.word_degree(&r.leading);
        pending
            .entry(d)
            .or_default()
            .push((r.polynomial(), r.provenance.clone()));
    }

    let mut sys = RewriteSystem::empty(n, input.degrees().to_vec());
    let mut cache: HashMap<Word, Rc<NcPoly>> = HashMap::new();

    for d in 1..=max_degree {
        let mut items: Vec<(NcPoly, Provenance)> = pending.remove(&d).unwrap_or_default();
        items.retain(|(f, _)| f.constitution(n).ok().flatten().is_some_and(|c| within(&c)));
        for c in compositions_of_degree(&sys, d) {
            if within(&c.word.constitution(n)) {
                items.push((
                    c.poly,
                    Provenance::Composition {
                        left: c.left,
                        right: c.right,
                        overlap: c.overlap,
                    },
                ));
            }
        }
        for (f, prov) in items {
            let mut r = Reducer::with_cache(&sys, std::mem::take(&mut cache));
            let red = r.reduce(&f);
            cache = r.into_cache();
            if red.is_zero() {
                continue;
            }
            let (lead, _) = red
                .leading(sys.degrees())
                .ok_or_else(|| RewriteError::Internal("empty remainder".into()))?;
            let lead = lead.clone();
            if sys.word_degree(&lead) != d {
                return Err(RewriteError::Internal(format!(
                    "remainder of degree {} while processing degree {}",
                    sys.word_degree(&lead),
                    d
                )));
            }
            sys.add_reduced(red, prov);
            let c = lead.constitution(n);
            cache.retain(|w, _| !c.le(&w.constitution(n)));
        }
    }

    let above = sys
        .compositions()
        .iter()
        .any(|c| sys.word_degree(&c.word) > max_degree);
    sys.meta.verified_up_to = Some(max_degree);
    sys.meta.globally_closed = bound.is_none() && !above && pending.is_empty();
    sys.meta.constitution_bound = bound;
    Ok(sys)
}

fn compositions_of_degree(sys: &RewriteSystem, d: u64) -> Vec<Composition> {
    let mut out = Vec::new();
    let rules = sys.rules();
    for k in 0..rules.len() {
        for j in 0..rules.len() {
            let (a, b) = (&rules[k].leading, &rules[j].leading);
            let (da, db) = (sys.word_degree(a), sys.word_degree(b));
            if da >= d || db >= d {
                continue;
            }
            for o in RewriteSystem::overlaps(a, b) {
                let word_deg = da + db - sys.word_degree(&a.slice(a.len() - o, a.len()));
                if word_deg == d {
                    out.push(sys.composition_of(k, j, o));
                }
            }
        }
    }
    out.sort_by(|x, y| {
        x.word
            .cmp(&y.word)
            .then_with(|| (x.left, x.right, x.overlap).cmp(&(y.left, y.right, y.overlap)))
    });
    out
}
