use std::collections::BTreeMap;

use num_rational::BigRational;

use super::*;
use crate::presentation::CartanKind;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn c(v: &[u32]) -> Constitution {
    Constitution::new(v.to_vec())
}

fn preset(kind: CartanKind, n: usize, d: u64) -> Analyzer {
    Analyzer::complete(Presentation::preset(kind, n).unwrap(), d).unwrap()
}

fn words(ws: &[&str]) -> BTreeSet<Word> {
    ws.iter().map(|s| w(s)).collect()
}

#[test]
fn hard_letters_small_ranks() {
    let a3 = preset(CartanKind::A, 3, 10);
    let r = a3.hard_super_letters(4).unwrap();
    assert_eq!(r.words(), words(&["x1", "x2", "x3", "x1x2", "x2x3", "x1x2x3"]));
    assert!(r.exhaustive);
    let b2 = preset(CartanKind::B, 2, 10);
    assert_eq!(
        b2.hard_super_letters(6).unwrap().words(),
        words(&["x1", "x1x2", "x1x2x2", "x2"])
    );
    let c2 = preset(CartanKind::C, 2, 10);
    assert_eq!(
        c2.hard_super_letters(6).unwrap().words(),
        words(&["x1", "x1x1x2", "x1x2", "x2"])
    );
}

#[test]
fn bound_too_low_is_an_error() {
    let pres = Presentation::preset(CartanKind::A, 3).unwrap();
    let sys = pres.rewrite_system().unwrap().complete(3).unwrap();
    let an = Analyzer::new(pres, sys);
    assert!(!an.system.meta.globally_closed);
    assert!(matches!(
        an.hard_super_letters(6),
        Err(PbwError::BoundTooLow { .. })
    ));
}

#[test]
fn heights() {
    let a2 = preset(CartanKind::A, 2, 8);
    assert_eq!(a2.height(&w("x1x2"), 4).unwrap(), HeightStatus::InfiniteUpTo(4));
    assert_eq!(a2.height(&w("x1"), 1).unwrap(), HeightStatus::InfiniteUpTo(1));
    assert!(matches!(a2.height(&w("x1x1x2"), 3), Err(PbwError::NotHard(_))));
    assert!(matches!(a2.height(&w("x2x1"), 3), Err(PbwError::NotHard(_))));
    let b2 = preset(CartanKind::B, 2, 10);
    assert_eq!(b2.height(&w("x1x2x2"), 3).unwrap(), HeightStatus::InfiniteUpTo(3));
}

#[test]
fn height_agrees_with_normal_form_of_power() {
    let b2 = preset(CartanKind::B, 2, 10);
    let p = &b2.presentation.bicharacter;
    for u in ["x1", "x2", "x1x2", "x1x2x2"] {
        let u = w(u);
        let v = SuperLetters::new(p).value(&u).unwrap();
        for h in 2..=3u32 {
            let nf = b2.system.reduce(&v.pow(h));
            assert!(nf.coefficient(&u.pow(h as usize)).is_one());
        }
    }
}

#[test]
fn dimensions_and_crystal() {
    let a2 = preset(CartanKind::A, 2, 8);
    let dims = a2.pbw_dimensions(6).unwrap();
    assert_eq!(dims[&c(&[1, 1])], 2);
    assert_eq!(dims[&c(&[2, 2])], 3);
    assert_eq!(dims[&c(&[4, 0])], 1);
    let crystal = a2.crystal_basis(6).unwrap();
    assert_eq!(crystal[&c(&[1, 1])], vec![w("x2x1"), w("x1x2")]);
    assert_eq!(crystal[&c(&[1, 0])], vec![w("x1")]);
    for (k, ws) in &crystal {
        assert_eq!(dims[k] as usize, ws.len(), "{k:?}");
    }
}

#[test]
fn quotient_coproduct_examples() {
    let a2 = preset(CartanKind::A, 2, 8);
    let n = 2;
    let p = a2.presentation.bicharacter.clone();
    let d = a2
        .quotient_coproduct(&GPoly::from_ncpoly(n, &NcPoly::letter(1)))
        .unwrap();
    let mut want = TensorPoly::zero();
    let id = GroupElement::identity(n);
    want.add_term(id.clone(), w("x1"), id.clone(), Word::empty(), Scalar::one());
    want.add_term(
        GroupElement::generator(n, 1),
        Word::empty(),
        id.clone(),
        w("x1"),
        Scalar::one(),
    );
    assert_eq!(d, want);

    for rel in &a2.presentation.relations {
        let d = a2.quotient_coproduct(&GPoly::from_ncpoly(n, rel)).unwrap();
        assert!(d.is_zero());
    }

    // [x1,x2]: x1x2 is normal, x2x1 too, so the bracket itself is reduced.
    let b = SuperLetters::new(&p).value(&w("x1x2")).unwrap();
    let d = a2.quotient_coproduct(&GPoly::from_ncpoly(n, &b)).unwrap();
    let g1 = GroupElement::generator(n, 1);
    let g12 = GroupElement::of_constitution(&c(&[1, 1]));
    let mut want = TensorPoly::zero();
    for (u, a) in b.iter() {
        want.add_term(id.clone(), u.clone(), id.clone(), Word::empty(), a.clone());
        want.add_term(g12.clone(), Word::empty(), id.clone(), u.clone(), a.clone());
    }
    let eps = &Scalar::one() - &(p.entry(1, 2) * p.entry(2, 1));
    want.add_term(g1, w("x2"), id.clone(), w("x1"), eps);
    assert_eq!(d, want);
}

#[test]
fn primitive_spaces() {
    let a2 = preset(CartanKind::A, 2, 8);
    assert_eq!(a2.skew_primitive_space(&c(&[1, 1])).unwrap().dimension, 0);
    let r = a2.skew_primitive_space(&c(&[1, 0])).unwrap();
    assert_eq!(r.dimension, 1);
    assert_eq!(r.basis, vec![NcPoly::letter(1)]);

    let pres = Presentation::preset(CartanKind::A, 2).unwrap();
    let mut at = BTreeMap::new();
    at.insert("q".to_string(), BigRational::from_integer(1.into()));
    let colour = Analyzer::complete(pres.specialize(&at).unwrap(), 8).unwrap();
    let r = colour.skew_primitive_space(&c(&[1, 1])).unwrap();
    assert_eq!(r.dimension, 1);
    let p = &colour.presentation.bicharacter;
    let bracket = SuperLetters::new(p).value(&w("x1x2")).unwrap();
    assert_eq!(r.basis, vec![bracket]);
    for f in &r.basis {
        assert!(colour.quotient_defect(&c(&[1, 1]), f).unwrap().is_zero());
    }
}

#[test]
fn certificates() {
    let a3 = preset(CartanKind::A, 3, 10);
    let set: Vec<Word> = ["x1", "x2", "x3", "x1x2", "x2x3", "x1x2x3"]
        .iter()
        .map(|s| w(s))
        .collect();
    let cert = a3.certify_hard_set(&set, 10).unwrap();
    assert!(cert.certified);
    assert_eq!(cert.pairs.len(), 15);

    let b2 = preset(CartanKind::B, 2, 10);
    let set: Vec<Word> = ["x1", "x1x2", "x1x2x2", "x2"].iter().map(|s| w(s)).collect();
    assert!(b2.certify_hard_set(&set, 10).unwrap().certified);

    let a2 = preset(CartanKind::A, 2, 8);
    let cert = a2.certify_hard_set(&[w("x1"), w("x2")], 8).unwrap();
    assert!(!cert.certified);
    let e = cert.pairs.iter().find(|p| p.left == w("x1")).unwrap();
    assert_eq!(e.right, w("x2"));
    assert_eq!(e.verdict, PairVerdict::Missing);
}

#[test]
fn reports_serialize() {
    let a2 = preset(CartanKind::A, 2, 8);
    let r = a2.hard_super_letters_with_heights(4, 3).unwrap();
    let v = r.to_json();
    assert_eq!(v["count"], 3);
    assert_eq!(v["letters"][1]["word"], "x1x2");
    assert_eq!(v["letters"][1]["bracketing"], serde_json::json!(["x1", "x2"]));
    assert_eq!(v["letters"][1]["height"]["infinite_up_to"], 3);
}
