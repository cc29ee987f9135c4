use std::collections::BTreeMap;

use proptest::prelude::*;
use qpbw::algebra::{
    coproduct, coproduct_multiplicative, identity_check, is_skew_primitive_poly, random_homogeneous,
    skew_commutator, super_letter_value, GPoly, Identity, NcPoly,
};
use qpbw::scalar::{Bicharacter, GroupElement, Scalar};
use qpbw::words::{is_standard, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Triple = BTreeMap<(GroupElement, Word, GroupElement, Word, GroupElement, Word), Scalar>;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn push(t: &mut Triple, k: (GroupElement, Word, GroupElement, Word, GroupElement, Word), c: Scalar) {
    let e = t.entry(k).or_insert_with(Scalar::zero);
    *e = &*e + &c;
}

fn clean(mut t: Triple) -> Triple {
    t.retain(|_, c| !c.is_zero());
    t
}

/// `(Δ⊗id)Δ(f)` and `(id⊗Δ)Δ(f)`.
fn both_triples(p: &Bicharacter, f: &GPoly) -> (Triple, Triple) {
    let d = coproduct(p, f);
    let mut left = Triple::new();
    let mut right = Triple::new();
    for ((g, u, h, v), c) in d.terms() {
        let du = coproduct(p, &GPoly::term(g.clone(), u.clone(), Scalar::one()));
        for ((a, x, b, y), k) in du.terms() {
            push(
                &mut left,
                (a.clone(), x.clone(), b.clone(), y.clone(), h.clone(), v.clone()),
                c * k,
            );
        }
        let dv = coproduct(p, &GPoly::term(h.clone(), v.clone(), Scalar::one()));
        for ((a, x, b, y), k) in dv.terms() {
            push(
                &mut right,
                (g.clone(), u.clone(), a.clone(), x.clone(), b.clone(), y.clone()),
                c * k,
            );
        }
    }
    (clean(left), clean(right))
}

fn random_gpoly<R: Rng>(rng: &mut R, n: usize, max_len: u32) -> GPoly {
    let f = random_homogeneous(rng, n, max_len);
    let mut out = GPoly::zero();
    for (word, c) in f.iter() {
        let e: Vec<i32> = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
        out.add_term(GroupElement::from_exponents(&e), word.clone(), c.clone());
    }
    out
}

#[test]
fn commutator_examples() {
    let p = Bicharacter::fully_generic(2);
    let f = skew_commutator(&p, &NcPoly::letter(1), &NcPoly::letter(2)).unwrap();
    let mut expect = NcPoly::word(w("x1x2"));
    expect.add_term(w("x2x1"), -p.entry(1, 2).clone());
    assert_eq!(f, expect);
    // [x1, x1] = (1 - p11) x1x1
    let g = skew_commutator(&p, &NcPoly::letter(1), &NcPoly::letter(1)).unwrap();
    assert_eq!(g, NcPoly::term(w("x1x1"), &Scalar::one() - p.entry(1, 1)));
}

#[test]
fn letters_are_primitive() {
    let p = Bicharacter::fully_generic(3);
    for i in 1..=3 {
        assert!(is_skew_primitive_poly(&p, &NcPoly::letter(i)).unwrap());
    }
    let f = skew_commutator(&p, &NcPoly::letter(1), &NcPoly::letter(2)).unwrap();
    assert!(!is_skew_primitive_poly(&p, &f).unwrap());
    // x1x2 is not primitive at any bicharacter.
    assert!(!is_skew_primitive_poly(&p, &NcPoly::word(w("x1x2"))).unwrap());
}

#[test]
fn commutator_primitive_when_product_is_one() {
    // p12 p21 = 1 makes [x1, x2] primitive.
    let g = Bicharacter::fully_generic(2);
    let p12 = g.entry(1, 2).clone();
    let entries = vec![
        vec![g.entry(1, 1).clone(), p12.clone()],
        vec![p12.inv().unwrap(), g.entry(2, 2).clone()],
    ];
    let p = Bicharacter::new(g.params().clone(), entries).unwrap();
    let f = skew_commutator(&p, &NcPoly::letter(1), &NcPoly::letter(2)).unwrap();
    assert!(is_skew_primitive_poly(&p, &f).unwrap());
}

#[test]
fn coproduct_of_letter_and_commutator() {
    let p = Bicharacter::fully_generic(2);
    let e = GroupElement::identity(2);
    let g1 = GroupElement::generator(2, 1);
    let d = coproduct(&p, &GPoly::term(e.clone(), w("x1"), Scalar::one()));
    let mut terms = d.terms().keys().cloned().collect::<Vec<_>>();
    terms.sort();
    let mut expect = vec![
        (e.clone(), w("x1"), e.clone(), Word::empty()),
        (g1.clone(), Word::empty(), e.clone(), w("x1")),
    ];
    expect.sort();
    assert_eq!(terms, expect);
    // Δ(x1x2) carries p12 on g2 x1 ⊗ x2.
    let g2 = GroupElement::generator(2, 2);
    let d = coproduct(&p, &GPoly::term(e.clone(), w("x1x2"), Scalar::one()));
    assert_eq!(
        d.terms()[&(g2, w("x1"), e.clone(), w("x2"))],
        p.entry(1, 2).clone()
    );
    assert_eq!(d.len(), 4);
}

#[test]
fn super_letter_leads_with_its_word() {
    let p = Bicharacter::fully_generic(3);
    for s in ["x1x2", "x1x1x2", "x1x2x2", "x1x2x3", "x1x2x1x2x2", "x1x3x2"] {
        let u = w(s);
        assert!(is_standard(&u).unwrap());
        let v = super_letter_value(&p, &u).unwrap().value;
        let (lead, c) = v.lex_leading().unwrap();
        assert_eq!(lead, &u, "{s}");
        assert!(c.is_one(), "{s}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn coproduct_is_the_algebra_map(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Bicharacter::fully_generic(2);
        let f = random_gpoly(&mut rng, 2, 3);
        let g = random_gpoly(&mut rng, 2, 3);
        prop_assert_eq!(coproduct(&p, &f), coproduct_multiplicative(&p, &f));
        let lhs = coproduct(&p, &f.mul(&p, &g));
        let rhs = coproduct(&p, &f).mul(&p, &coproduct(&p, &g));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn coproduct_is_coassociative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Bicharacter::fully_generic(3);
        let f = random_gpoly(&mut rng, 3, 4);
        let (l, r) = both_triples(&p, &f);
        prop_assert_eq!(l, r);
    }

    #[test]
    fn bracket_identities_hold(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Bicharacter::fully_generic(3);
        let u = random_homogeneous(&mut rng, 3, 3);
        let v = random_homogeneous(&mut rng, 3, 3);
        let x = random_homogeneous(&mut rng, 3, 3);
        for which in [Identity::Jacobi1, Identity::Jacobi2, Identity::DiffLeft, Identity::DiffRight] {
            prop_assert!(identity_check(&p, which, &u, &v, &x).unwrap(), "{:?}", which);
        }
    }

    #[test]
    fn commutator_is_bilinear(seed in any::<u64>(), k in -4i64..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Bicharacter::fully_generic(2);
        let u = random_homogeneous(&mut rng, 2, 3);
        let v = random_homogeneous(&mut rng, 2, 3);
        let c = Scalar::int(k);
        let a = skew_commutator(&p, &u.scale(&c), &v).unwrap();
        let b = skew_commutator(&p, &u, &v).unwrap().scale(&c);
        prop_assert_eq!(a, b);
    }
}
