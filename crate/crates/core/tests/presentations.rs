mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;

use common::gaussian_binomial;
use qpbw::algebra::NcPoly;
use qpbw::presentation::{
    existence_check, expected_lists, generic_parameters, serre_relations, CartanData, CartanKind,
    Presentation, PresentationError,
};
use qpbw::scalar::{Bicharacter, Scalar};
use qpbw::words::Word;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const PRESETS: [(CartanKind, usize, &str); 8] = [
    (CartanKind::A, 2, "a2"),
    (CartanKind::A, 3, "a3"),
    (CartanKind::A, 4, "a4"),
    (CartanKind::B, 2, "b2"),
    (CartanKind::B, 3, "b3"),
    (CartanKind::C, 2, "c2"),
    (CartanKind::C, 3, "c3"),
    (CartanKind::D, 4, "d4"),
];

fn word(letters: &[usize]) -> Word {
    Word::from_letters(&letters.iter().map(|&l| l as u8).collect::<Vec<_>>())
}

/// The closed form `sum_k (-1)^k p^k p_ii^(k(k-1)/2) [m k]_{p_ii}` of an
/// m-fold skew adjoint action, written out word by word.
fn serre_closed_form(p: &Bicharacter, a: &CartanData, i: usize, j: usize) -> NcPoly {
    if a.a(i, j) == 0 {
        let mut f = NcPoly::word(word(&[i, j]));
        f.add_term(word(&[j, i]), -p.entry(i, j).clone());
        return f;
    }
    let m = (1 - a.a(i, j)) as u32;
    let pii = p.entry(i, i);
    // Left attachment multiplies by p(x_i, x_j) each time, right attachment by p(x_j, x_i).
    let base = if i < j { p.entry(i, j) } else { p.entry(j, i) };
    let mut f = NcPoly::zero();
    for k in 0..=m {
        let sign = if k % 2 == 0 {
            Scalar::one()
        } else {
            Scalar::int(-1)
        };
        let coeff = &(&sign * &base.powi(k as i64))
            * &(&pii.powi((k * k.saturating_sub(1) / 2) as i64) * &gaussian_binomial(pii, m, k));
        let mut letters = Vec::new();
        if i < j {
            letters.extend(std::iter::repeat_n(i, (m - k) as usize));
            letters.push(j);
            letters.extend(std::iter::repeat_n(i, k as usize));
        } else {
            letters.extend(std::iter::repeat_n(i, k as usize));
            letters.push(j);
            letters.extend(std::iter::repeat_n(i, (m - k) as usize));
        }
        f.add_term(word(&letters), coeff);
    }
    f
}

#[test]
fn serre_relations_match_the_closed_form() {
    for (kind, n, _) in PRESETS {
        let a = CartanData::new(kind, n).unwrap();
        let p = generic_parameters(&a).unwrap();
        let rels = serre_relations(&a, &p).unwrap();
        let mut want = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i != j && !(a.a(i, j) == 0 && i > j) {
                    want.push(serre_closed_form(&p, &a, i, j));
                }
            }
        }
        let got: Vec<NcPoly> = rels.into_iter().map(|(_, f)| f).collect();
        assert_eq!(got.len(), want.len(), "{kind}{n}");
        for f in &want {
            assert!(got.contains(f), "{kind}{n}: missing {f:?}");
        }
    }
}

#[test]
fn d_extra_relation_is_a_plain_commutator() {
    let a = CartanData::new(CartanKind::D, 4).unwrap();
    let p = generic_parameters(&a).unwrap();
    let rels = serre_relations(&a, &p).unwrap();
    let (src, f) = rels.iter().find(|(s, _)| s == "[x3,x4]").unwrap();
    assert_eq!(src, "[x3,x4]");
    let mut want = NcPoly::word(word(&[3, 4]));
    want.add_term(word(&[4, 3]), -p.entry(3, 4).clone());
    assert_eq!(f, &want);
}

#[test]
fn generic_parameters_admit_quantification() {
    for kind in [CartanKind::A, CartanKind::B, CartanKind::C, CartanKind::D] {
        for n in 1..=5 {
            let Ok(a) = CartanData::new(kind, n) else { continue };
            let p = generic_parameters(&a).unwrap();
            assert!(existence_check(&p, &a).unwrap().is_empty(), "{kind}{n}");
        }
    }
}

#[test]
fn diagonals() {
    let q = |pr: &Bicharacter| pr.params().param("q").unwrap();
    let c2 = generic_parameters(&CartanData::new(CartanKind::C, 2).unwrap()).unwrap();
    assert_eq!(c2.entry(1, 1), &q(&c2));
    assert_eq!(c2.entry(2, 2), &q(&c2).powi(2));
    let t = c2.params().param("t12").unwrap();
    assert_eq!(c2.entry(2, 1), &(&q(&c2).powi(-2) * &t.inv().unwrap()));
    let d5 = generic_parameters(&CartanData::new(CartanKind::D, 5).unwrap()).unwrap();
    for i in 1..=5 {
        assert_eq!(d5.entry(i, i), &q(&d5));
    }
}

#[test]
fn fully_generic_fails_existence() {
    let a = CartanData::new(CartanKind::A, 2).unwrap();
    let bad = existence_check(&Bicharacter::fully_generic(2), &a).unwrap();
    assert!(bad.contains(&(1, 2)));
    let err = serre_relations(&a, &Bicharacter::fully_generic(2)).unwrap_err();
    assert!(matches!(err, PresentationError::Existence(_)));
}

#[test]
fn z_deformations_preserve_existence() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (kind, n, _) in PRESETS {
        let pr = Presentation::preset(kind, n).unwrap();
        let mut z = BTreeMap::new();
        for i in 1..=n {
            for j in i + 1..=n {
                z.insert((i, j), Scalar::rational(common::random_rational(&mut rng, 9)));
            }
        }
        let d = pr.z_deform(&z).unwrap();
        assert!(existence_check(&d.bicharacter, d.cartan.as_ref().unwrap())
            .unwrap()
            .is_empty());
    }
}

fn presets_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../presets")
}

#[test]
fn shipped_presets_match_generation() {
    for (kind, n, name) in PRESETS {
        let text = std::fs::read_to_string(presets_dir().join(format!("{name}.json"))).unwrap();
        let parsed = Presentation::parse(&text).unwrap();
        let built = Presentation::preset(kind, n).unwrap();
        assert_eq!(parsed, built, "{name}");
        assert_eq!(parsed.hash(), built.hash());
    }
    let text = std::fs::read_to_string(presets_dir().join("one-relation.json")).unwrap();
    assert_eq!(Presentation::parse(&text).unwrap(), Presentation::one_relation());
}

#[test]
fn serialization_round_trips() {
    for (kind, n, _) in PRESETS {
        let pr = Presentation::preset(kind, n).unwrap();
        let back = Presentation::parse(&pr.to_json_string()).unwrap();
        assert_eq!(back, pr);
    }
    let one = Presentation::one_relation();
    assert_eq!(Presentation::parse(&one.to_json_string()).unwrap(), one);
}

#[test]
fn parse_errors_carry_positions() {
    let src = |rel: &str| {
        format!(
            r#"{{"generators":2,"degrees":[1,1],"parameters":["q"],
                "bicharacter":[["q","q"],["q","q"]],"relations":["{rel}"]}}"#
        )
    };
    assert!(matches!(
        Presentation::parse(&src("[x1+x2, x1]")),
        Err(PresentationError::Inhomogeneous {
            relation: 0,
            column: 2
        })
    ));
    assert!(matches!(
        Presentation::parse(&src("x1x2 - s*x2x1")),
        Err(PresentationError::UndeclaredParameter { .. })
    ));
    assert!(matches!(
        Presentation::parse(&src("[x1,x2")),
        Err(PresentationError::Syntax { .. })
    ));
    assert!(matches!(
        Presentation::parse("{\"generators\": 2,"),
        Err(PresentationError::Json { .. })
    ));
    let zero_entry = r#"{"generators":1,"degrees":[1],"parameters":[],
        "bicharacter":[["0"]],"relations":[]}"#;
    assert!(Presentation::parse(zero_entry).is_err());
}

#[test]
fn expected_list_counts() {
    for (kind, n, count) in [
        (CartanKind::A, 4, 10),
        (CartanKind::B, 3, 9),
        (CartanKind::C, 3, 9),
        (CartanKind::D, 4, 12),
        (CartanKind::D, 5, 20),
    ] {
        assert_eq!(expected_lists(kind, n).unwrap().hard.len(), count);
    }
    assert!(expected_lists(CartanKind::A, 1).is_err());
    assert!(expected_lists(CartanKind::D, 3).is_err());
}
