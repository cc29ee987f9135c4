mod common;

use std::cmp::Ordering;

use common::{all_words_up_to, brute_standard};
use proptest::prelude::*;
use qpbw::words::{compare_hall, compare_lex, is_standard, lyndon_factorize, standard_bracketing, Word};

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn word_strategy(n: u8, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=n, 1..=max_len).prop_map(|v| Word::from_letters(&v))
}

#[test]
fn standardness_matches_rotations() {
    for n in 1..=3 {
        for letters in all_words_up_to(n, 8) {
            let word = Word::from_letters(&letters);
            assert_eq!(is_standard(&word).unwrap(), brute_standard(&letters), "{word}");
        }
    }
}

#[test]
fn standard_word_counts() {
    // Necklace counting: the number of Lyndon words of length m over n letters.
    fn mobius(k: usize) -> i64 {
        let (mut k, mut mu, mut p) = (k, 1i64, 2);
        while p * p <= k {
            if k % p == 0 {
                k /= p;
                if k % p == 0 {
                    return 0;
                }
                mu = -mu;
            }
            p += 1;
        }
        if k > 1 {
            mu = -mu;
        }
        mu
    }
    for n in 2..=3usize {
        for m in 1..=7usize {
            let expect: i64 = (1..=m)
                .filter(|d| m % d == 0)
                .map(|d| mobius(m / d) * (n as i64).pow(d as u32))
                .sum::<i64>()
                / m as i64;
            let got = all_words_up_to(n, m)
                .into_iter()
                .filter(|l| l.len() == m && is_standard(&Word::from_letters(l)).unwrap())
                .count();
            assert_eq!(got as i64, expect, "n={n} m={m}");
        }
    }
}

#[test]
fn lex_order_examples() {
    assert_eq!(compare_lex(&w("x1"), &w("x2")), Ordering::Greater);
    assert_eq!(compare_lex(&w("x1"), &w("x1x2")), Ordering::Greater);
    assert_eq!(compare_lex(&w("x1x2x2"), &w("x1x2")), Ordering::Less);
    assert_eq!(compare_hall(&w("x1x2"), &w("x1"), &[1, 1]), Ordering::Greater);
    assert_eq!(compare_hall(&w("x2x1"), &w("x1x2"), &[1, 1]), Ordering::Less);
    assert_eq!(compare_hall(&w("x2"), &w("x1"), &[1, 3]), Ordering::Greater);
}

#[test]
fn factorization_examples() {
    assert_eq!(
        lyndon_factorize(&w("x2x2x1x2")).unwrap(),
        vec![(w("x2"), 2), (w("x1x2"), 1)]
    );
    assert_eq!(lyndon_factorize(&w("x1x2x1x2")).unwrap(), vec![(w("x1x2"), 2)]);
    assert_eq!(
        lyndon_factorize(&w("x3x1x2x2x1")).unwrap(),
        vec![(w("x3"), 1), (w("x1x2x2"), 1), (w("x1"), 1)]
    );
    assert!(lyndon_factorize(&Word::empty()).is_err());
}

#[test]
fn bracketing_examples() {
    let cases = [
        ("x1", "x1"),
        ("x1x2", "[x1,x2]"),
        ("x1x2x2", "[[x1,x2],x2]"),
        ("x1x1x2", "[x1,[x1,x2]]"),
        ("x1x2x1x2x2", "[[x1,x2],[[x1,x2],x2]]"),
        ("x1x2x3", "[x1,[x2,x3]]"),
    ];
    for (word, tree) in cases {
        let t = standard_bracketing(&w(word)).unwrap();
        assert_eq!(t.to_string(), tree, "{word}");
    }
    assert!(standard_bracketing(&w("x2x1")).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn factorization_is_unique_and_ordered(c in word_strategy(4, 14)) {
        let f = lyndon_factorize(&c).unwrap();
        let mut joined = Word::empty();
        for (u, m) in &f {
            prop_assert!(is_standard(u).unwrap());
            prop_assert!(*m >= 1);
            joined = joined.concat(&u.pow(*m));
        }
        prop_assert_eq!(&joined, &c);
        for pair in f.windows(2) {
            prop_assert_eq!(compare_lex(&pair[0].0, &pair[1].0), Ordering::Less);
        }
    }

    #[test]
    fn bracketing_spells_the_word(c in word_strategy(3, 12)) {
        if is_standard(&c).unwrap() {
            let t = standard_bracketing(&c).unwrap();
            prop_assert_eq!(t.word(), c.clone());
            if let Some((a, b)) = t.split() {
                prop_assert!(is_standard(&a.word()).unwrap());
                prop_assert!(is_standard(&b.word()).unwrap());
                // No shorter left factor works.
                for k in 1..a.word().len() {
                    let l = c.slice(0, k);
                    let r = c.slice(k, c.len());
                    prop_assert!(!(is_standard(&l).unwrap() && is_standard(&r).unwrap()));
                }
            }
        }
    }

    #[test]
    fn lex_is_a_total_order(a in word_strategy(3, 6), b in word_strategy(3, 6), c in word_strategy(3, 6)) {
        prop_assert_eq!(compare_lex(&a, &b), compare_lex(&b, &a).reverse());
        prop_assert_eq!(compare_lex(&a, &b) == Ordering::Equal, a == b);
        if compare_lex(&a, &b) != Ordering::Greater && compare_lex(&b, &c) != Ordering::Greater {
            prop_assert_ne!(compare_lex(&a, &c), Ordering::Greater);
        }
    }
}
