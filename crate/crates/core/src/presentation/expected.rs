//! The published hard-letter lists and Gröbner–Shirshov leading words for the
//! classical types, materialized for a given rank.

use std::collections::BTreeSet;

use super::{CartanKind, PresentationError};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedLists {
    pub hard: BTreeSet<Word>,
    pub leading: BTreeSet<Word>,
}

fn word(letters: impl IntoIterator<Item = usize>) -> Word {
    Word::from_letters(&letters.into_iter().map(|l| l as u8).collect::<Vec<_>>())
}

fn cat(a: &Word, b: &Word) -> Word {
    a.concat(b)
}

fn x(i: usize) -> Word {
    word([i])
}

/// `x_k x_{k+1} ... x_m`
fn u(k: usize, m: usize) -> Word {
    word(k..=m)
}

/// `x_a x_{a-1} ... x_b` for `a >= b`, empty when `a < b`.
fn down(a: usize, b: usize) -> Word {
    if a < b {
        Word::empty()
    } else {
        word((b..=a).rev())
    }
}

pub fn expected_lists(kind: CartanKind, n: usize) -> Result<ExpectedLists, PresentationError> {
    let min = match kind {
        CartanKind::A | CartanKind::B | CartanKind::C => 2,
        CartanKind::D => 4,
        CartanKind::Custom => {
            return Err(PresentationError::Rank(
                "no published lists for custom data".into(),
            ))
        }
    };
    if n < min {
        return Err(PresentationError::Rank(format!(
            "published lists for type {kind} start at rank {min}"
        )));
    }
    let mut hard = BTreeSet::new();
    let mut lead = BTreeSet::new();
    // x_k x_m for non-adjacent k < m, common to every type.
    let u0 = |lead: &mut BTreeSet<Word>, skip: Option<(usize, usize)>| {
        for k in 1..=n {
            for m in k + 2..=n {
                if Some((k, m)) != skip {
                    lead.insert(cat(&x(k), &x(m)));
                }
            }
        }
    };
    match kind {
        CartanKind::A => {
            for k in 1..=n {
                for m in k..=n {
                    hard.insert(u(k, m));
                }
            }
            u0(&mut lead, None);
            for k in 1..=n {
                for m in k + 1..=n {
                    lead.insert(cat(&u(k, m), &x(k + 1)));
                }
                for m in k..n {
                    lead.insert(cat(&u(k, m), &u(k, m + 1)));
                }
            }
        }
        CartanKind::B => {
            // w_km = x_k ... x_n x_n ... x_m
            let w = |k: usize, m: usize| cat(&u(k, n), &down(n, m));
            for k in 1..=n {
                for m in k..=n {
                    hard.insert(u(k, m));
                }
                for m in k + 1..=n {
                    hard.insert(w(k, m));
                }
            }
            u0(&mut lead, None);
            for k in 1..=n {
                for m in k + 1..=n {
                    if k != n - 1 {
                        lead.insert(cat(&u(k, m), &x(k + 1)));
                    }
                    if k + 2 != m {
                        lead.insert(cat(&w(k, m), &x(k + 1)));
                    }
                }
                for m in k..n {
                    lead.insert(cat(&u(k, m), &u(k, m + 1)));
                }
                if k + 1 < n {
                    lead.insert(cat(&w(k, k + 1), &x(k + 2)));
                }
                for m in k + 2..=n {
                    lead.insert(cat(&w(k, m), &w(k, m - 1)));
                }
                if k < n {
                    lead.insert(cat(&u(k, n).pow(2), &x(n)));
                }
            }
        }
        CartanKind::C => {
            // v_km = x_k ... x_n x_{n-1} ... x_m, with v_kn = u_kn
            let v = |k: usize, m: usize| cat(&u(k, n), &down(n - 1, m));
            for k in 1..=n {
                for m in k..=n {
                    hard.insert(u(k, m));
                }
                for m in k + 1..n {
                    hard.insert(v(k, m));
                }
                if k < n {
                    hard.insert(cat(&u(k, n - 1), &u(k, n)));
                }
            }
            u0(&mut lead, None);
            for k in 1..=n {
                for m in k + 1..=n {
                    if (k, m) != (n.wrapping_sub(2), n) {
                        lead.insert(cat(&u(k, m), &x(k + 1)));
                    }
                }
                for m in k..n.saturating_sub(1) {
                    lead.insert(cat(&u(k, m), &u(k, m + 1)));
                }
                for m in k + 1..n {
                    if k + 2 != m {
                        lead.insert(cat(&v(k, m), &x(k + 1)));
                    }
                }
                if k + 1 < n {
                    lead.insert(cat(&v(k, k + 1), &x(k + 2)));
                }
                for m in k + 2..=n {
                    lead.insert(cat(&v(k, m), &v(k, m - 1)));
                }
                if k < n {
                    lead.insert(cat(&u(k, n - 1).pow(3), &x(n)));
                }
            }
        }
        CartanKind::D => {
            // e_km = x_k ... x_{n-2} x_n x_{n-1} ... x_m, and e_{n-1,n} = x_n
            let e = |k: usize, m: usize| {
                if k == n - 1 {
                    x(n)
                } else {
                    cat(&cat(&u(k, n - 2), &x(n)), &down(n - 1, m))
                }
            };
            for k in 1..n {
                for m in k..n {
                    hard.insert(u(k, m));
                }
                for m in k + 1..=n {
                    hard.insert(e(k, m));
                }
            }
            u0(&mut lead, Some((n - 2, n)));
            lead.insert(word([n - 2, n, n]));
            lead.insert(cat(&e(n - 3, n - 2), &x(n)));
            for k in 1..n {
                for m in k + 1..n {
                    lead.insert(cat(&u(k, m), &x(k + 1)));
                }
                for m in k..n - 1 {
                    lead.insert(cat(&u(k, m), &u(k, m + 1)));
                }
                for m in k + 1..=n {
                    if k != n - 1 && k + 2 != m {
                        lead.insert(cat(&e(k, m), &x(k + 1)));
                    }
                }
                if k + 2 < n {
                    lead.insert(cat(&e(k, k + 1), &x(k + 2)));
                }
                for m in k + 2..=n {
                    lead.insert(cat(&e(k, m), &e(k, m - 1)));
                }
                for m in k.max(n - 2)..n {
                    lead.insert(cat(&u(k, m), &e(k, n)));
                }
            }
        }
        CartanKind::Custom => unreachable!(),
    }
    Ok(ExpectedLists { hard, leading: lead })
}
