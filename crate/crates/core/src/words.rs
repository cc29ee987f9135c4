//! Words over `x_1 > x_2 > ... > x_n`, standard words and their bracketings.
//!
//! The lexicographic order used throughout compares letters with `x_1` as the
//! *largest* letter, and treats a proper prefix as GREATER than any of its
//! extensions (`x1x2 > x1x2x3`). This prefix convention is easy to get wrong;
//! every ordering in the crate goes through [`compare_lex`].

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("the empty word has no standard structure")]
    Empty,
    #[error("word {0} is not standard")]
    NotStandard(Word),
    #[error("cannot parse word `{0}`")]
    Parse(String),
    #[error("letter x{letter} out of range 1..={n}")]
    LetterOutOfRange { letter: u8, n: usize },
}

/// A word in the generators; letters are 1-based indices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(SmallVec<[u8; 24]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn letter(i: u8) -> Self {
        debug_assert!(i >= 1);
        Word(SmallVec::from_elem(i, 1))
    }

    pub fn from_letters(letters: &[u8]) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1));
        Word(SmallVec::from_slice(letters))
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `a · self · b`.
    pub fn wrap(&self, a: &[u8], b: &[u8]) -> Word {
        let mut v: SmallVec<[u8; 24]> = SmallVec::with_capacity(a.len() + self.len() + b.len());
        v.extend_from_slice(a);
        v.extend_from_slice(&self.0);
        v.extend_from_slice(b);
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        let mut v = SmallVec::with_capacity(self.len() * k);
        for _ in 0..k {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(SmallVec::from_slice(&self.0[from..to]))
    }

    pub fn max_letter(&self) -> Option<u8> {
        self.0.iter().copied().min()
    }

    pub fn contains(&self, sub: &Word) -> bool {
        find_subword(&self.0, &sub.0).is_some()
    }

    pub fn constitution(&self, n: usize) -> Constitution {
        let mut c = vec![0u32; n];
        for &l in &self.0 {
            c[l as usize - 1] += 1;
        }
        Constitution::new(c)
    }

    pub fn check_range(&self, n: usize) -> Result<(), WordError> {
        match self.0.iter().find(|&&l| l == 0 || l as usize > n) {
            Some(&letter) => Err(WordError::LetterOutOfRange { letter, n }),
            None => Ok(()),
        }
    }

    pub fn weighted_degree(&self, degrees: &[u32]) -> u64 {
        self.0.iter().map(|&l| degrees[l as usize - 1] as u64).sum()
    }
}

pub(crate) fn find_subword(hay: &[u8], needle: &[u8]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    if needle.len() > hay.len() {
        return None;
    }
    hay.windows(needle.len()).position(|w| w == needle)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for l in &self.0 {
            write!(f, "x{}", l)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl FromStr for Word {
    type Err = WordError;

    /// Parses `x1x2x2`; `1` and the empty string denote the empty word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        let b = s.as_bytes();
        let mut i = 0;
        let mut out = SmallVec::new();
        while i < b.len() {
            if b[i] != b'x' {
                return Err(WordError::Parse(s.to_string()));
            }
            i += 1;
            let start = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let k: u8 = s[start..i].parse().map_err(|_| WordError::Parse(s.to_string()))?;
            if k == 0 {
                return Err(WordError::Parse(s.to_string()));
            }
            out.push(k);
        }
        Ok(Word(out))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_lex(self, other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Letter multiplicities of a word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Constitution(SmallVec<[u32; 8]>);

impl Constitution {
    pub fn new(counts: Vec<u32>) -> Self {
        Constitution(SmallVec::from_vec(counts))
    }

    pub fn zero(n: usize) -> Self {
        Constitution(SmallVec::from_elem(0, n))
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut c = Constitution::zero(n);
        c.0[i - 1] = 1;
        c
    }

    pub fn counts(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, degrees: &[u32]) -> u64 {
        self.0
            .iter()
            .zip(degrees)
            .map(|(&m, &d)| m as u64 * d as u64)
            .sum()
    }

    pub fn add(&self, other: &Constitution) -> Constitution {
        Constitution(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: u32) -> Constitution {
        Constitution(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &Constitution) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn checked_sub(&self, other: &Constitution) -> Option<Constitution> {
        if !other.le(self) {
            return None;
        }
        Some(Constitution(
            self.0.iter().zip(other.0.iter()).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl fmt::Display for Constitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Constitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

/// Lexicographic comparison with `x_1 > x_2 > ...` and proper prefixes greater.
pub fn compare_lex(u: &Word, v: &Word) -> Ordering {
    for (a, b) in u.0.iter().zip(v.0.iter()) {
        if a != b {
            // Smaller index is the larger letter.
            return b.cmp(a);
        }
    }
    v.len().cmp(&u.len())
}

/// Hall order: weighted degree first, then [`compare_lex`].
pub fn compare_hall(u: &Word, v: &Word, degrees: &[u32]) -> Ordering {
    u.weighted_degree(degrees)
        .cmp(&v.weighted_degree(degrees))
        .then_with(|| compare_lex(u, v))
}

/// A word is standard when every nontrivial rotation is smaller.
pub fn is_standard(u: &Word) -> Result<bool, WordError> {
    if u.is_empty() {
        return Err(WordError::Empty);
    }
    Ok(is_standard_letters(&u.0))
}

pub(crate) fn is_standard_letters(u: &[u8]) -> bool {
    // Equivalent to: u greater than each proper end (suffix).
    let n = u.len();
    if n == 0 {
        return false;
    }
    for k in 1..n {
        if lex_slices(u, &u[k..]) != Ordering::Greater {
            return false;
        }
    }
    true
}

fn lex_slices(u: &[u8], v: &[u8]) -> Ordering {
    for (a, b) in u.iter().zip(v.iter()) {
        if a != b {
            return b.cmp(a);
        }
    }
    v.len().cmp(&u.len())
}

/// Factorization `c = u_1^{n_1} ... u_k^{n_k}` into standard words with `u_1 < ... < u_k`.
pub fn lyndon_factorize(c: &Word) -> Result<Vec<(Word, usize)>, WordError> {
    if c.is_empty() {
        return Err(WordError::Empty);
    }
    // Standard words are the Lyndon words for the usual order on letter
    // indices, so Duval's algorithm runs on the raw indices; its factors are
    // non-increasing there, i.e. increasing for `compare_lex`.
    let s = &c.0;
    let n = s.len();
    let mut factors: Vec<Word> = Vec::new();
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        let mut k = i;
        while j < n && s[k] <= s[j] {
            if s[k] < s[j] {
                k = i;
            } else {
                k += 1;
            }
            j += 1;
        }
        while i <= k {
            factors.push(Word(SmallVec::from_slice(&s[i..i + j - k])));
            i += j - k;
        }
    }
    let mut out: Vec<(Word, usize)> = Vec::new();
    for f in factors {
        match out.last_mut() {
            Some((w, m)) if *w == f => *m += 1,
            _ => out.push((f, 1)),
        }
    }
    Ok(out)
}

/// Nonassociative bracketing of a standard word.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BracketTree {
    Leaf(u8),
    Pair(Box<BracketTree>, Box<BracketTree>),
}

impl BracketTree {
    pub fn word(&self) -> Word {
        let mut v = SmallVec::new();
        self.collect(&mut v);
        Word(v)
    }

    fn collect(&self, out: &mut SmallVec<[u8; 24]>) {
        match self {
            BracketTree::Leaf(l) => out.push(*l),
            BracketTree::Pair(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }

    pub fn split(&self) -> Option<(&BracketTree, &BracketTree)> {
        match self {
            BracketTree::Leaf(_) => None,
            BracketTree::Pair(a, b) => Some((a, b)),
        }
    }

    /// Nested-list form used in JSON reports: a leaf is `"xK"`, a pair is `[left, right]`.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            BracketTree::Leaf(l) => serde_json::Value::String(format!("x{}", l)),
            BracketTree::Pair(a, b) => serde_json::Value::Array(vec![a.to_json(), b.to_json()]),
        }
    }
}

impl fmt::Display for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketTree::Leaf(l) => write!(f, "x{}", l),
            BracketTree::Pair(a, b) => write!(f, "[{},{}]", a, b),
        }
    }
}

impl fmt::Debug for BracketTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Splits a standard word at the shortest prefix for which both parts are standard.
pub fn standard_bracketing(u: &Word) -> Result<BracketTree, WordError> {
    if u.is_empty() {
        return Err(WordError::Empty);
    }
    if !is_standard_letters(&u.0) {
        return Err(WordError::NotStandard(u.clone()));
    }
    Ok(bracket_letters(&u.0))
}

fn bracket_letters(u: &[u8]) -> BracketTree {
    if u.len() == 1 {
        return BracketTree::Leaf(u[0]);
    }
    for k in 1..u.len() {
        if is_standard_letters(&u[..k]) && is_standard_letters(&u[k..]) {
            return BracketTree::Pair(
                Box::new(bracket_letters(&u[..k])),
                Box::new(bracket_letters(&u[k..])),
            );
        }
    }
    unreachable!("every standard word of length > 1 splits into two standard words")
}

/// All words of length `len` over `n` letters, in increasing index order.
pub fn all_words(n: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * n);
        for w in &out {
            for l in 1..=n as u8 {
                let mut v = w.0.clone();
                v.push(l);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// All words of a given constitution.
pub fn words_of_constitution(c: &Constitution) -> Vec<Word> {
    fn rec(rem: &mut Vec<u32>, cur: &mut SmallVec<[u8; 24]>, out: &mut Vec<Word>) {
        if rem.iter().all(|&x| x == 0) {
            out.push(Word(cur.clone()));
            return;
        }
        for i in 0..rem.len() {
            if rem[i] > 0 {
                rem[i] -= 1;
                cur.push(i as u8 + 1);
                rec(rem, cur, out);
                cur.pop();
                rem[i] += 1;
            }
        }
    }
    let mut out = Vec::new();
    let mut rem = c.counts().to_vec();
    rec(&mut rem, &mut SmallVec::new(), &mut out);
    out
}
