//! Element sets and set pairs.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// A finite subset of `{1, 2, ...}` stored as a growable bitset.
///
/// Element `i` lives at bit `i - 1`. Trailing zero words are never stored,
/// so structural equality is set equality. The [`Ord`] instance compares the
/// sets as the integers `Σ 2^(i-1)`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Self {
        let mut s = Self::new();
        for i in 1..=n {
            s.insert(i);
        }
        s
    }

    /// # Panics
    ///
    /// If `element` is zero.
    pub fn insert(&mut self, element: usize) {
        assert!(element >= 1, "elements are 1-based");
        let (w, b) = ((element - 1) / 64, (element - 1) % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << b;
    }

    pub fn remove(&mut self, element: usize) {
        if element == 0 {
            return;
        }
        let (w, b) = ((element - 1) / 64, (element - 1) % 64);
        if w < self.words.len() {
            self.words[w] &= !(1 << b);
            self.trim();
        }
    }

    pub fn contains(&self, element: usize) -> bool {
        if element == 0 {
            return false;
        }
        let (w, b) = ((element - 1) / 64, (element - 1) % 64);
        self.words.get(w).is_some_and(|x| x >> b & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Largest element, or 0 for the empty set.
    pub fn max_element(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(&w) => (self.words.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b + 1)
            })
        })
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut words: Vec<u64> = self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect();
        trim_words(&mut words);
        Self { words }
    }

    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Self { words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        trim_words(&mut words);
        Self { words }
    }

    /// Applies an element relabeling; `map[i - 1]` is the image of `i`.
    pub fn map(&self, map: &[usize]) -> Self {
        self.iter().map(|i| map[i - 1]).collect()
    }

    /// The low 64 bits of the integer encoding; exact whenever every element is at most 64.
    pub fn low_bits(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    fn trim(&mut self) {
        trim_words(&mut self.words);
    }
}

fn trim_words(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = Self::new();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl<const N: usize> From<[usize; N]> for ElementSet {
    fn from(items: [usize; N]) -> Self {
        items.into_iter().collect()
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("∅");
        }
        f.write_str("{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A pair `(A, B)` of disjoint element sets.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SetPair {
    a: ElementSet,
    b: ElementSet,
}

impl SetPair {
    pub fn new(a: ElementSet, b: ElementSet) -> Result<Self> {
        if !a.is_disjoint(&b) {
            return Err(Error::NotDisjoint {
                pair: 1,
                elements: a.intersection(&b).iter().collect(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn a(&self) -> &ElementSet {
        &self.a
    }

    pub fn b(&self) -> &ElementSet {
        &self.b
    }

    /// The largest element mentioned by either side.
    pub fn max_element(&self) -> usize {
        self.a.max_element().max(self.b.max_element())
    }

    /// Compares canonical encodings: the bit pattern of `A` followed by that
    /// of `B`, read as one integer with `A` in the low `n` bits. Because the
    /// encoding is `A + 2^n * B`, this is `B` first, then `A`, and does not
    /// depend on `n`.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.b.cmp(&other.b).then_with(|| self.a.cmp(&other.a))
    }

    /// Canonical encoding as an integer for ground sets with `n <= 32`.
    pub fn canonical_code(&self, n: usize) -> u64 {
        assert!(n <= 32, "canonical_code needs n <= 32");
        self.a.low_bits() | self.b.low_bits() << n
    }

    pub fn map(&self, map: &[usize]) -> Self {
        Self {
            a: self.a.map(map),
            b: self.b.map(map),
        }
    }
}

impl fmt::Debug for SetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

impl fmt::Display for SetPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// Shorthand for tests and examples; panics when `a ∩ b ≠ ∅`.
pub fn pair<const N: usize, const M: usize>(a: [usize; N], b: [usize; M]) -> SetPair {
    SetPair::new(a.into(), b.into()).expect("pair must be disjoint")
}
