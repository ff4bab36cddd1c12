//! Sets of items as bitsets. The first 64 items live inline.

use smallvec::SmallVec;

/// A finite set of item indices.
///
/// Trailing zero words are never stored, so equal sets compare and hash
/// equal regardless of how they were built.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemSet {
    words: SmallVec<[u64; 1]>,
}

impl ItemSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `{0, …, n−1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn singleton(item: usize) -> Self {
        std::iter::once(item).collect()
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn contains(&self, item: usize) -> bool {
        self.words.get(item / 64).is_some_and(|w| w >> (item % 64) & 1 == 1)
    }

    pub fn insert(&mut self, item: usize) {
        let word = item / 64;
        if self.words.len() <= word {
            self.words.resize(word + 1, 0);
        }
        self.words[word] |= 1 << (item % 64);
    }

    pub fn remove(&mut self, item: usize) {
        if let Some(w) = self.words.get_mut(item / 64) {
            *w &= !(1 << (item % 64));
            self.trim();
        }
    }

    pub fn with(&self, item: usize) -> Self {
        let mut out = self.clone();
        out.insert(item);
        out
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.words.len() <= other.words.len() && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn union(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() { (self, other) } else { (other, self) };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        Self { words }
    }

    /// Size of the symmetric difference.
    pub fn distance(&self, other: &Self) -> usize {
        let n = self.words.len().max(other.words.len());
        (0..n)
            .map(|i| {
                let a = self.words.get(i).copied().unwrap_or(0);
                let b = other.words.get(i).copied().unwrap_or(0);
                (a ^ b).count_ones() as usize
            })
            .sum()
    }

    /// Largest item plus one, or 0 for the empty set.
    pub fn bound(&self) -> usize {
        self.words.last().map_or(0, |w| (self.words.len() - 1) * 64 + 64 - w.leading_zeros() as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words
            .iter()
            .enumerate()
            .flat_map(|(i, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b))
    }
}

impl FromIterator<usize> for ItemSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = Self::empty();
        for item in iter {
            set.insert(item);
        }
        set
    }
}
