//! Fixed-capacity element bitsets and the [`Subgroup`] wrapper.
//!
//! Every subgroup is stored as a bitset over the element indices of its
//! parent group, so equality, hashing, intersection and containment are a
//! handful of word operations. Capacity is [`MAX_ORDER`] elements.

use std::cmp::Ordering;
use std::fmt;

/// Largest group order representable by a subgroup bitset.
pub const MAX_ORDER: usize = 512;
const WORDS: usize = MAX_ORDER / 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ElemSet {
    words: [u64; WORDS],
}

impl Default for ElemSet {
    fn default() -> Self {
        Self::empty()
    }
}

impl ElemSet {
    pub const fn empty() -> Self {
        Self { words: [0; WORDS] }
    }

    pub fn full(len: usize) -> Self {
        debug_assert!(len <= MAX_ORDER);
        let mut s = Self::empty();
        for (w, word) in s.words.iter_mut().enumerate() {
            let lo = w * 64;
            if lo >= len {
                break;
            }
            let bits = (len - lo).min(64);
            *word = if bits == 64 { u64::MAX } else { (1u64 << bits) - 1 };
        }
        s
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut s = Self::empty();
        for x in it {
            s.insert(x);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, x: usize) -> bool {
        let (w, b) = (x >> 6, 1u64 << (x & 63));
        let fresh = self.words[w] & b == 0;
        self.words[w] |= b;
        fresh
    }

    #[inline]
    pub fn remove(&mut self, x: usize) {
        self.words[x >> 6] &= !(1u64 << (x & 63));
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < MAX_ORDER && self.words[x >> 6] & (1u64 << (x & 63)) != 0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn and(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a &= b;
        }
        out
    }

    #[inline]
    pub fn or(&self, other: &Self) -> Self {
        let mut out = *self;
        for (a, b) in out.words.iter_mut().zip(other.words.iter()) {
            *a |= b;
        }
        out
    }

    #[inline]
    pub fn is_subset(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Size of the intersection without materialising it.
    #[inline]
    pub fn intersection_len(&self, other: &Self) -> usize {
        self.words
            .iter()
            .zip(other.words.iter())
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            word: 0,
            current: self.words[0],
        }
    }
}

impl Ord for ElemSet {
    /// Lexicographic order of the ascending element lists.
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for ElemSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter<'a> {
    words: &'a [u64; WORDS],
    word: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.word * 64 + tz);
            }
            self.word += 1;
            if self.word >= WORDS {
                return None;
            }
            self.current = self.words[self.word];
        }
    }
}

/// A subgroup of some parent [`FiniteGroup`](crate::FiniteGroup), stored as
/// the set of parent element indices it contains.
///
/// Subgroups do not carry a pointer to their parent; every operation takes
/// the parent group explicitly. Two subgroups are equal iff their bitsets
/// are equal.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    set: ElemSet,
}

impl Subgroup {
    /// Wraps a set assumed to be closed under the parent's table.
    pub(crate) fn from_set_unchecked(set: ElemSet) -> Self {
        debug_assert!(set.contains(0));
        Self { set }
    }

    pub fn trivial() -> Self {
        Self {
            set: ElemSet::from_indices([0]),
        }
    }

    pub(crate) fn full(order: usize) -> Self {
        Self {
            set: ElemSet::full(order),
        }
    }

    pub fn set(&self) -> &ElemSet {
        &self.set
    }

    pub fn order(&self) -> usize {
        self.set.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.set.iter().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.set.is_subset(&other.set)
    }

    /// Intersection of two subgroups is again a subgroup.
    pub fn meet(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            set: self.set.and(&other.set),
        }
    }

    pub fn meets_trivially(&self, other: &Subgroup) -> bool {
        self.set.intersection_len(&other.set) == 1
    }

    /// log base `p` of the order.
    pub fn log_order(&self, p: u32) -> u32 {
        log_p(self.order(), p)
    }
}

impl serde::Serialize for Subgroup {
    /// Serialised as the ascending list of element indices.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.elements())
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order={}, {:?})", self.order(), self.set)
    }
}

/// Exponent `k` with `p^k = value`; `value` must be a power of `p`.
pub fn log_p(mut value: usize, p: u32) -> u32 {
    let p = p as usize;
    let mut k = 0;
    while value > 1 {
        debug_assert_eq!(value % p, 0);
        value /= p;
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_and_iteration() {
        for len in [1, 63, 64, 65, 128, 200, 512] {
            let s = ElemSet::full(len);
            assert_eq!(s.len(), len);
            assert_eq!(s.iter().collect::<Vec<_>>(), (0..len).collect::<Vec<_>>());
        }
    }

    #[test]
    fn lexicographic_order() {
        let a = ElemSet::from_indices([0, 1, 5]);
        let b = ElemSet::from_indices([0, 2]);
        let c = ElemSet::from_indices([0, 1]);
        assert!(a < b);
        assert!(c < a);
    }

    #[test]
    fn subset_and_meet() {
        let a = ElemSet::from_indices([0, 3, 100, 300]);
        let b = ElemSet::from_indices([0, 100]);
        assert!(b.is_subset(&a));
        assert!(!a.is_subset(&b));
        assert_eq!(a.and(&b), b);
        assert_eq!(a.intersection_len(&b), 2);
    }
}
