//! Bitmask subsets of the ground set `[n]`.
//!
//! Element `i` (1-based, as printed everywhere) lives at bit `i - 1`.

use std::fmt;

/// Largest supported ground set.
pub const MAX_N: usize = 16;

/// A subset of `[n]` stored as a bitmask. The ground-set size is carried by
/// the owning game, not by the subset itself.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

/// Mask with the low `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u32 {
    debug_assert!(n <= MAX_N);
    if n == 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    #[inline]
    pub fn full(n: usize) -> Self {
        Subset(full_mask(n))
    }

    /// `{i}` for a 1-based element.
    #[inline]
    pub fn singleton(element: usize) -> Self {
        debug_assert!(element >= 1);
        Subset(1 << (element - 1))
    }

    /// Build from 1-based element labels.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        Subset(elements.into_iter().fold(0, |acc, e| acc | (1 << (e - 1))))
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, element: usize) -> bool {
        self.0 & (1 << (element - 1)) != 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn complement(self, n: usize) -> Subset {
        Subset(full_mask(n) ^ self.0)
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    #[inline]
    pub fn with(self, element: usize) -> Subset {
        Subset(self.0 | (1 << (element - 1)))
    }

    #[inline]
    pub fn without(self, element: usize) -> Subset {
        Subset(self.0 & !(1 << (element - 1)))
    }

    /// True when all bits lie inside `[n]`.
    #[inline]
    pub fn fits(self, n: usize) -> bool {
        self.0 & !full_mask(n) == 0
    }

    /// Smallest element, 1-based.
    #[inline]
    pub fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize + 1)
        }
    }

    /// 1-based elements in ascending order.
    pub fn elements(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.elements().collect()
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn submasks(self) -> Submasks {
        Submasks { mask: self.0, cur: self.0, done: false }
    }

    /// Lexicographic comparison of the sorted element lists.
    pub fn lex_cmp(self, other: Subset) -> std::cmp::Ordering {
        self.elements().cmp(other.elements())
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, e) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub struct Elements(u32);

impl Iterator for Elements {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(tz as usize + 1)
    }
}

/// Descending enumeration of submasks (Gosper-style `(cur - 1) & mask`).
pub struct Submasks {
    mask: u32,
    cur: u32,
    done: bool,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.done {
            return None;
        }
        let out = self.cur;
        if self.cur == 0 {
            self.done = true;
        } else {
            self.cur = (self.cur - 1) & self.mask;
        }
        Some(Subset(out))
    }
}

/// Fixed-size bitset indexed by subset masks of `[n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SubsetTable {
    words: Vec<u64>,
}

impl SubsetTable {
    pub fn new(n: usize) -> Self {
        let len = (1usize << n).div_ceil(64);
        SubsetTable { words: vec![0; len] }
    }

    #[inline]
    pub fn get(&self, s: Subset) -> bool {
        let i = s.0 as usize;
        self.words[i >> 6] >> (i & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, s: Subset, value: bool) {
        let i = s.0 as usize;
        if value {
            self.words[i >> 6] |= 1 << (i & 63);
        } else {
            self.words[i >> 6] &= !(1 << (i & 63));
        }
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}
