//! Finite subsets of `{1..=64}` packed into a bitmask.
//!
//! Bit `i - 1` stands for the element `i`. Ordering is lexicographic on the
//! sorted element lists, so `{1,4} < {2,3}` and a proper prefix sorts first.

use std::cmp::Ordering;
use std::fmt;

pub const MAX_ELEMENT: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// Panics if an element is outside `1..=64`.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elems: I) -> Self {
        let mut bits = 0u64;
        for e in elems {
            assert!((1..=MAX_ELEMENT).contains(&e), "subset element {e} out of range");
            bits |= 1 << (e - 1);
        }
        Subset(bits)
    }

    pub fn singleton(e: usize) -> Self {
        Subset::from_elements([e])
    }

    /// `{1..=n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENT);
        if n == MAX_ELEMENT {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=MAX_ELEMENT).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn insert(self, e: usize) -> Self {
        Subset(self.0 | Subset::singleton(e).0)
    }

    pub fn remove(self, e: usize) -> Self {
        Subset(self.0 & !Subset::singleton(e).0)
    }

    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    pub fn intersects(self, other: Subset) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All `size`-element subsets of `self`, in lexicographic order.
    pub fn subsets_of_size(self, size: usize) -> Vec<Subset> {
        let elems = self.to_vec();
        let mut out = Vec::new();
        if size > elems.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(Subset::from_elements(idx.iter().map(|&i| elems[i])));
            // advance the rightmost index that still has room
            let mut pos = size;
            while pos > 0 && idx[pos - 1] == elems.len() - size + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                return out;
            }
            idx[pos - 1] += 1;
            for q in pos..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        // Both agree below the smallest element `low` of the symmetric
        // difference. The side holding `low` is smaller unless the other side
        // has run out of elements there.
        let diff = self.0 ^ other.0;
        let low = diff & diff.wrapping_neg();
        let above = !(low | (low - 1));
        let (holder, rest) = if self.0 & low != 0 { (Ordering::Less, other.0) } else { (Ordering::Greater, self.0) };
        if rest & above != 0 {
            holder
        } else {
            holder.reverse()
        }
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }
}
