//! Small finite sets of indices packed into a machine word.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

/// Maximum number of elements a [`DivSet`] can index.
pub const MAX_ELEMS: usize = 64;

/// A subset of `{0, …, 63}`, used for divisor sets Δ and J-sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct DivSet(pub u64);

impl DivSet {
    pub const EMPTY: DivSet = DivSet(0);

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_ELEMS, "index {i} out of range");
        DivSet(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(DivSet::EMPTY, |s, i| s.with(i))
    }

    /// `{0, …, n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMS);
        if n == MAX_ELEMS {
            DivSet(u64::MAX)
        } else {
            DivSet((1u64 << n) - 1)
        }
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMS && self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        self | DivSet::singleton(i)
    }

    pub fn without(self, i: usize) -> Self {
        self - DivSet::singleton(i)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: DivSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: DivSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> impl Iterator<Item = DivSet> {
        let full = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let c = cur?;
            cur = if c == full { None } else { Some(((c | !full).wrapping_add(1)) & full) };
            Some(DivSet(c))
        })
    }

    /// Canonical order: by cardinality, then lexicographically on sorted members.
    pub fn canonical_cmp(&self, other: &DivSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl std::ops::BitOr for DivSet {
    type Output = DivSet;
    fn bitor(self, rhs: DivSet) -> DivSet {
        DivSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for DivSet {
    type Output = DivSet;
    fn bitand(self, rhs: DivSet) -> DivSet {
        DivSet(self.0 & rhs.0)
    }
}

impl std::ops::BitXor for DivSet {
    type Output = DivSet;
    fn bitxor(self, rhs: DivSet) -> DivSet {
        DivSet(self.0 ^ rhs.0)
    }
}

impl std::ops::Sub for DivSet {
    type Output = DivSet;
    fn sub(self, rhs: DivSet) -> DivSet {
        DivSet(self.0 & !rhs.0)
    }
}

impl fmt::Debug for DivSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl PartialOrd for DivSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DivSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let a = DivSet::from_indices([0, 2]);
        let b = DivSet::from_indices([2, 3]);
        assert_eq!((a | b).len(), 3);
        assert_eq!(a & b, DivSet::singleton(2));
        assert_eq!(a - b, DivSet::singleton(0));
        assert!(DivSet::singleton(2).is_subset(a));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 2]);
    }

    #[test]
    fn subsets_enumerates_power_set() {
        let s = DivSet::from_indices([1, 4, 5]);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|t| t.is_subset(s)));
        assert_eq!(DivSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let mut v = [
            DivSet::from_indices([1, 2]),
            DivSet::from_indices([3]),
            DivSet::EMPTY,
            DivSet::from_indices([0, 3]),
            DivSet::from_indices([0]),
        ];
        v.sort();
        let shown: Vec<Vec<usize>> = v.iter().map(|s| s.iter().collect()).collect();
        assert_eq!(shown, vec![vec![], vec![0], vec![3], vec![0, 3], vec![1, 2]]);
    }

    proptest! {
        #[test]
        fn from_iter_roundtrip(bits in any::<u64>()) {
            let s = DivSet(bits);
            prop_assert_eq!(DivSet::from_indices(s.iter()), s);
            prop_assert_eq!(s.len(), s.iter().count());
        }
    }
}
