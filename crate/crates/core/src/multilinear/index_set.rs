use std::fmt;

use crate::error::{Result, SpinorError};

/// Largest number of letters an [`IndexSet`] can hold.
pub const MAX_LETTERS: usize = 30;

/// A subset of `{1, ..., N}` stored as a bitmask; letter `i` is bit `i - 1`.
///
/// The derived ordering is the numeric order of the masks, which is the
/// ordering used for every coordinate list in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IndexSet(u32);

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    pub fn from_mask(mask: u32) -> Self {
        IndexSet(mask)
    }

    /// From 1-based letters in any order; duplicates and 0 are rejected.
    pub fn from_indices(indices: &[usize]) -> Result<Self> {
        let mut mask = 0u32;
        for &i in indices {
            if i == 0 || i > MAX_LETTERS {
                return Err(SpinorError::IndexOutOfRange { index: i, n: MAX_LETTERS });
            }
            let bit = 1u32 << (i - 1);
            if mask & bit != 0 {
                return Err(SpinorError::OutOfRange(format!("duplicate index {i}")));
            }
            mask |= bit;
        }
        Ok(IndexSet(mask))
    }

    /// `[m] = {1, ..., m}`.
    pub fn prefix(m: usize) -> Self {
        assert!(m <= MAX_LETTERS);
        IndexSet(((1u64 << m) - 1) as u32)
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_even(self) -> bool {
        self.len().is_multiple_of(2)
    }

    /// 1-based membership test.
    pub fn contains(self, i: usize) -> bool {
        i >= 1 && self.0 & (1 << (i - 1)) != 0
    }

    /// Largest letter, or 0 for the empty set.
    pub fn max_letter(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    pub fn within(self, n: usize) -> bool {
        self.max_letter() <= n
    }

    pub fn indices(self) -> Vec<usize> {
        (1..=32).filter(|&i| self.contains(i)).collect()
    }

    pub fn with(self, i: usize) -> Self {
        IndexSet(self.0 | (1 << (i - 1)))
    }

    pub fn without(self, i: usize) -> Self {
        IndexSet(self.0 & !(1 << (i - 1)))
    }

    pub fn union(self, o: Self) -> Self {
        IndexSet(self.0 | o.0)
    }

    pub fn intersects(self, o: Self) -> bool {
        self.0 & o.0 != 0
    }

    pub fn is_superset(self, o: Self) -> bool {
        self.0 & o.0 == o.0
    }

    pub fn symmetric_difference(self, o: Self) -> Self {
        IndexSet(self.0 ^ o.0)
    }

    /// Number of elements strictly smaller than letter `j`.
    pub fn count_below(self, j: usize) -> usize {
        (self.0 & ((1u32 << (j - 1)) - 1)).count_ones() as usize
    }

    /// Sign of `e_I ∧ e_J` for disjoint `I = self`, `J = o`: one transposition
    /// for every pair `i ∈ I`, `j ∈ J` with `i > j`.
    pub fn wedge_sign(self, o: Self) -> bool {
        let mut inversions = 0;
        let mut rest = o.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            rest &= rest - 1;
            inversions += (self.0 >> (j + 1)).count_ones();
        }
        inversions % 2 == 1
    }

    pub fn shift_down(self, m: usize) -> Self {
        IndexSet(self.0 >> m)
    }

    pub fn shift_up(self, m: usize) -> Self {
        IndexSet(self.0 << m)
    }

    /// All subsets of `[n]` of the given parity, in mask order.
    pub fn all_with_parity(n: usize, even: bool) -> impl Iterator<Item = IndexSet> {
        (0u32..(1u32 << n)).map(IndexSet).filter(move |s| s.is_even() == even)
    }

    /// Position of this set among same-parity subsets of `[n]` in mask order.
    ///
    /// Dropping bit 0 is a monotone bijection from one parity class onto all
    /// masks on `n - 1` bits, so the position is just `mask >> 1`.
    pub fn parity_rank(self) -> usize {
        (self.0 >> 1) as usize
    }

    /// Inverse of [`IndexSet::parity_rank`].
    pub fn from_parity_rank(k: usize, even: bool) -> Self {
        let rest = (k as u32) << 1;
        let odd_rest = rest.count_ones() % 2 == 1;
        IndexSet(rest | (odd_rest == even) as u32)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices().iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let s = IndexSet::from_indices(&[3, 1]).unwrap();
        assert_eq!(s.indices(), vec![1, 3]);
        assert!(IndexSet::from_indices(&[1, 1]).is_err());
        assert!(IndexSet::from_indices(&[0]).is_err());
        assert_eq!(IndexSet::prefix(4).indices(), vec![1, 2, 3, 4]);
        assert_eq!(s.to_string(), "{1,3}");
    }

    #[test]
    fn wedge_signs() {
        let e1 = IndexSet::from_indices(&[1]).unwrap();
        let e2 = IndexSet::from_indices(&[2]).unwrap();
        assert!(!e1.wedge_sign(e2));
        assert!(e2.wedge_sign(e1));
        let e12 = IndexSet::from_indices(&[1, 2]).unwrap();
        let e34 = IndexSet::from_indices(&[3, 4]).unwrap();
        assert!(!e12.wedge_sign(e34));
        assert!(!e34.wedge_sign(e12));
        let e13 = IndexSet::from_indices(&[1, 3]).unwrap();
        assert!(e13.wedge_sign(e2));
    }

    #[test]
    fn parity_rank_roundtrip() {
        for even in [true, false] {
            let all: Vec<IndexSet> = IndexSet::all_with_parity(6, even).collect();
            assert_eq!(all.len(), 32);
            for (k, s) in all.iter().enumerate() {
                assert_eq!(s.parity_rank(), k);
                assert_eq!(IndexSet::from_parity_rank(k, even), *s);
            }
        }
    }
}
