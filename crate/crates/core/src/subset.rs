//! Subsets of a ground set `{1, .., k}` stored as bitmasks, bit `i` for element `i + 1`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest ground set a [`Subset`] can index.
pub const MAX_GROUND_SET: usize = 64;

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set `{1, .., size}`.
    pub fn full(size: usize) -> Subset {
        assert!(size <= MAX_GROUND_SET);
        if size == MAX_GROUND_SET {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << size) - 1)
        }
    }

    pub fn singleton(index: usize) -> Subset {
        Subset(1u64 << index)
    }

    /// Builds a subset from zero-based indices.
    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Subset {
        Subset(indices.into_iter().fold(0, |acc, i| acc | (1u64 << i)))
    }

    /// Builds a subset from one-based element labels, as printed in reports.
    pub fn from_labels<I: IntoIterator<Item = usize>>(labels: I) -> Subset {
        Self::from_indices(labels.into_iter().map(|l| l - 1))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 >> index & 1 == 1
    }

    pub fn with(self, index: usize) -> Subset {
        Subset(self.0 | 1u64 << index)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Errors unless every element lies in `{1, .., size}`.
    pub fn check_within(self, size: usize) -> Result<()> {
        if self.is_subset_of(Subset::full(size)) {
            Ok(())
        } else {
            Err(Error::InvalidSubset { subset: self.0, size })
        }
    }

    /// Zero-based indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// All subsets of `self`, in increasing bitmask order, starting with the empty set.
    pub fn submasks(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }

    /// Re-indexes `self` relative to the elements of `ground` that remain after removing
    /// `removed`: the j-th surviving element (ascending) becomes index j.
    pub fn compress(self, removed: Subset) -> Subset {
        let mut out = 0u64;
        let mut j = 0;
        for i in 0..64 {
            if removed.contains(i) {
                continue;
            }
            if self.contains(i) {
                out |= 1 << j;
            }
            j += 1;
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress`].
    pub fn expand(self, removed: Subset) -> Subset {
        let mut out = 0u64;
        let mut j = 0;
        for i in 0..64 {
            if removed.contains(i) {
                continue;
            }
            if self.contains(j) {
                out |= 1 << i;
            }
            j += 1;
            if j >= 64 {
                break;
            }
        }
        Subset(out)
    }
}

impl fmt::Display for Subset {
    /// Sorted one-based labels, e.g. `{1,3}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, i) in self.indices().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}
