//! Enumeration of the subsets `J ⊆ [n]` with their sizes and weight sums.
//!
//! Every inclusion-exclusion formula in [`crate::hilbert`] depends on `J`
//! only through `(|J|, |w_J|)`. Subsets are walked in Gray-code order, so
//! each step toggles a single index, and collected into a [`SubsetProfile`]
//! histogram that the formulas then sum over.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Default upper bound on `n` for `2^n` subset walks.
pub const DEFAULT_SUBSET_CAP: usize = 24;

pub fn ensure_subset_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        Err(Error::SubsetCapExceeded { count: n, cap })
    } else {
        Ok(())
    }
}

/// Calls `f(|J|, |w_J|)` once for every subset of indices, in Gray-code
/// order starting from the empty set.
pub fn for_each_subset(weights: &[i64], mut f: impl FnMut(usize, i64)) {
    let n = weights.len();
    assert!(n < 64, "subset enumeration over {n} indices");
    let mut size = 0usize;
    let mut sum = 0i64;
    let mut mask = 0u64;
    f(size, sum);
    for k in 1u64..(1u64 << n) {
        let bit = k.trailing_zeros() as usize;
        mask ^= 1 << bit;
        if mask & (1 << bit) != 0 {
            size += 1;
            sum += weights[bit];
        } else {
            size -= 1;
            sum -= weights[bit];
        }
        f(size, sum);
    }
}

const DENSE_LIMIT: i64 = 1 << 22;

/// Multiplicities of `(|J|, |w_J|)` over all `J ⊆ [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetProfile {
    counts: BTreeMap<(usize, i64), u64>,
}

impl SubsetProfile {
    pub fn new(weights: &[i64]) -> Self {
        let n = weights.len();
        let total: i64 = weights.iter().sum();
        let mut counts = BTreeMap::new();
        let width = total + 1;
        let cells = (n as i64 + 1).saturating_mul(width);
        if weights.iter().all(|&w| w >= 0) && cells <= DENSE_LIMIT {
            // dense table indexed by size * width + sum
            let mut dense = vec![0u64; cells as usize];
            for_each_subset(weights, |size, sum| dense[size * width as usize + sum as usize] += 1);
            for (i, &c) in dense.iter().enumerate().filter(|(_, &c)| c > 0) {
                counts.insert((i / width as usize, i as i64 % width), c);
            }
        } else {
            for_each_subset(weights, |size, sum| {
                *counts.entry((size, sum)).or_insert(0) += 1;
            });
        }
        Self { counts }
    }

    /// `(size, sum, multiplicity)` in increasing `(size, sum)` order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64, u64)> + '_ {
        self.counts.iter().map(|(&(size, sum), &count)| (size, sum, count))
    }

    pub fn total_subsets(&self) -> u64 {
        self.counts.values().sum()
    }
}
