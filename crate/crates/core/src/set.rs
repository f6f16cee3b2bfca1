use alloc::vec::Vec;

use crate::error::{param, Error, Result};

/// A finite truncation of a set of nonnegative integers.
///
/// Elements are stored strictly increasing. `bound` is the truncation horizon:
/// membership of every `n ≤ bound` is known exactly, and operations that would
/// need anything beyond it fail with [`Error::Horizon`]. By default the horizon
/// is the largest element; a set that is known to be empty on a longer range
/// can carry a larger horizon.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerSet {
    elements: Vec<u64>,
    bound: u64,
}

impl IntegerSet {
    /// Builds a set whose horizon is its largest element (0 when empty).
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        let bound = elements.last().copied().unwrap_or(0);
        Self::with_bound(elements, bound)
    }

    pub fn with_bound(elements: Vec<u64>, bound: u64) -> Result<Self> {
        if let Some(index) = elements.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::NotIncreasing { index: index + 1 });
        }
        if let Some(&last) = elements.last() {
            if last > bound {
                return Err(param("horizon is smaller than the largest element"));
            }
        }
        Ok(Self { elements, bound })
    }

    /// Sorts and deduplicates arbitrary input.
    pub fn from_unsorted(mut elements: Vec<u64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let bound = elements.last().copied().unwrap_or(0);
        Self { elements, bound }
    }

    pub fn empty(bound: u64) -> Self {
        Self {
            elements: Vec::new(),
            bound,
        }
    }

    pub(crate) fn from_sorted_unchecked(elements: Vec<u64>, bound: u64) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(elements.last().is_none_or(|&l| l <= bound));
        Self { elements, bound }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn into_elements(self) -> Vec<u64> {
        self.elements
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    /// Plain membership, without any horizon check.
    pub fn contains(&self, n: u64) -> bool {
        self.elements.binary_search(&n).is_ok()
    }

    /// The same elements with a longer horizon.
    ///
    /// Only sound when the caller knows the underlying set has no elements in
    /// `(self.bound(), bound]`, e.g. for sets that are finite by construction.
    pub fn extended(&self, bound: u64) -> Self {
        Self {
            elements: self.elements.clone(),
            bound: bound.max(self.bound),
        }
    }

    /// Fails unless `n` lies inside the truncation horizon.
    pub fn check_horizon(&self, n: u64) -> Result<()> {
        if n > self.bound {
            Err(Error::Horizon {
                requested: n,
                bound: self.bound,
            })
        } else {
            Ok(())
        }
    }

    /// Dense 0/1 characteristic vector on `[0, upto]`.
    pub fn indicator(&self, upto: u64) -> Vec<u8> {
        let mut out = alloc::vec![0u8; upto as usize + 1];
        for a in self.iter().take_while(|&a| a <= upto) {
            out[a as usize] = 1;
        }
        out
    }

    /// Smallest difference between consecutive elements.
    pub fn min_gap(&self) -> Option<u64> {
        self.elements.windows(2).map(|w| w[1] - w[0]).min()
    }
}

/// Integer weights `(λ_0, …, λ_d)` with at least one nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<i64>,
    sum: i64,
    abs_sum: u64,
}

impl WeightVector {
    pub fn new(weights: Vec<i64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(param("weight vector must have at least one entry"));
        }
        if weights.iter().all(|&w| w == 0) {
            return Err(param("weight vector must have a nonzero entry"));
        }
        let sum = weights
            .iter()
            .try_fold(0i64, |acc, &w| acc.checked_add(w))
            .ok_or(Error::Overflow)?;
        let abs_sum = weights
            .iter()
            .try_fold(0u64, |acc, &w| acc.checked_add(w.unsigned_abs()))
            .ok_or(Error::Overflow)?;
        Ok(Self {
            weights,
            sum,
            abs_sum,
        })
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Index `d` of the last weight.
    pub fn degree(&self) -> usize {
        self.weights.len() - 1
    }

    /// `Σ λ_i`
    pub fn sum(&self) -> i64 {
        self.sum
    }

    /// `Σ |λ_i|`
    pub fn abs_sum(&self) -> u64 {
        self.abs_sum
    }

    pub fn negated(&self) -> Result<Self> {
        let weights = self
            .weights
            .iter()
            .map(|w| w.checked_neg().ok_or(Error::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Self::new(weights)
    }

    /// `Σ_i λ_i χ(m - i)` for a dense indicator, with `χ(n) = 0` for `n < 0`.
    pub(crate) fn window(&self, indicator: &[u8], m: usize) -> i64 {
        self.weights
            .iter()
            .enumerate()
            .take(m + 1)
            .filter(|&(i, _)| indicator[m - i] != 0)
            .map(|(_, &w)| w)
            .sum()
    }
}
