//! Sidon set generators, certificates and gap pruning.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{param, Result};
use crate::seqcore::rep_series;
use crate::set::IntegerSet;

/// First term of [`greedy_sidon`].
pub const GREEDY_START: u64 = 1;

/// Outcome of an exhaustive `R_{A,2}` scan over `0..=verified_horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SidonCertificate {
    pub verified_horizon: u64,
    pub max_rep: u64,
    /// Smallest `n` attaining `max_rep`.
    pub argmax: u64,
}

impl SidonCertificate {
    pub fn is_sidon(&self) -> bool {
        self.max_rep <= 2
    }
}

/// The first `count` terms of the greedy Sidon sequence starting at 1
/// (`1, 2, 4, 8, 13, 21, 31, 45, …`).
pub fn greedy_sidon(count: usize) -> Result<IntegerSet> {
    if count == 0 {
        return Err(param("count must be at least 1"));
    }
    // A set is Sidon iff all positive differences are distinct.
    let mut terms: Vec<u64> = vec![GREEDY_START];
    let mut used = vec![false; 64];
    let mut candidate = GREEDY_START;
    while terms.len() < count {
        candidate += 1;
        let fresh = terms.iter().all(|&t| {
            let d = (candidate - t) as usize;
            d >= used.len() || !used[d]
        });
        if !fresh {
            continue;
        }
        if candidate as usize >= used.len() {
            used.resize(2 * candidate as usize, false);
        }
        for &t in &terms {
            used[(candidate - t) as usize] = true;
        }
        terms.push(candidate);
    }
    IntegerSet::new(terms)
}

/// `{2·p·i + (i² mod p) : 0 ≤ i < p}`, a `p`-element Sidon set in `[0, 2p²)`.
pub fn algebraic_sidon(p: u64) -> Result<IntegerSet> {
    if !is_prime(p) {
        return Err(param("algebraic Sidon generator needs a prime"));
    }
    let elements = (0..p)
        .map(|i| {
            2u64.checked_mul(p)
                .and_then(|x| x.checked_mul(i))
                .and_then(|x| x.checked_add((u128::from(i) * u128::from(i) % u128::from(p)) as u64))
                .ok_or_else(|| param("prime too large"))
        })
        .collect::<Result<Vec<_>>>()?;
    IntegerSet::new(elements)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Scans `R_{A,2}(n)` for all `n ≤ 2·A.bound()`.
pub fn is_sidon(a: &IntegerSet) -> Result<SidonCertificate> {
    let horizon = a.bound().saturating_mul(2);
    let rep = rep_series(a, 2, horizon)?;
    let (argmax, max_rep) = rep
        .values()
        .iter()
        .copied()
        .enumerate()
        .fold((0usize, 0u64), |best, (n, v)| if v > best.1 { (n, v) } else { best });
    Ok(SidonCertificate {
        verified_horizon: horizon,
        max_rep,
        argmax: argmax as u64,
    })
}

/// Removes both endpoints of every pair of elements at distance `≤ threshold`.
pub fn prune_gaps(s: &IntegerSet, threshold: u64) -> IntegerSet {
    // Some pair at distance ≤ t contains x iff a neighbour of x is that close.
    let els = s.elements();
    let kept = els
        .iter()
        .enumerate()
        .filter(|&(i, &x)| {
            let left_close = i > 0 && x - els[i - 1] <= threshold;
            let right_close = i + 1 < els.len() && els[i + 1] - x <= threshold;
            !(left_close || right_close)
        })
        .map(|(_, &x)| x)
        .collect();
    IntegerSet::from_sorted_unchecked(kept, s.bound())
}

/// Number of unordered pairs at distance `≤ threshold`.
pub fn close_pair_count(s: &IntegerSet, threshold: u64) -> u64 {
    let els = s.elements();
    let mut right = 0usize;
    let mut pairs = 0u64;
    for (i, &x) in els.iter().enumerate() {
        right = right.max(i);
        while right + 1 < els.len() && els[right + 1] - x <= threshold {
            right += 1;
        }
        pairs += (right - i) as u64;
    }
    pairs
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[u64]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    /// Direct greedy: try every candidate against all pairwise sums.
    fn brute_greedy(count: usize) -> Vec<u64> {
        let mut terms = vec![1u64];
        let mut c = 1u64;
        while terms.len() < count {
            c += 1;
            let mut trial = terms.clone();
            trial.push(c);
            let mut sums = Vec::new();
            for i in 0..trial.len() {
                for j in i..trial.len() {
                    sums.push(trial[i] + trial[j]);
                }
            }
            let n = sums.len();
            sums.sort_unstable();
            sums.dedup();
            if sums.len() == n {
                terms = trial;
            }
        }
        terms
    }

    #[test]
    fn greedy_examples() {
        assert_eq!(greedy_sidon(4).unwrap().elements(), &[1, 2, 4, 8]);
        assert_eq!(
            greedy_sidon(8).unwrap().elements(),
            &[1, 2, 4, 8, 13, 21, 31, 45]
        );
        assert_eq!(greedy_sidon(1).unwrap().elements(), &[1]);
        assert!(greedy_sidon(0).is_err());
        assert_eq!(greedy_sidon(40).unwrap().elements(), brute_greedy(40).as_slice());
    }

    #[test]
    fn algebraic_examples() {
        assert_eq!(algebraic_sidon(5).unwrap().elements(), &[0, 11, 24, 34, 41]);
        assert_eq!(algebraic_sidon(2).unwrap().elements(), &[0, 5]);
        assert_eq!(algebraic_sidon(3).unwrap().elements(), &[0, 7, 13]);
        assert!(algebraic_sidon(9).is_err());
        assert!(algebraic_sidon(1).is_err());
        for p in [7, 11, 13, 31] {
            assert!(is_sidon(&algebraic_sidon(p).unwrap()).unwrap().is_sidon());
        }
    }

    #[test]
    fn certificate_examples() {
        let c = is_sidon(&set(&[1, 2, 4, 8])).unwrap();
        assert_eq!((c.max_rep, c.is_sidon()), (2, true));
        let c = is_sidon(&set(&[1, 2, 3])).unwrap();
        assert_eq!((c.max_rep, c.argmax, c.is_sidon()), (3, 4, false));
        let c = is_sidon(&set(&[7])).unwrap();
        assert_eq!((c.max_rep, c.is_sidon()), (1, true));
        assert!(is_sidon(&IntegerSet::empty(0)).unwrap().is_sidon());
    }

    #[test]
    fn prune_examples() {
        let s = set(&[1, 2, 5, 11, 22]);
        assert_eq!(prune_gaps(&s, 4).elements(), &[11, 22]);
        assert_eq!(prune_gaps(&s, 0), s);
        let s = set(&[0, 100]);
        assert_eq!(prune_gaps(&s, 99).elements(), &[0, 100]);
        assert_eq!(close_pair_count(&set(&[1, 2, 5, 11, 22]), 4), 3);
    }

    proptest! {
        #[test]
        fn pruning_properties(raw in proptest::collection::btree_set(0u64..500, 0..60), t in 0u64..40) {
            let s = IntegerSet::new(raw.into_iter().collect()).unwrap();
            let p = prune_gaps(&s, t);
            prop_assert!(p.min_gap().is_none_or(|g| g > t));
            prop_assert!(p.iter().all(|x| s.contains(x)));
            prop_assert!(p.len() as u64 + 2 * close_pair_count(&s, t) >= s.len() as u64);
            // Removal set equals the union over violating pairs.
            let els = s.elements();
            for &x in els {
                let close = els.iter().any(|&y| y != x && x.abs_diff(y) <= t);
                prop_assert_eq!(p.contains(x), !close);
            }
        }

        #[test]
        fn pruning_keeps_sidon(count in 1usize..60, t in 0u64..200) {
            let s = greedy_sidon(count).unwrap();
            prop_assert!(is_sidon(&prune_gaps(&s, t)).unwrap().is_sidon());
        }
    }
}
