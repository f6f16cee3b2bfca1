//! Counting, characteristic and representation functions, finite
//! differences and block statistics.
//!
//! All quantities are exact. Arguments below zero follow the convention
//! `χ_A(n) = R_A(n) = 0` for `n < 0`.

use alloc::vec::Vec;

use crate::conv::{self, Strategy};
use crate::error::{param, Error, Result};
use crate::set::{IntegerSet, WeightVector};

/// `R_{A,k}(0..=N)`: the number of ordered `k`-tuples of elements summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSeries {
    k: u32,
    values: Vec<u64>,
}

impl RepSeries {
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn horizon(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    /// `R(n)` with `R(n) = 0` for negative `n`; `None` past the horizon.
    pub fn get(&self, n: i64) -> Option<u64> {
        if n < 0 {
            Some(0)
        } else {
            self.values.get(n as usize).copied()
        }
    }

    pub fn max(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    /// Appends `extra` zeros. Only meaningful when the series already covers
    /// the full support of a finite set (horizon `k · max(A)` or beyond).
    pub fn zero_extended(&self, extra: usize) -> Self {
        let mut values = self.values.clone();
        values.resize(values.len() + extra, 0);
        Self { k: self.k, values }
    }
}

/// `A(n) = #{a ∈ A : a ≤ n}`
pub fn counting_function(a: &IntegerSet, n: u64) -> Result<u64> {
    a.check_horizon(n)?;
    Ok(a.elements().partition_point(|&x| x <= n) as u64)
}

/// `χ_A(n)`, which is 0 for every negative `n`.
pub fn chi(a: &IntegerSet, n: i64) -> Result<u8> {
    if n < 0 {
        return Ok(0);
    }
    a.check_horizon(n as u64)?;
    Ok(u8::from(a.contains(n as u64)))
}

/// `R_{A,k}(n)` for `0 ≤ n ≤ horizon`, by `k-1` exact self-convolutions of
/// the characteristic vector.
pub fn rep_series(a: &IntegerSet, k: u32, horizon: u64) -> Result<RepSeries> {
    rep_series_with(a, k, horizon, Strategy::Auto)
}

pub fn rep_series_with(
    a: &IntegerSet,
    k: u32,
    horizon: u64,
    strategy: Strategy,
) -> Result<RepSeries> {
    if k < 2 {
        return Err(param("representation functions need k >= 2 addends"));
    }
    let limit = a.bound().saturating_mul(u64::from(k));
    if horizon > limit {
        return Err(Error::Horizon {
            requested: horizon,
            bound: limit,
        });
    }
    let len = usize::try_from(horizon)
        .ok()
        .and_then(|h| h.checked_add(1))
        .ok_or_else(|| param("horizon too large for this platform"))?;
    let indicator: Vec<u64> = a
        .indicator(horizon.min(a.bound()))
        .into_iter()
        .map(u64::from)
        .collect();
    let mut values = indicator.clone();
    for _ in 1..k {
        values = conv::convolve(&values, &indicator, len, strategy)?;
    }
    values.resize(len, 0);
    Ok(RepSeries { k, values })
}

/// `l`-th forward difference `Δ_l s_n`; the result is `l` entries shorter.
pub fn delta(series: &[i64], order: usize) -> Result<Vec<i64>> {
    if order == 0 {
        return Err(param("difference order must be at least 1"));
    }
    if series.len() <= order {
        return Err(Error::Length {
            len: series.len(),
            order,
        });
    }
    let mut s = series.to_vec();
    for _ in 0..order {
        s = s
            .windows(2)
            .map(|w| w[1].checked_sub(w[0]).ok_or(Error::Overflow))
            .collect::<Result<_>>()?;
    }
    Ok(s)
}

/// `B(A, N)`: block starts `n ≤ N` with `n ∈ A` and `n-1 ∉ A`.
pub fn block_count(a: &IntegerSet, n: u64) -> Result<u64> {
    a.check_horizon(n)?;
    let els = a.elements();
    let upto = els.partition_point(|&x| x <= n);
    let starts = els[..upto]
        .iter()
        .enumerate()
        .filter(|&(i, &x)| i == 0 || els[i - 1] + 1 != x)
        .count();
    Ok(starts as u64)
}

/// `Σ_i λ_i χ_A(m - i)`
pub fn weighted_window(a: &IntegerSet, lam: &WeightVector, m: u64) -> Result<i64> {
    a.check_horizon(m)?;
    lam.weights()
        .iter()
        .enumerate()
        .take_while(|&(i, _)| i as u64 <= m)
        .filter(|&(i, _)| a.contains(m - i as u64))
        .try_fold(0i64, |acc, (_, &w)| acc.checked_add(w).ok_or(Error::Overflow))
}

/// `B(A, λ, n) = #{0 ≤ m ≤ n : Σ_i λ_i χ_A(m - i) ≠ 0}`
pub fn weighted_block_count(a: &IntegerSet, lam: &WeightVector, n: u64) -> Result<u64> {
    Ok(*weighted_block_counts(a, lam, n)?
        .last()
        .expect("series covers 0..=n"))
}

/// `B(A, λ, m)` for every `0 ≤ m ≤ n`.
pub fn weighted_block_counts(a: &IntegerSet, lam: &WeightVector, n: u64) -> Result<Vec<u64>> {
    a.check_horizon(n)?;
    let indicator = a.indicator(n);
    let mut count = 0u64;
    Ok((0..indicator.len())
        .map(|m| {
            if lam.window(&indicator, m) != 0 {
                count += 1;
            }
            count
        })
        .collect())
}

/// `L(n) = Σ_i λ_i R(n - i)`, exact.
pub fn weighted_rep(lam: &WeightVector, rep: &RepSeries, n: u64) -> Result<i64> {
    if n > rep.horizon() {
        return Err(Error::Horizon {
            requested: n,
            bound: rep.horizon(),
        });
    }
    let mut acc = 0i128;
    for (i, &w) in lam.weights().iter().enumerate() {
        let Some(m) = n.checked_sub(i as u64) else {
            break;
        };
        acc += i128::from(w) * i128::from(rep.values[m as usize]);
    }
    i64::try_from(acc).map_err(|_| Error::Overflow)
}

/// `L(n)` for every `0 ≤ n ≤ rep.horizon()`.
pub fn weighted_rep_series(lam: &WeightVector, rep: &RepSeries) -> Result<Vec<i64>> {
    (0..=rep.horizon()).map(|n| weighted_rep(lam, rep, n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::conv::Strategy as Route;
    use proptest::prelude::*;
    use proptest::strategy::Strategy;

    fn set(v: &[u64]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    fn lam(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    /// Ordered k-tuples summing to n, by direct enumeration.
    fn brute_rep(a: &[u64], k: u32, n: u64) -> u64 {
        if k == 0 {
            return u64::from(n == 0);
        }
        a.iter()
            .filter(|&&x| x <= n)
            .map(|&x| brute_rep(a, k - 1, n - x))
            .sum()
    }

    #[test]
    fn counting_function_examples() {
        assert_eq!(counting_function(&IntegerSet::empty(5), 5), Ok(0));
        assert_eq!(counting_function(&set(&[1, 2, 3, 7, 8, 10]), 8), Ok(5));
        assert_eq!(counting_function(&set(&[0]), 0), Ok(1));
        assert!(matches!(
            counting_function(&set(&[0, 3]), 4),
            Err(Error::Horizon { .. })
        ));
    }

    #[test]
    fn chi_examples() {
        let a = set(&[2, 3]);
        assert_eq!(chi(&a, 2), Ok(1));
        assert_eq!(chi(&a, -1), Ok(0));
        assert_eq!(chi(&a, 1), Ok(0));
        assert!(chi(&a, 4).is_err());
    }

    #[test]
    fn rep_series_examples() {
        let r = rep_series(&set(&[0, 1]), 2, 2).unwrap();
        assert_eq!(r.values(), &[1, 2, 1]);
        let r = rep_series(&set(&[0, 1, 2, 4]), 2, 4).unwrap();
        assert_eq!(r.values()[4], 3);
        assert_eq!(r.values()[4], brute_rep(&[0, 1, 2, 4], 2, 4));
        let r = rep_series(&set(&[0, 1]), 3, 1).unwrap();
        assert_eq!(r.values()[1], 3);
        assert_eq!(brute_rep(&[0, 1], 3, 1), 3);
        assert_eq!(r.get(-1), Some(0));
    }

    #[test]
    fn rep_series_errors() {
        assert!(rep_series(&set(&[0, 1]), 1, 1).is_err());
        assert!(matches!(
            rep_series(&set(&[0, 1]), 2, 3),
            Err(Error::Horizon { .. })
        ));
    }

    #[test]
    fn rep_series_overflow_is_an_error() {
        // R_{A,k}(n) for A = [0, 40] grows like 41^(k-1); k = 13 exceeds 2^64.
        let a = IntegerSet::new((0..=40).collect()).unwrap();
        assert!(rep_series(&a, 11, 40 * 11).is_ok());
        for s in [Route::Schoolbook, Route::Transform, Route::Auto] {
            assert_eq!(rep_series_with(&a, 14, 40 * 14, s), Err(Error::Overflow));
        }
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&[1, 2, 1, 0], 1).unwrap(), vec![1, -1, -1]);
        assert_eq!(delta(&[0, 1, 4, 9, 16], 2).unwrap(), vec![2, 2, 2]);
        assert_eq!(delta(&[7, 7, 7, 7], 1).unwrap(), vec![0, 0, 0]);
        assert_eq!(
            delta(&[1, 2], 2),
            Err(Error::Length { len: 2, order: 2 })
        );
        assert_eq!(delta(&[i64::MIN, 1], 1), Err(Error::Overflow));
    }

    #[test]
    fn block_count_examples() {
        assert_eq!(block_count(&set(&[1, 2, 3, 7, 8, 10]), 10), Ok(3));
        assert_eq!(block_count(&set(&(0..=9).collect::<Vec<_>>()), 9), Ok(1));
        assert_eq!(block_count(&IntegerSet::empty(5), 5), Ok(0));
    }

    #[test]
    fn weighted_block_count_examples() {
        let a = IntegerSet::with_bound(vec![2, 3, 5], 6).unwrap();
        assert_eq!(weighted_block_count(&a, &lam(&[-1, 1]), 6), Ok(4));
        let b = set(&[1, 4, 5, 9, 12]);
        for n in 0..=12 {
            assert_eq!(
                weighted_block_count(&b, &lam(&[1]), n),
                counting_function(&b, n)
            );
        }
        let c = IntegerSet::with_bound(vec![0], 1).unwrap();
        assert_eq!(weighted_block_count(&c, &lam(&[1, 1]), 1), Ok(2));
        assert!(weighted_block_count(&set(&[2, 3, 5]), &lam(&[-1, 1]), 6).is_err());
    }

    #[test]
    fn weighted_rep_examples() {
        let r = rep_series(&set(&[0, 1]), 2, 2).unwrap();
        assert_eq!(weighted_rep(&lam(&[1, -1]), &r, 1), Ok(1));
        assert_eq!(weighted_rep(&lam(&[1, -1]), &r, 2), Ok(-1));
        assert!(weighted_rep(&lam(&[1, -1]), &r, 3).is_err());

        let a = set(&[0, 3, 4, 9]);
        let r = rep_series(&a, 2, 18).unwrap();
        let shift = lam(&[0, 0, 0, 1]);
        for n in 0..=18u64 {
            let expected = r.get(n as i64 - 3).unwrap() as i64;
            assert_eq!(weighted_rep(&shift, &r, n), Ok(expected));
        }
    }

    fn arb_set(max: u64) -> impl Strategy<Value = IntegerSet> {
        proptest::collection::btree_set(0..=max, 0..40)
            .prop_map(|s| IntegerSet::new(s.into_iter().collect()).unwrap())
    }

    proptest! {
        #[test]
        fn strategies_agree(a in arb_set(300), k in 2u32..4) {
            let h = a.bound() * u64::from(k);
            let school = rep_series_with(&a, k, h, Route::Schoolbook).unwrap();
            let fft = rep_series_with(&a, k, h, Route::Transform).unwrap();
            prop_assert_eq!(&school, &fft);
            for n in (0..=h).step_by(7) {
                prop_assert_eq!(school.values()[n as usize], brute_rep(a.elements(), k, n));
            }
        }

        #[test]
        fn delta_composes(s in proptest::collection::vec(-1000i64..1000, 3..30), l in 2usize..3) {
            let direct = delta(&s, l).unwrap();
            let stepwise = delta(&delta(&s, l - 1).unwrap(), 1).unwrap();
            prop_assert_eq!(direct, stepwise);
        }

        #[test]
        fn delta_kills_low_degree_polynomials(c in proptest::collection::vec(-20i64..20, 1..4), extra in 0usize..2) {
            let deg = c.len() - 1;
            let s: Vec<i64> = (0..12i64)
                .map(|n| c.iter().rev().fold(0, |acc, &ci| acc * n + ci))
                .collect();
            let d = delta(&s, deg + 1 + extra).unwrap();
            prop_assert!(d.iter().all(|&x| x == 0));
        }
    }
}
