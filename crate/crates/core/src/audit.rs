//! Finite-window proxies of the limsup inequalities.
//!
//! Each audit compares, for `1 ≤ n ≤ horizon`,
//!
//! ```text
//! lhs(n) = |Σ_i λ_i R_A(n - i)|        rhs(n) = c · (B(A, λ, n) / √n)^θ
//! ```
//!
//! and reports the running suprema of both sides over the window. A lower-bound
//! audit holds when `sup lhs ≥ sup rhs`, an upper-bound audit when
//! `sup lhs ≤ sup rhs`, in both cases up to [`REL_TOL`]. These are proxies: a
//! finite window says nothing definite about a limsup, and reports carry
//! the full series so they can be re-windowed.

use alloc::vec::Vec;

use crate::construct::{theorem4_bound, Relation, VerifiedBound};
use crate::error::{param, Error, Result};
use crate::seqcore::{rep_series, weighted_block_counts, weighted_rep_series};
use crate::set::{IntegerSet, WeightVector};

/// Relative tolerance for floating-point proxy comparisons.
pub const REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem {
    T1,
    T2,
    T3,
    T4,
    P1Scan,
}

impl Theorem {
    pub fn name(self) -> &'static str {
        match self {
            Theorem::T1 => "T1",
            Theorem::T2 => "T2",
            Theorem::T3 => "T3",
            Theorem::T4 => "T4",
            Theorem::P1Scan => "P1-scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// Proxy holds when `lhs_sup ≥ rhs_sup`.
    Lower,
    /// Proxy holds when `lhs_sup ≤ rhs_sup`.
    Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub theorem: Theorem,
    pub lambda: WeightVector,
    pub horizon: u64,
    pub exponent: f64,
    pub constant: f64,
    pub direction: Direction,
    /// `lhs_series[n - 1] = |L(n)|` for `1 ≤ n ≤ horizon`.
    pub lhs_series: Vec<u64>,
    /// `None` where the right side is undefined (only for T4).
    pub rhs_series: Vec<Option<f64>>,
    pub lhs_sup: u64,
    pub rhs_sup: f64,
    pub margin: f64,
    pub holds: bool,
    /// Entries excluded from `rhs_sup` because the right side is undefined there.
    pub skipped: u64,
    /// A finite, fully checkable bound attached to the audit (T2, T4).
    pub finite_bound: Option<VerifiedBound>,
}

impl AuditReport {
    /// Running suprema `(sup_{m≤n} lhs, sup_{m≤n} rhs)` for every `n` in the window.
    pub fn running_sups(&self) -> Vec<(u64, f64)> {
        let mut l = 0u64;
        let mut r = 0.0f64;
        self.lhs_series
            .iter()
            .zip(&self.rhs_series)
            .map(|(&x, y)| {
                l = l.max(x);
                if let Some(y) = *y {
                    r = r.max(y);
                }
                (l, r)
            })
            .collect()
    }
}

/// Per-`n` pieces shared by all audits.
struct Window {
    lhs: Vec<u64>,
    /// `B(A, λ, n) / √n`
    base: Vec<f64>,
    blocks: Vec<u64>,
}

fn window(a: &IntegerSet, lam: &WeightVector, horizon: u64) -> Result<Window> {
    if horizon == 0 {
        return Err(param("audit horizon must be at least 1"));
    }
    a.check_horizon(horizon)?;
    let rep = rep_series(a, 2, horizon)?;
    let l = weighted_rep_series(lam, &rep)?;
    let b = weighted_block_counts(a, lam, horizon)?;
    let lhs = l[1..].iter().map(|x| x.unsigned_abs()).collect();
    let blocks: Vec<u64> = b[1..].to_vec();
    let base = blocks
        .iter()
        .enumerate()
        .map(|(i, &bn)| bn as f64 / libm::sqrt((i + 1) as f64))
        .collect();
    Ok(Window { lhs, base, blocks })
}

fn compare(direction: Direction, lhs: f64, rhs: f64) -> bool {
    match direction {
        Direction::Lower => lhs >= rhs * (1.0 - REL_TOL),
        Direction::Upper => lhs <= rhs * (1.0 + REL_TOL),
    }
}

#[allow(clippy::too_many_arguments)]
fn assemble(
    theorem: Theorem,
    lam: &WeightVector,
    horizon: u64,
    exponent: f64,
    constant: f64,
    direction: Direction,
    w: Window,
    rhs_series: Vec<Option<f64>>,
    finite_bound: Option<VerifiedBound>,
) -> AuditReport {
    let lhs_sup = w.lhs.iter().copied().max().unwrap_or(0);
    let rhs_sup = rhs_series.iter().flatten().copied().fold(0.0, f64::max);
    let skipped = rhs_series.iter().filter(|r| r.is_none()).count() as u64;
    AuditReport {
        theorem,
        lambda: lam.clone(),
        horizon,
        exponent,
        constant,
        direction,
        lhs_series: w.lhs,
        rhs_series,
        lhs_sup,
        rhs_sup,
        margin: lhs_sup as f64 - rhs_sup,
        holds: compare(direction, lhs_sup as f64, rhs_sup),
        skipped,
        finite_bound,
    }
}

fn power_rhs(w: &Window, constant: f64, exponent: f64) -> Vec<Option<f64>> {
    w.base
        .iter()
        .zip(&w.blocks)
        .map(|(&b, &count)| {
            Some(if count == 0 {
                0.0
            } else {
                constant * libm::pow(b, exponent)
            })
        })
        .collect()
}

/// Lower bound with `θ = 2`, `c = |Σλ_i| / (2(d+1)²)`.
pub fn audit_theorem1(a: &IntegerSet, lam: &WeightVector, horizon: u64) -> Result<AuditReport> {
    let w = window(a, lam, horizon)?;
    let d1 = (lam.degree() + 1) as f64;
    let c = lam.sum().unsigned_abs() as f64 / (2.0 * d1 * d1);
    let rhs = power_rhs(&w, c, 2.0);
    Ok(assemble(Theorem::T1, lam, horizon, 2.0, c, Direction::Lower, w, rhs, None))
}

/// Upper bound with `θ = 2`, `c = 4Σ|λ_i|`, plus the finite cap
/// `max |L(n)| ≤ 2Σ|λ_i|(N+1)²` for shifted-union sets built with `N` copies.
pub fn audit_theorem2_bound(
    a: &IntegerSet,
    lam: &WeightVector,
    copies: u64,
    horizon: u64,
) -> Result<AuditReport> {
    if lam.sum() <= 0 {
        return Err(Error::Hypothesis(alloc::format!(
            "weights must have a positive sum, got {}",
            lam.sum()
        )));
    }
    let w = window(a, lam, horizon)?;
    let c = 4.0 * lam.abs_sum() as f64;
    let rhs = power_rhs(&w, c, 2.0);
    let lhs_sup = w.lhs.iter().copied().max().unwrap_or(0);
    let cap = lam
        .abs_sum()
        .checked_mul(2 * (copies + 1) * (copies + 1))
        .ok_or(Error::Overflow)?;
    let finite = VerifiedBound::exact("max_weighted_rep", Relation::AtMost, cap, lhs_sup);
    Ok(assemble(Theorem::T2, lam, horizon, 2.0, c, Direction::Upper, w, rhs, Some(finite)))
}

/// `√2 / (e² Σ|λ_i|)`
pub fn theorem3_constant(lam: &WeightVector) -> f64 {
    core::f64::consts::SQRT_2 / (libm::exp(2.0) * lam.abs_sum() as f64)
}

/// Lower bound with `θ = 1`, `c = √2/(e² Σ|λ_i|)`; requires `Σλ_i = 0`.
pub fn audit_theorem3(a: &IntegerSet, lam: &WeightVector, horizon: u64) -> Result<AuditReport> {
    require_balanced(lam)?;
    let w = window(a, lam, horizon)?;
    let c = theorem3_constant(lam);
    let rhs = power_rhs(&w, c, 1.0);
    Ok(assemble(Theorem::T3, lam, horizon, 1.0, c, Direction::Lower, w, rhs, None))
}

/// `48 (d+1)^4 2^{3d+7.5} Σ|λ_i|`
pub fn theorem4_constant(lam: &WeightVector) -> f64 {
    let d = lam.degree() as f64;
    48.0 * libm::pow(d + 1.0, 4.0) * libm::exp2(3.0 * d + 7.5) * lam.abs_sum() as f64
}

/// Upper bound `c (B/√n)^{3/2} (ln(B/√n))^{1/2}`, defined only where
/// `B/√n > 1`, plus the finite cap `48dΣ|λ_i|(M(d+1))^{3/2}(ln M(d+1))^{1/2}`.
pub fn audit_theorem4_bound(
    a: &IntegerSet,
    lam: &WeightVector,
    m: u64,
    d: u64,
    horizon: u64,
) -> Result<AuditReport> {
    require_balanced(lam)?;
    if lam.degree() as u64 != d {
        return Err(param("weight vector must have exactly d+1 entries"));
    }
    if m == 0 || m.checked_mul(d + 1).is_none_or(|u| u < 2) {
        return Err(param("M(d+1) must be at least 2"));
    }
    let w = window(a, lam, horizon)?;
    let c = theorem4_constant(lam);
    let rhs = w
        .base
        .iter()
        .map(|&b| (b > 1.0).then(|| c * libm::pow(b, 1.5) * libm::sqrt(libm::log(b))))
        .collect();
    let lhs_sup = w.lhs.iter().copied().max().unwrap_or(0);
    let finite = VerifiedBound::real(
        "max_weighted_rep",
        Relation::AtMost,
        theorem4_bound(m, d, lam),
        lhs_sup,
    );
    Ok(assemble(Theorem::T4, lam, horizon, 1.5, c, Direction::Upper, w, rhs, Some(finite)))
}

fn require_balanced(lam: &WeightVector) -> Result<()> {
    if lam.sum() == 0 {
        Ok(())
    } else {
        Err(Error::Hypothesis(alloc::format!(
            "weights must sum to 0, got {}",
            lam.sum()
        )))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub theta: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentScan {
    pub lambda: WeightVector,
    pub horizon: u64,
    pub lhs_sup: u64,
    /// `sup_n B(A, λ, n)/√n` over the window.
    pub base_sup: f64,
    pub rows: Vec<ScanRow>,
}

/// `lhs_sup / (sup_n B(A,λ,n)/√n)^θ` for each `θ`. Exploratory only.
pub fn exponent_scan(
    a: &IntegerSet,
    lam: &WeightVector,
    horizon: u64,
    thetas: &[f64],
) -> Result<ExponentScan> {
    require_balanced(lam)?;
    if let Some(t) = thetas.iter().find(|t| !(0.0..=3.0).contains(*t)) {
        return Err(param(alloc::format!("exponent {t} outside [0, 3]")));
    }
    let w = window(a, lam, horizon)?;
    let lhs_sup = w.lhs.iter().copied().max().unwrap_or(0);
    let base_sup = w.base.iter().copied().fold(0.0, f64::max);
    if base_sup <= 0.0 {
        return Err(Error::Degenerate(
            "weighted block count vanishes on the whole window".into(),
        ));
    }
    let rows = thetas
        .iter()
        .map(|&theta| ScanRow {
            theta,
            ratio: lhs_sup as f64 / libm::pow(base_sup, theta),
        })
        .collect();
    Ok(ExponentScan {
        lambda: lam.clone(),
        horizon,
        lhs_sup,
        base_sup,
        rows,
    })
}

/// `I(N) = Σ_{n≥0} (Σ_i λ_i χ_A(n-i))² e^{-2n/N}` over the finite support of `A`.
pub fn parseval_energy(a: &IntegerSet, lam: &WeightVector, n: u64) -> Result<f64> {
    if n == 0 {
        return Err(param("N must be at least 1"));
    }
    let Some(top) = a.max() else {
        return Ok(0.0);
    };
    let end = top + lam.degree() as u64;
    let indicator = a.indicator(end);
    let scale = -2.0 / n as f64;
    let mut total = 0.0;
    for m in 0..indicator.len() {
        let w = i128::from(lam.window(&indicator, m));
        if w != 0 {
            total += (w * w) as f64 * libm::exp(scale * m as f64);
        }
    }
    Ok(total)
}

/// `e^{-2} B(A, λ, N)`, reading `A` as a finite set beyond its horizon.
pub fn parseval_lower_bound(a: &IntegerSet, lam: &WeightVector, n: u64) -> Result<f64> {
    let finite = a.extended(n);
    let b = *weighted_block_counts(&finite, lam, n)?
        .last()
        .expect("nonempty");
    Ok(libm::exp(-2.0) * b as f64)
}

/// `Σ_{n≥0} e^{-2n/N} = 1/(1 - e^{-2/N})`
pub fn geometric_weight_sum(n: u64) -> f64 {
    -1.0 / libm::expm1(-2.0 / n as f64)
}

/// The bound `N/2 + 1` on [`geometric_weight_sum`].
pub fn geometric_sum_bound(n: u64) -> f64 {
    n as f64 / 2.0 + 1.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seqcore::{block_count, counting_function, weighted_block_count};
    use alloc::vec;

    fn set(v: &[u64]) -> IntegerSet {
        IntegerSet::new(v.to_vec()).unwrap()
    }

    fn lam(v: &[i64]) -> WeightVector {
        WeightVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn theorem1_zero_sum_is_trivial() {
        let a = set(&[0, 1, 3, 7, 8, 12]);
        let r = audit_theorem1(&a, &lam(&[1, -1]), 12).unwrap();
        assert_eq!(r.constant, 0.0);
        assert!(r.rhs_series.iter().all(|x| *x == Some(0.0)));
        assert!(r.holds);
    }

    #[test]
    fn theorem1_single_weight() {
        let a = set(&[0, 2, 3, 9, 10, 11]);
        let r = audit_theorem1(&a, &lam(&[1]), 11).unwrap();
        assert_eq!(r.constant, 0.5);
        for n in 1..=11u64 {
            let an = counting_function(&a, n).unwrap() as f64;
            let expected = (an / libm::sqrt(n as f64)).powi(2) / 2.0;
            let got = r.rhs_series[n as usize - 1].unwrap();
            assert!((got - expected).abs() <= 1e-12 * expected.max(1.0));
        }
        let rep = rep_series(&a, 2, 11).unwrap();
        for n in 1..=11usize {
            assert_eq!(r.lhs_series[n - 1], rep.values()[n]);
        }
    }

    #[test]
    fn theorem3_examples() {
        let evens: Vec<u64> = (0..=10).map(|i| 2 * i).collect();
        let a = set(&evens);
        let r = audit_theorem3(&a, &lam(&[1, -1]), 20).unwrap();
        let rep = rep_series(&a, 2, 20).unwrap();
        for n in 1..=20i64 {
            let l = rep.get(n).unwrap() as i64 - rep.get(n - 1).unwrap() as i64;
            assert_eq!(r.lhs_series[n as usize - 1], l.unsigned_abs());
        }
        // Steps alternate in sign.
        assert!(r.lhs_series.iter().all(|&x| x > 0));

        let empty = IntegerSet::empty(10);
        let r = audit_theorem3(&empty, &lam(&[1, -1]), 10).unwrap();
        assert!(r.lhs_series.iter().all(|&x| x == 0));
        assert!(r.rhs_series.iter().all(|&x| x == Some(0.0)));
        assert!(r.holds);

        let c = theorem3_constant(&lam(&[1, -1]));
        assert!((c - 0.0957).abs() < 1e-4, "{c}");
        assert!(matches!(
            audit_theorem3(&a, &lam(&[1, 1]), 20),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn theorem2_examples() {
        let r = audit_theorem2_bound(&set(&[0]), &lam(&[1]), 1, 0);
        assert!(r.is_err());
        let a = IntegerSet::with_bound(vec![0], 1).unwrap();
        let r = audit_theorem2_bound(&a, &lam(&[1]), 1, 1).unwrap();
        // R(0) = 1 sits outside the n ≥ 1 window; R(1) = 0.
        assert_eq!(r.lhs_sup, 0);
        assert_eq!(audit_theorem2_bound(&a, &lam(&[2, 1]), 1, 1).unwrap().constant, 12.0);
        assert!(matches!(
            audit_theorem2_bound(&a, &lam(&[1, -1]), 1, 1),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn theorem4_constant_arithmetic() {
        let c = theorem4_constant(&lam(&[1, -1]));
        assert!((c / 2.224e6 - 1.0).abs() < 1e-3, "{c}");
    }

    #[test]
    fn theorem4_skips_small_bases() {
        let a = set(&[0, 1, 5, 6, 7, 20, 21, 40]);
        let r = audit_theorem4_bound(&a, &lam(&[1, -1]), 16, 1, 40).unwrap();
        for (i, rhs) in r.rhs_series.iter().enumerate() {
            let n = i as u64 + 1;
            let b = weighted_block_count(&a, &lam(&[1, -1]), n).unwrap() as f64;
            assert_eq!(rhs.is_some(), b / libm::sqrt(n as f64) > 1.0);
        }
        assert_eq!(r.skipped, r.rhs_series.iter().filter(|x| x.is_none()).count() as u64);
        assert!(r.skipped > 0);
    }

    #[test]
    fn scan_examples() {
        let a = set(&[0, 1, 5, 6, 7, 20, 21, 40]);
        let w = lam(&[1, -1]);
        let s = exponent_scan(&a, &w, 40, &[0.0, 1.0, 2.0]).unwrap();
        assert_eq!(s.rows[0].ratio, s.lhs_sup as f64);
        assert!(s.base_sup >= 1.0);
        assert!(s.rows[1].ratio >= s.rows[2].ratio);
        assert!(exponent_scan(&a, &w, 40, &[3.5]).is_err());
        assert!(matches!(
            exponent_scan(&IntegerSet::empty(9), &w, 9, &[1.0]),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn parseval_examples() {
        assert_eq!(parseval_energy(&IntegerSet::empty(3), &lam(&[1, -1]), 5), Ok(0.0));
        let e = parseval_energy(&set(&[0]), &lam(&[1]), 1).unwrap();
        assert_eq!(e, 1.0);
        assert!(e >= parseval_lower_bound(&set(&[0]), &lam(&[1]), 1).unwrap());
        // Two terms: λ=(1,-1), A={0}: w(0)=1, w(1)=-1.
        let e = parseval_energy(&set(&[0]), &lam(&[1, -1]), 2).unwrap();
        assert!((e - (1.0 + libm::exp(-1.0))).abs() < 1e-15);
    }

    #[test]
    fn geometric_bound_small_n() {
        for n in 1..=200 {
            assert!(geometric_weight_sum(n) < geometric_sum_bound(n));
        }
    }

    #[test]
    fn blocks_for_unit_difference_dominate_plain_blocks() {
        let a = set(&[1, 2, 3, 7, 8, 10]);
        for n in 0..=10 {
            assert!(
                weighted_block_count(&a, &lam(&[-1, 1]), n).unwrap() >= block_count(&a, n).unwrap()
            );
        }
    }
}
