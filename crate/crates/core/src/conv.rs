//! Exact truncated convolution of nonnegative integer sequences.
//!
//! Two routes produce bit-identical results:
//!
//! - **schoolbook**: sparse pair enumeration over the nonzero entries with
//!   checked arithmetic, cost `nnz(a) · nnz(b)`;
//! - **transform**: number-theoretic transforms modulo three NTT-friendly
//!   primes recombined by CRT. It is used only when a priori every output
//!   coefficient is smaller than the product of the moduli (`≈ 2^86`), so the
//!   recombined value is the exact integer; values above `u64::MAX` are then
//!   reported as overflow.
//!
//! [`Strategy::Auto`] picks whichever route is cheaper for the input.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Auto,
    Schoolbook,
    Transform,
}

const PRIMES: [u64; 3] = [998_244_353, 167_772_161, 469_762_049];
const ROOT: u64 = 3;
/// All three moduli admit transforms of this length.
const MAX_TRANSFORM_LOG: u32 = 23;

/// `c[n] = Σ_{i+j=n} a[i]·b[j]` for `n < len`.
pub fn convolve(a: &[u64], b: &[u64], len: usize, strategy: Strategy) -> Result<Vec<u64>> {
    if len == 0 {
        return Ok(Vec::new());
    }
    let a = &a[..a.len().min(len)];
    let b = &b[..b.len().min(len)];
    match strategy {
        Strategy::Schoolbook => schoolbook(a, b, len),
        Strategy::Transform => match transform(a, b, len) {
            Some(r) => r,
            None => schoolbook(a, b, len),
        },
        Strategy::Auto => {
            let nnz_a = a.iter().filter(|&&x| x != 0).count() as u128;
            let nnz_b = b.iter().filter(|&&x| x != 0).count() as u128;
            let size = transform_size(a.len() + b.len());
            let transform_cost = (size as u128) * u128::from(size.trailing_zeros().max(1)) * 9;
            if nnz_a * nnz_b <= transform_cost {
                schoolbook(a, b, len)
            } else {
                match transform(a, b, len) {
                    Some(r) => r,
                    None => schoolbook(a, b, len),
                }
            }
        }
    }
}

fn schoolbook(a: &[u64], b: &[u64], len: usize) -> Result<Vec<u64>> {
    let mut out = vec![0u64; len];
    let b_nz: Vec<(usize, u64)> = b
        .iter()
        .enumerate()
        .filter(|&(_, &v)| v != 0)
        .map(|(j, &v)| (j, v))
        .collect();
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for &(j, y) in &b_nz {
            let n = i + j;
            if n >= len {
                break;
            }
            let term = x.checked_mul(y).ok_or(Error::Overflow)?;
            out[n] = out[n].checked_add(term).ok_or(Error::Overflow)?;
        }
    }
    Ok(out)
}

fn transform_size(n: usize) -> usize {
    n.max(1).next_power_of_two()
}

/// `None` when the transform route cannot guarantee exactness.
fn transform(a: &[u64], b: &[u64], len: usize) -> Option<Result<Vec<u64>>> {
    if a.is_empty() || b.is_empty() {
        return Some(Ok(vec![0; len]));
    }
    let size = transform_size(a.len() + b.len() - 1);
    if size.trailing_zeros() > MAX_TRANSFORM_LOG {
        return None;
    }
    // Every coefficient is at most (Σa)·max(b); it must stay below Π p.
    let modulus: u128 = PRIMES.iter().map(|&p| u128::from(p)).product();
    let sum_a = a
        .iter()
        .try_fold(0u128, |acc, &x| acc.checked_add(u128::from(x)))?;
    let max_b = u128::from(b.iter().copied().max().unwrap_or(0));
    match sum_a.checked_mul(max_b) {
        Some(c) if c < modulus => {}
        _ => return None,
    }

    let residues: Vec<Vec<u64>> = PRIMES
        .iter()
        .map(|&p| convolve_mod(a, b, size, p))
        .collect();
    let out = (0..len)
        .map(|n| {
            if n >= size {
                return Ok(0);
            }
            let value = crt(residues[0][n], residues[1][n], residues[2][n]);
            u64::try_from(value).map_err(|_| Error::Overflow)
        })
        .collect();
    Some(out)
}

fn convolve_mod(a: &[u64], b: &[u64], size: usize, p: u64) -> Vec<u64> {
    let mut fa = vec![0u64; size];
    let mut fb = vec![0u64; size];
    for (dst, &x) in fa.iter_mut().zip(a) {
        *dst = x % p;
    }
    for (dst, &x) in fb.iter_mut().zip(b) {
        *dst = x % p;
    }
    ntt(&mut fa, p, false);
    ntt(&mut fb, p, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * y % p;
    }
    ntt(&mut fa, p, true);
    fa
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

/// In-place iterative radix-2 transform. Moduli are below 2^30, so products fit in u64.
fn ntt(buf: &mut [u64], p: u64, inverse: bool) {
    let n = buf.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let mut w_len = pow_mod(ROOT, (p - 1) / len as u64, p);
        if inverse {
            w_len = inv_mod(w_len, p);
        }
        let half = len / 2;
        let mut twiddles = Vec::with_capacity(half);
        let mut w = 1u64;
        for _ in 0..half {
            twiddles.push(w);
            w = w * w_len % p;
        }
        for chunk in buf.chunks_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for ((u, v), &w) in lo.iter_mut().zip(hi.iter_mut()).zip(&twiddles) {
                let t = *v * w % p;
                let x = *u;
                *u = if x + t >= p { x + t - p } else { x + t };
                *v = if x >= t { x - t } else { x + p - t };
            }
        }
        len <<= 1;
    }
    if inverse {
        let n_inv = inv_mod(n as u64 % p, p);
        for x in buf.iter_mut() {
            *x = *x * n_inv % p;
        }
    }
}

fn crt(r0: u64, r1: u64, r2: u64) -> u128 {
    let [p0, p1, p2] = PRIMES;
    // x ≡ r0 (p0), x ≡ r1 (p1)
    let inv_p0_mod_p1 = inv_mod(p0 % p1, p1);
    let k1 = ((r1 + p1 - r0 % p1) % p1) * inv_p0_mod_p1 % p1;
    let x01 = u128::from(r0) + u128::from(p0) * u128::from(k1);
    let p01 = u128::from(p0) * u128::from(p1);
    // x ≡ x01 (p0 p1), x ≡ r2 (p2)
    let p01_mod_p2 = (p01 % u128::from(p2)) as u64;
    let inv = inv_mod(p01_mod_p2, p2);
    let x01_mod_p2 = (x01 % u128::from(p2)) as u64;
    let k2 = ((r2 + p2 - x01_mod_p2) % p2) * inv % p2;
    x01 + p01 * u128::from(k2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_product() {
        // (1 + 2x + 3x^2)(4 + 5x) = 4 + 13x + 22x^2 + 15x^3
        for s in [Strategy::Schoolbook, Strategy::Transform, Strategy::Auto] {
            assert_eq!(
                convolve(&[1, 2, 3], &[4, 5], 5, s).unwrap(),
                vec![4, 13, 22, 15, 0]
            );
            assert_eq!(convolve(&[1, 2, 3], &[4, 5], 2, s).unwrap(), vec![4, 13]);
        }
    }

    #[test]
    fn crt_recovers_large_values() {
        let x: u128 = (1u128 << 80) + 12345;
        let r = PRIMES.map(|p| (x % u128::from(p)) as u64);
        assert_eq!(crt(r[0], r[1], r[2]), x);
    }

    #[test]
    fn transform_reports_overflow_exactly() {
        let big = u64::MAX / 2 + 1;
        assert_eq!(
            convolve(&[big, big], &[1, 1], 3, Strategy::Transform),
            Err(Error::Overflow)
        );
        assert_eq!(
            convolve(&[big, big], &[1, 1], 3, Strategy::Schoolbook),
            Err(Error::Overflow)
        );
        assert_eq!(
            convolve(&[big, big - 1], &[1, 1], 3, Strategy::Transform).unwrap(),
            vec![big, u64::MAX, big - 1]
        );
    }

    #[test]
    fn falls_back_when_inexact() {
        // (Σa)·max(b) exceeds the CRT modulus, so the schoolbook route answers.
        let a = [u64::MAX / 4, 0, 1];
        let b = [u64::MAX / 8, 3];
        assert_eq!(
            convolve(&a, &b, 2, Strategy::Transform),
            convolve(&a, &b, 2, Strategy::Schoolbook)
        );
    }
}
