#![no_std]
//! Exact additive representation functions and their regularity statistics.
//!
//! The crate works on finite truncations of sets of nonnegative integers and
//! computes, with exact integer arithmetic:
//!
//! - the counting function `A(n)`, the characteristic function `χ_A`, the
//!   representation functions `R_{A,k}(n)` (ordered `k`-tuples), iterated
//!   forward differences, block counts and weighted block counts
//!   ([`seqcore`]);
//! - Sidon set generators and certificates ([`sidon`]);
//! - the shifted-union, randomized and sumset constructions that witness the
//!   upper-bound results ([`construct`]);
//! - finite-window proxies of the lower and upper bound inequalities, the
//!   Parseval energy diagnostic and an exponent scan ([`audit`]).
//!
//! Everything here is `no_std` with `alloc`. File formats, JSON reports and the
//! command line live in the companion `addrep-cli` crate.
//!
//! Counting convention: `R_{A,2}(n)` counts ordered pairs, so `R(1) = 2` for
//! `A = {0, 1}` and a Sidon set is one with `R_{A,2}(n) ≤ 2` for all `n`.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod audit;
pub mod construct;
pub mod conv;
mod error;
pub mod rng;
pub mod seqcore;
mod set;
pub mod sidon;

pub use crate::error::{Error, Result, SamplingFailure};
pub use crate::seqcore::RepSeries;
pub use crate::set::{IntegerSet, WeightVector};
