//! Execution strategy for the subset sweeps, and the exact accumulator they share.
//!
//! With the `parallel` feature a sweep over `0..len` is cut into fixed-size
//! chunks that rayon evaluates independently; partial sums are exact integers,
//! so the combination order does not affect the result.

use std::ops::{Add, AddAssign, Range};

use num_bigint::BigInt;
use num_traits::Zero;

/// How subset sweeps and graph batches are evaluated.
/// Defaults to `Parallel` when that variant exists.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Sets the worker count of the global pool. Without the `parallel` feature
/// only a single thread is accepted.
pub fn configure_threads(threads: usize) -> Result<(), String> {
    #[cfg(feature = "parallel")]
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| e.to_string())
    }
    #[cfg(not(feature = "parallel"))]
    {
        if threads > 1 {
            return Err(format!(
                "built without parallel support, cannot use {threads} threads"
            ));
        }
        Ok(())
    }
}

/// Sweeps shorter than this never split.
pub const MIN_PARALLEL_LEN: u64 = 1 << 12;
#[cfg(feature = "parallel")]
const CHUNK: u64 = 1 << 12;

/// Integer accumulator that stays in `i128` until an addition would overflow.
#[derive(Debug, Clone, Default)]
pub struct ExactSum {
    small: i128,
    big: Option<BigInt>,
}

impl ExactSum {
    #[inline]
    pub fn add_i128(&mut self, v: i128) {
        match self.small.checked_add(v) {
            Some(s) => self.small = s,
            None => {
                let spill = self.big.get_or_insert_with(BigInt::zero);
                *spill += self.small;
                *spill += v;
                self.small = 0;
            }
        }
    }

    pub fn add_big(&mut self, v: &BigInt) {
        *self.big.get_or_insert_with(BigInt::zero) += v;
    }

    pub fn into_bigint(self) -> BigInt {
        match self.big {
            Some(b) => b + self.small,
            None => BigInt::from(self.small),
        }
    }
}

impl AddAssign for ExactSum {
    fn add_assign(&mut self, rhs: ExactSum) {
        self.add_i128(rhs.small);
        if let Some(b) = rhs.big {
            self.add_big(&b);
        }
    }
}

impl Add for ExactSum {
    type Output = ExactSum;
    fn add(mut self, rhs: ExactSum) -> ExactSum {
        self += rhs;
        self
    }
}

/// Sums `chunk(range)` over a partition of `0..len`.
pub fn sum_over<F>(exec: Execution, len: u64, chunk: F) -> BigInt
where
    F: Fn(Range<u64>) -> ExactSum + Sync,
{
    match exec {
        Execution::Sequential => chunk(0..len).into_bigint(),
        #[cfg(feature = "parallel")]
        Execution::Parallel if len < MIN_PARALLEL_LEN => chunk(0..len).into_bigint(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            let chunks = len.div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .map(|c| chunk(c * CHUNK..((c + 1) * CHUNK).min(len)))
                .reduce(ExactSum::default, |a, b| a + b)
                .into_bigint()
        }
    }
}

/// Maps `f` over `items` preserving order.
pub fn map_ordered<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        Execution::Sequential => items.iter().map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
    }
}
