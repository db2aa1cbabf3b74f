//! Ordered fan-out helpers. Results always come back in index order so the
//! caller can reduce them sequentially and stay bit-identical at any
//! parallelism level.

use alloc::vec::Vec;
use core::ops::Range;

/// Evaluates `f(i)` for every `i in 0..count`, returning results in index order.
#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

/// Source-block size for per-source sweeps. Fixed, so block boundaries and
/// therefore floating-point summation order never depend on the pool size.
pub(crate) const BLOCK: usize = 64;

/// Splits `0..n` into fixed [`BLOCK`]-sized ranges and maps each in order.
pub(crate) fn map_blocks<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(Range<usize>) -> T + Sync + Send,
{
    let blocks = n.div_ceil(BLOCK);
    map_indexed(blocks, |b| f(b * BLOCK..((b + 1) * BLOCK).min(n)))
}
