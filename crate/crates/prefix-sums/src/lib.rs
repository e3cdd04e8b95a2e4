//! Mutable prefix sums over arrays of 64-bit signed integers.
//!
//! Given an array `A[0..n)`, every structure in this crate supports
//!
//! * `sum(i)` — the sum of `A[0..=i]`,
//! * `update(i, delta)` — `A[i] += delta`,
//!
//! plus the derived `access(i)` and `range_sum(i, j)`. All arithmetic is
//! two's-complement wrapping, so a structure agrees bit for bit with the
//! brute-force [`oracle::NaiveOracle`] on any operation sequence, even when
//! the inputs overflow `i64`.
//!
//! The structures trade query time against update time in different ways:
//!
//! | module | structures |
//! |--------|------------|
//! | [`segtree`] | binary segment trees: top-down, bottom-up (regular and left-sum), with branchy / branch-free / two-loop traversals |
//! | [`fenwick`] | the classic Fenwick tree and a "holed" layout that avoids cache-set aliasing |
//! | [`node`] | fixed-width blocks of `b` keys updated with lane-parallel masked suffix adds |
//! | [`bary_segtree`] | a `b`-ary segment tree over serialized two-level nodes, height-specialized traversal |
//! | [`fenwick_variants`] | `b`-ary (digit decomposition), blocked, and truncated Fenwick trees |
//! | [`cachemodel`] | deterministic set-associative cache-set histogram of traced accesses |
//! | [`harness`] | workload generation, oracle verification, nanosecond benchmarking, CSV/speedup reporting |
//!
//! Each major capability has a runnable demo under `examples/`; the thin
//! `prefix-sums` binary exposes the harness as `verify`, `bench`,
//! `cachehist`, `space` and `speedup` subcommands.

pub mod bary_segtree;
pub mod cachemodel;
pub mod cli;
pub mod fenwick;
pub mod fenwick_variants;
pub mod harness;
pub mod node;
pub mod oracle;
pub mod segtree;

pub use oracle::NaiveOracle;

/// Common contract satisfied by every prefix-sum structure in the crate.
///
/// `n` is fixed at build time and is at least 1 (constructors reject empty
/// input). Index preconditions (`i < n`, `i <= j`) are checked in debug
/// builds; violating them in release builds is a caller bug and at worst
/// panics on an out-of-range slice access.
///
/// Structures are single-writer: `update` takes `&mut self`, the read-only
/// operations take `&self` and may run concurrently between updates. All
/// implementations are `Send + Sync`, so a structure can be moved or shared
/// across threads.
pub trait PrefixSum: Send + Sync {
    /// Number of logical elements.
    fn len(&self) -> usize;

    /// Wrapping sum of the elements at positions `0..=i`.
    fn sum(&self, i: usize) -> i64;

    /// Adds `delta` (wrapping) to the element at position `i`.
    fn update(&mut self, i: usize, delta: i64);

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The element at position `i`, recovered as `sum(i) - sum(i-1)`.
    fn access(&self, i: usize) -> i64 {
        debug_assert!(i < self.len(), "index {i} out of range");
        if i == 0 {
            self.sum(0)
        } else {
            self.sum(i).wrapping_sub(self.sum(i - 1))
        }
    }

    /// Wrapping sum of the elements at positions `i..=j`.
    fn range_sum(&self, i: usize, j: usize) -> i64 {
        debug_assert!(i <= j && j < self.len(), "bad range {i}..={j}");
        if i == 0 {
            self.sum(j)
        } else {
            self.sum(j).wrapping_sub(self.sum(i - 1))
        }
    }
}

#[cfg(test)]
pub(crate) mod testutil {
    //! Small fixtures shared by the module tests.

    /// 16-element array used throughout the worked examples.
    pub const A16: [i64; 16] = [13, -1, 2, 23, -4, 231, 13, 5, 2, -88, -52, 0, 4, 90, 3, -12];

    /// Wrapping prefix sum of `values[0..=i]`.
    pub fn prefix(values: &[i64], i: usize) -> i64 {
        values[..=i].iter().fold(0i64, |a, &v| a.wrapping_add(v))
    }

    /// Deterministic pseudo-random values, full 64-bit range.
    pub fn random_values(n: usize, seed: u64) -> Vec<i64> {
        let mut rng = crate::harness::workload::SplitMix64::new(seed);
        (0..n).map(|_| rng.next_u64() as i64).collect()
    }
}
