//! Fenwick tree truncated at block granularity: a classic (optionally
//! holed) Fenwick tree over the `ceil(n / b)` block totals, above a flat
//! array of prefix-summed blocks.
//!
//! An operation on index `i` splits into the block index `j = i / b` and
//! the in-block offset: `sum` adds the upper tree's prefix over the blocks
//! strictly before `j` to `block[j].sum(i % b)`; `update` feeds the delta
//! to both parts. The upper tree costs `ceil(n / b) + 1` extra words and is
//! small enough to stay cached, so only one block of `b` keys is touched
//! per operation.

use crate::fenwick::{FenwickTree, HoledFenwickTree};
use crate::node::{Backend, PrefixBlock};
use crate::PrefixSum;

#[derive(Clone)]
enum Upper {
    Plain(FenwickTree),
    Holed(HoledFenwickTree),
}

impl Upper {
    fn sum(&self, j: usize) -> i64 {
        match self {
            Upper::Plain(t) => t.sum(j),
            Upper::Holed(t) => t.sum(j),
        }
    }

    fn update(&mut self, j: usize, delta: i64) {
        match self {
            Upper::Plain(t) => t.update(j, delta),
            Upper::Holed(t) => t.update(j, delta),
        }
    }

    fn storage_words(&self) -> usize {
        match self {
            Upper::Plain(t) => t.storage_words(),
            Upper::Holed(t) => t.storage_words(),
        }
    }
}

#[derive(Clone)]
pub struct TruncatedFenwickTree<N: PrefixBlock> {
    upper: Upper,
    blocks: Vec<N>,
    n: usize,
    backend: Backend,
}

impl<N: PrefixBlock> TruncatedFenwickTree<N> {
    pub fn new(values: &[i64]) -> Self {
        Self::with_options(values, false, Backend::auto())
    }

    /// `holed_upper` relocates the upper tree's cells to kill cache-set
    /// aliasing; the lower blocks are contiguous either way.
    pub fn with_options(values: &[i64], holed_upper: bool, backend: Backend) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        let b = N::FANOUT;
        let n = values.len();
        let totals: Vec<i64> = values
            .chunks(b)
            .map(|c| c.iter().fold(0i64, |a, &v| a.wrapping_add(v)))
            .collect();
        let upper = if holed_upper {
            Upper::Holed(HoledFenwickTree::new(&totals))
        } else {
            Upper::Plain(FenwickTree::new(&totals))
        };
        let blocks = values.chunks(b).map(N::build).collect();
        Self {
            upper,
            blocks,
            n,
            backend,
        }
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Words in the upper tree (`ceil(n / b) + 1` when not holed).
    pub fn upper_storage_words(&self) -> usize {
        self.upper.storage_words()
    }
}

impl<N: PrefixBlock> PrefixSum for TruncatedFenwickTree<N> {
    fn len(&self) -> usize {
        self.n
    }

    fn sum(&self, i: usize) -> i64 {
        debug_assert!(i < self.n, "index {i} out of range");
        let b = N::FANOUT;
        let j = i / b;
        let lead = if j > 0 { self.upper.sum(j - 1) } else { 0 };
        lead.wrapping_add(self.blocks[j].sum(i % b))
    }

    fn update(&mut self, i: usize, delta: i64) {
        debug_assert!(i < self.n, "index {i} out of range");
        let b = N::FANOUT;
        let j = i / b;
        self.upper.update(j, delta);
        self.blocks[j].update(i % b, delta, self.backend);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::{Node16, Node256, Node64};
    use crate::testutil::{prefix, random_values, A16};

    #[test]
    fn single_block_has_a_silent_upper_part() {
        let t = TruncatedFenwickTree::<Node16>::new(&A16);
        assert_eq!(t.block_count(), 1);
        assert_eq!(t.sum(10), 144);
        assert_eq!(t.sum(15), 229);
    }

    #[test]
    fn upper_tree_size_formula() {
        let n = 64 * 100 + 3;
        let t = TruncatedFenwickTree::<Node64>::new(&random_values(n, 1));
        assert_eq!(t.block_count(), 101);
        assert_eq!(t.upper_storage_words(), 102);
    }

    fn shadow_check<N: PrefixBlock>(n: usize, holed: bool, seed: u64) {
        let values = random_values(n, seed);
        let mut shadow = values.clone();
        let mut t = TruncatedFenwickTree::<N>::with_options(&values, holed, Backend::auto());
        let mut rng = crate::harness::workload::SplitMix64::new(seed ^ 11);
        for _ in 0..200 {
            let i = rng.index(n);
            let d = rng.next_u64() as i64;
            t.update(i, d);
            shadow[i] = shadow[i].wrapping_add(d);
            let probe = rng.index(n);
            assert_eq!(t.sum(probe), prefix(&shadow, probe), "n={n}");
        }
    }

    #[test]
    fn random_ops_match_shadow() {
        for n in [1usize, 2, 15, 16, 17, 255, 256, 257, 5000] {
            shadow_check::<Node16>(n, false, n as u64);
            shadow_check::<Node64>(n, false, n as u64 + 1);
            shadow_check::<Node256>(n, false, n as u64 + 2);
        }
    }

    #[test]
    fn holed_upper_changes_nothing_observable() {
        shadow_check::<Node64>(10_000, true, 23);
    }
}
