//! Fenwick tree at block granularity: `ceil(n / b)` blocks of `b` keys,
//! indexed 1-based like classic Fenwick cells.
//!
//! Block `p`'s node stores, in inclusive prefix sums, the elements of the
//! blocks in `(p - lsb(p), p - 1]` followed by block `p`'s own elements, so
//! the node's last key covers the blocks `(p - lsb(p), p]` entirely —
//! exactly a classic Fenwick cell over block totals. An operation on index
//! `i` becomes the classic traversal over `p = i / b + 1`: queries read one
//! in-node offset and then the `back()` of each ancestor cell; updates do
//! one in-node suffix add and then a whole-node suffix add (`update(0)`) on
//! each cell whose range contains the block.
//!
//! Optional hole spacing `d` relocates node `p` to slot `p + p / d`,
//! mirroring the classic tree's fix for cache-set aliasing.

use crate::fenwick::{lsb_clear, lsb_isolate, remap};
use crate::node::{Backend, PrefixBlock};
use crate::PrefixSum;

#[derive(Clone)]
pub struct BlockedFenwickTree<N: PrefixBlock> {
    /// Slot 0 unused; node `p` lives at `remap(p, d)` when holes are on.
    nodes: Vec<N>,
    n: usize,
    block_count: usize,
    spacing: Option<usize>,
    backend: Backend,
}

impl<N: PrefixBlock> BlockedFenwickTree<N> {
    pub fn new(values: &[i64]) -> Self {
        Self::with_options(values, None, Backend::auto())
    }

    pub fn with_options(values: &[i64], spacing: Option<usize>, backend: Backend) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        if let Some(d) = spacing {
            assert!(d >= 1 && d.is_power_of_two(), "spacing must be a power of two");
        }
        let b = N::FANOUT;
        let n = values.len();
        let block_count = n.div_ceil(b);

        // wrapping prefix of block totals, for the leading covered blocks
        let mut total_pfx = vec![0i64; block_count + 1];
        for p in 1..=block_count {
            let lo = (p - 1) * b;
            let hi = (p * b).min(n);
            let total = values[lo..hi].iter().fold(0i64, |a, &v| a.wrapping_add(v));
            total_pfx[p] = total_pfx[p - 1].wrapping_add(total);
        }

        let slots = match spacing {
            Some(d) => remap(block_count, d) + 1,
            None => block_count + 1,
        };
        let mut nodes: Vec<N> = (0..slots).map(|_| N::build(&[])).collect();
        let mut local = vec![0i64; b];
        for p in 1..=block_count {
            let covered_from = p - lsb_isolate(p); // blocks (covered_from, p - 1]
            let lead = total_pfx[p - 1].wrapping_sub(total_pfx[covered_from]);
            let lo = (p - 1) * b;
            let hi = (p * b).min(n);
            local.iter_mut().for_each(|v| *v = 0);
            local[..hi - lo].copy_from_slice(&values[lo..hi]);
            local[0] = local[0].wrapping_add(lead);
            let slot = Self::slot(p, spacing);
            nodes[slot] = N::build(&local);
        }
        Self {
            nodes,
            n,
            block_count,
            spacing,
            backend,
        }
    }

    #[inline]
    fn slot(p: usize, spacing: Option<usize>) -> usize {
        match spacing {
            Some(d) => remap(p, d),
            None => p,
        }
    }

    #[inline]
    fn node(&self, p: usize) -> &N {
        &self.nodes[Self::slot(p, self.spacing)]
    }

    #[inline]
    fn node_mut(&mut self, p: usize) -> &mut N {
        let slot = Self::slot(p, self.spacing);
        &mut self.nodes[slot]
    }

    pub fn block_count(&self) -> usize {
        self.block_count
    }

    /// `sum` reporting the 1-based index of every node it reads.
    pub fn sum_traced(&self, i: usize, mut touch: impl FnMut(usize)) -> i64 {
        debug_assert!(i < self.n, "index {i} out of range");
        let b = N::FANOUT;
        let mut p = i / b + 1;
        touch(p);
        let mut acc = self.node(p).sum(i % b);
        p = lsb_clear(p);
        while p > 0 {
            touch(p);
            acc = acc.wrapping_add(self.node(p).back());
            p = lsb_clear(p);
        }
        acc
    }
}

impl<N: PrefixBlock> PrefixSum for BlockedFenwickTree<N> {
    fn len(&self) -> usize {
        self.n
    }

    fn sum(&self, i: usize) -> i64 {
        self.sum_traced(i, |_| {})
    }

    fn update(&mut self, i: usize, delta: i64) {
        debug_assert!(i < self.n, "index {i} out of range");
        let b = N::FANOUT;
        let backend = self.backend;
        let mut p = i / b + 1;
        self.node_mut(p).update(i % b, delta, backend);
        p += lsb_isolate(p);
        while p <= self.block_count {
            // the whole covered range shifts: whole-node suffix add
            self.node_mut(p).update(0, delta, backend);
            p += lsb_isolate(p);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::node::{Node16, Node64};
    use crate::testutil::{prefix, random_values, A16};

    #[test]
    fn single_block_reduces_to_plain_node_ops() {
        let t = BlockedFenwickTree::<Node16>::new(&A16);
        assert_eq!(t.block_count(), 1);
        assert_eq!(t.sum(10), 144);
        assert_eq!(t.sum(15), 229);
    }

    #[test]
    fn second_node_covers_both_blocks() {
        let values = vec![1i64; 32];
        let t = BlockedFenwickTree::<Node16>::new(&values);
        assert_eq!(t.block_count(), 2);
        assert_eq!(t.sum(31), 32); // node 2 covers blocks (0, 2]
        assert_eq!(t.sum(15), 16);
        assert_eq!(t.sum(16), 17);
    }

    #[test]
    fn node_keys_cover_leading_blocks_plus_own() {
        let n = 16 * 7 + 5;
        let values = random_values(n, 3);
        let t = BlockedFenwickTree::<Node16>::new(&values);
        for p in 1..=t.block_count() {
            let covered_from = p - lsb_isolate(p);
            let lead: i64 = values[covered_from * 16..(p - 1) * 16]
                .iter()
                .fold(0i64, |a, &v| a.wrapping_add(v));
            let lo = (p - 1) * 16;
            for t_off in 0..16 {
                let hi = (lo + t_off + 1).min(n);
                let own: i64 = values[lo..hi.max(lo)]
                    .iter()
                    .fold(0i64, |a, &v| a.wrapping_add(v));
                assert_eq!(t.node(p).sum(t_off), lead.wrapping_add(own), "p={p} t={t_off}");
            }
        }
    }

    #[test]
    fn traversal_reads_follow_the_binary_decomposition() {
        let n = 16 * 64;
        let values = random_values(n, 4);
        let t = BlockedFenwickTree::<Node16>::new(&values);
        for i in [0usize, 15, 16, 100, 500, n - 1] {
            let mut path = Vec::new();
            t.sum_traced(i, |p| path.push(p));
            let p0 = i / 16 + 1;
            assert_eq!(path.len(), p0.count_ones() as usize, "i={i}");
            assert_eq!(path[0], p0);
        }
    }

    fn shadow_check<N: PrefixBlock>(n: usize, spacing: Option<usize>, seed: u64) {
        let values = random_values(n, seed);
        let mut shadow = values.clone();
        let mut t = BlockedFenwickTree::<N>::with_options(&values, spacing, Backend::auto());
        let mut rng = crate::harness::workload::SplitMix64::new(seed ^ 9);
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
            shadow_check::<Node16>(n, None, n as u64);
            shadow_check::<Node64>(n, None, n as u64 + 1);
        }
    }

    #[test]
    fn holed_node_addressing_changes_nothing_observable() {
        for n in [100usize, 5000] {
            shadow_check::<Node16>(n, Some(4), n as u64 + 2);
            shadow_check::<Node16>(n, Some(1 << 14), n as u64 + 3);
        }
    }

    #[test]
    fn average_node_reads_track_half_the_block_bits() {
        // popcount of a uniform block index, one read per set bit
        let n = 1 << 20;
        let b = 64;
        let values = vec![0i64; n];
        let t = BlockedFenwickTree::<Node64>::new(&values);
        let mut rng = crate::harness::workload::SplitMix64::new(12);
        let samples = 10_000;
        let mut reads = 0usize;
        for _ in 0..samples {
            let i = rng.index(n);
            t.sum_traced(i, |_| reads += 1);
        }
        let mean = reads as f64 / samples as f64;
        // counting the terminal root step, the expectation is
        // 0.5 * ceil(log2((n + 1) / b)) + 1
        let expected = 0.5 * (((n + 1) as f64) / b as f64).log2().ceil() + 1.0;
        let with_root = mean + 1.0;
        assert!(
            (with_root - expected).abs() / expected <= 0.10,
            "mean {with_root} vs expected {expected}"
        );
    }
}
