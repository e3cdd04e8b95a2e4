//! Wide segment tree: every node is a [`PrefixBlock`] of `b` keys, so the
//! tree has height `ceil(log_b n)` — at most 3 levels for `b = 256` until
//! `n` reaches `2^24`, and at most 4 up to `2^32`.
//!
//! Nodes are stored back to back, level by level with the root first, and a
//! node is addressed as `level_offset + index_in_level` (equivalently, byte
//! offset `index * size_of::<N>()`). An internal node's keys hold the inclusive
//! prefix sums of its children's subtree totals; a leaf node's keys hold the
//! inclusive prefix sums of `b` input elements (zero-padded). A query adds
//! one `node.sum` per level and an update issues one independent
//! `node.update` per level, so the per-level work has no data dependencies.
//!
//! `sum` and `update` dispatch once on the height to a straight-line body
//! with no per-level loop; heights 1 through 5 are supported, which covers
//! `n` up to `2^32` for the shipped fanouts (and up to `2^20` for the
//! 16-key test fanout).

use crate::node::{Backend, PrefixBlock};
use crate::PrefixSum;

/// Shape of a wide tree: height and node count per level, root level first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreePlan {
    n: usize,
    fanout: usize,
    nodes_per_level: Vec<usize>,
    /// Cumulative node counts; `offsets[l]` is the index of level `l`'s
    /// first node in the serialized array.
    offsets: Vec<usize>,
}

/// Fanouts with a shipped node layout.
pub const SUPPORTED_FANOUTS: [usize; 3] = [16, 64, 256];

/// Maximum specialized height.
pub const MAX_HEIGHT: usize = 5;

impl TreePlan {
    pub fn new(n: usize, fanout: usize) -> Self {
        assert!(n >= 1, "n must be at least 1");
        assert!(
            SUPPORTED_FANOUTS.contains(&fanout),
            "unsupported fanout {fanout} (expected one of {SUPPORTED_FANOUTS:?})"
        );
        let mut height = 1usize;
        let mut capacity = fanout;
        while capacity < n {
            capacity *= fanout;
            height += 1;
        }
        assert!(
            height <= MAX_HEIGHT,
            "n = {n} needs height {height} at fanout {fanout}; max is {MAX_HEIGHT}"
        );
        let mut nodes_per_level = vec![0usize; height];
        nodes_per_level[height - 1] = n.div_ceil(fanout);
        for level in (0..height.saturating_sub(1)).rev() {
            nodes_per_level[level] = nodes_per_level[level + 1].div_ceil(fanout);
        }
        debug_assert_eq!(nodes_per_level[0], 1);
        let mut offsets = Vec::with_capacity(height);
        let mut acc = 0usize;
        for &count in &nodes_per_level {
            offsets.push(acc);
            acc += count;
        }
        Self {
            n,
            fanout,
            nodes_per_level,
            offsets,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fanout(&self) -> usize {
        self.fanout
    }

    pub fn height(&self) -> usize {
        self.nodes_per_level.len()
    }

    pub fn nodes_per_level(&self) -> &[usize] {
        &self.nodes_per_level
    }

    pub fn total_nodes(&self) -> usize {
        self.nodes_per_level.iter().sum()
    }

    /// Serialized size for nodes of `node_size` bytes.
    pub fn total_bytes(&self, node_size: usize) -> usize {
        self.total_nodes() * node_size
    }

    #[inline]
    fn offset(&self, level: usize) -> usize {
        self.offsets[level]
    }
}

/// Segment tree with fanout `N::FANOUT` over serialized blocks.
#[derive(Clone)]
pub struct BarySegmentTree<N: PrefixBlock> {
    plan: TreePlan,
    nodes: Vec<N>,
    backend: Backend,
}

impl<N: PrefixBlock> BarySegmentTree<N> {
    pub fn new(values: &[i64]) -> Self {
        Self::with_backend(values, Backend::auto())
    }

    pub fn with_backend(values: &[i64], backend: Backend) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        let b = N::FANOUT;
        let plan = TreePlan::new(values.len(), b);
        let height = plan.height();

        // leaf level from input blocks, upper levels from child totals
        let mut levels: Vec<Vec<N>> = Vec::with_capacity(height);
        let leaves: Vec<N> = values.chunks(b).map(N::build).collect();
        levels.push(leaves);
        for _ in 1..height {
            let children = levels.last().unwrap();
            let parents: Vec<N> = children
                .chunks(b)
                .map(|group| {
                    let totals: Vec<i64> = group.iter().map(N::back).collect();
                    N::build(&totals)
                })
                .collect();
            levels.push(parents);
        }
        levels.reverse(); // root first
        debug_assert!(levels
            .iter()
            .zip(plan.nodes_per_level())
            .all(|(level, &count)| level.len() == count));
        let nodes = levels.into_iter().flatten().collect();
        Self {
            plan,
            nodes,
            backend,
        }
    }

    pub fn plan(&self) -> &TreePlan {
        &self.plan
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn serialized_bytes(&self) -> usize {
        self.nodes.len() * N::size_bytes()
    }

    #[inline]
    fn node(&self, level: usize, index: usize) -> &N {
        &self.nodes[self.plan.offset(level) + index]
    }

    #[inline]
    fn node_mut(&mut self, level: usize, index: usize) -> &mut N {
        let at = self.plan.offset(level) + index;
        &mut self.nodes[at]
    }

    /// Reference traversal used by tests: same arithmetic, one loop over the
    /// levels instead of the height-specialized bodies.
    #[cfg(test)]
    pub(crate) fn sum_looped(&self, i: usize) -> i64 {
        let b = N::FANOUT;
        let h = self.plan.height();
        let mut acc = 0i64;
        let mut stride = b.pow(h as u32 - 1);
        for level in 0..h - 1 {
            let node_index = i / (stride * b);
            let child = (i / stride) % b;
            if child > 0 {
                acc = acc.wrapping_add(self.node(level, node_index).sum(child - 1));
            }
            stride /= b;
        }
        acc.wrapping_add(self.node(h - 1, i / b).sum(i % b))
    }

    #[cfg(test)]
    pub(crate) fn update_looped(&mut self, i: usize, delta: i64) {
        let b = N::FANOUT;
        let h = self.plan.height();
        let backend = self.backend;
        let mut stride = b.pow(h as u32 - 1);
        for level in 0..h - 1 {
            let node_index = i / (stride * b);
            let child = (i / stride) % b;
            self.node_mut(level, node_index).update(child, delta, backend);
            stride /= b;
        }
        self.node_mut(h - 1, i / b).update(i % b, delta, backend);
    }
}

impl<N: PrefixBlock> PrefixSum for BarySegmentTree<N> {
    fn len(&self) -> usize {
        self.plan.n()
    }

    fn sum(&self, i: usize) -> i64 {
        debug_assert!(i < self.len(), "index {i} out of range");
        let b = N::FANOUT;
        match self.plan.height() {
            1 => self.node(0, 0).sum(i),
            2 => {
                let c1 = i / b;
                let mut acc = self.node(1, c1).sum(i % b);
                if c1 > 0 {
                    acc = acc.wrapping_add(self.node(0, 0).sum(c1 - 1));
                }
                acc
            }
            3 => {
                let c1 = i / (b * b);
                let c2 = (i / b) % b;
                let mut acc = self.node(2, i / b).sum(i % b);
                if c1 > 0 {
                    acc = acc.wrapping_add(self.node(0, 0).sum(c1 - 1));
                }
                if c2 > 0 {
                    acc = acc.wrapping_add(self.node(1, c1).sum(c2 - 1));
                }
                acc
            }
            4 => {
                let c1 = i / (b * b * b);
                let c2 = (i / (b * b)) % b;
                let c3 = (i / b) % b;
                let mut acc = self.node(3, i / b).sum(i % b);
                if c1 > 0 {
                    acc = acc.wrapping_add(self.node(0, 0).sum(c1 - 1));
                }
                if c2 > 0 {
                    acc = acc.wrapping_add(self.node(1, c1).sum(c2 - 1));
                }
                if c3 > 0 {
                    acc = acc.wrapping_add(self.node(2, i / (b * b)).sum(c3 - 1));
                }
                acc
            }
            5 => {
                let c1 = i / (b * b * b * b);
                let c2 = (i / (b * b * b)) % b;
                let c3 = (i / (b * b)) % b;
                let c4 = (i / b) % b;
                let mut acc = self.node(4, i / b).sum(i % b);
                if c1 > 0 {
                    acc = acc.wrapping_add(self.node(0, 0).sum(c1 - 1));
                }
                if c2 > 0 {
                    acc = acc.wrapping_add(self.node(1, c1).sum(c2 - 1));
                }
                if c3 > 0 {
                    acc = acc.wrapping_add(self.node(2, i / (b * b * b)).sum(c3 - 1));
                }
                if c4 > 0 {
                    acc = acc.wrapping_add(self.node(3, i / (b * b)).sum(c4 - 1));
                }
                acc
            }
            _ => unreachable!("heights above {MAX_HEIGHT} are rejected at plan time"),
        }
    }

    fn update(&mut self, i: usize, delta: i64) {
        debug_assert!(i < self.len(), "index {i} out of range");
        if N::RESTRICTED {
            assert!(
                (-128..=127).contains(&delta),
                "restricted tree takes 8-bit deltas, got {delta}"
            );
        }
        let b = N::FANOUT;
        let backend = self.backend;
        match self.plan.height() {
            1 => self.node_mut(0, 0).update(i, delta, backend),
            2 => {
                self.node_mut(0, 0).update(i / b, delta, backend);
                self.node_mut(1, i / b).update(i % b, delta, backend);
            }
            3 => {
                let c1 = i / (b * b);
                self.node_mut(0, 0).update(c1, delta, backend);
                self.node_mut(1, c1).update((i / b) % b, delta, backend);
                self.node_mut(2, i / b).update(i % b, delta, backend);
            }
            4 => {
                let c1 = i / (b * b * b);
                self.node_mut(0, 0).update(c1, delta, backend);
                self.node_mut(1, c1).update((i / (b * b)) % b, delta, backend);
                self.node_mut(2, i / (b * b)).update((i / b) % b, delta, backend);
                self.node_mut(3, i / b).update(i % b, delta, backend);
            }
            5 => {
                let c1 = i / (b * b * b * b);
                self.node_mut(0, 0).update(c1, delta, backend);
                self.node_mut(1, c1).update((i / (b * b * b)) % b, delta, backend);
                self.node_mut(2, i / (b * b * b)).update((i / (b * b)) % b, delta, backend);
                self.node_mut(3, i / (b * b)).update((i / b) % b, delta, backend);
                self.node_mut(4, i / b).update(i % b, delta, backend);
            }
            _ => unreachable!("heights above {MAX_HEIGHT} are rejected at plan time"),
        }
    }
}
