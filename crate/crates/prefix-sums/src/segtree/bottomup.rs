//! Bottom-up segment tree in exactly `2n - 1` words.
//!
//! Children of node `p` sit at `2p + 1` and `2p + 2`, so left children
//! always occupy odd array positions and right children even ones; a
//! traversal climbing from a leaf can tell with one parity bit whether the
//! left sibling's range lies inside the queried prefix.
//!
//! For `n` that is not a power of two the leaves are displaced circularly:
//! with `m = 2n - 1` and `begin = 2^ceil(log2 n) - 1`, the first
//! `m - begin` input values occupy `tree[begin..m)` and the remaining ones
//! wrap around to `tree[n - 1..begin)`. This keeps parent-child arithmetic
//! intact without any padding.
//!
//! In [`Mode::LeftSum`] an internal node stores only the sum of the leaves
//! in its left subtree. Queries read the parent instead of the left sibling,
//! and an update skips the write entirely whenever the path climbs out of a
//! right subtree, which makes the two-loop policy profitable for updates
//! as well.

use super::{two_loop_threshold, CacheSizes, Policy};
use crate::PrefixSum;

/// What an internal node stores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Sum of all leaves below the node.
    Regular,
    /// Sum of the leaves below the node's left child only.
    LeftSum,
}

#[derive(Debug, Clone)]
pub struct BottomUpSegmentTree {
    tree: Vec<i64>,
    n: usize,
    /// Position of leaf 0; `2^ceil(log2 n) - 1`.
    begin: usize,
    mode: Mode,
    policy: Policy,
    /// Node indexes at or below this are assumed cache-resident.
    threshold: usize,
}

impl BottomUpSegmentTree {
    pub fn new(values: &[i64], mode: Mode, policy: Policy) -> Self {
        Self::with_cache_sizes(values, mode, policy, &CacheSizes::default())
    }

    /// `caches` only places the two-loop threshold; tests pass tiny sizes to
    /// force both loop bodies to run.
    pub fn with_cache_sizes(
        values: &[i64],
        mode: Mode,
        policy: Policy,
        caches: &CacheSizes,
    ) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        let n = values.len();
        let m = 2 * n - 1;
        let begin = n.next_power_of_two() - 1;
        let mut tree = vec![0i64; m];
        let wrap = m - begin; // leaves that fit before the array end
        tree[begin..m].copy_from_slice(&values[..wrap]);
        tree[n - 1..begin].copy_from_slice(&values[wrap..]);
        let mut this = Self {
            tree,
            n,
            begin,
            mode,
            policy,
            threshold: two_loop_threshold(n, caches),
        };
        this.visit(0);
        this
    }

    /// Writes every internal node; returns the subtree sum under `p`.
    fn visit(&mut self, p: usize) -> i64 {
        if p >= self.n - 1 {
            return self.tree[p];
        }
        let left = self.visit(2 * p + 1);
        let right = self.visit(2 * p + 2);
        self.tree[p] = match self.mode {
            Mode::Regular => left.wrapping_add(right),
            Mode::LeftSum => left,
        };
        left.wrapping_add(right)
    }

    /// Array position of leaf `i` under the circular displacement.
    #[inline]
    pub fn leaf_position(&self, i: usize) -> usize {
        debug_assert!(i < self.n, "index {i} out of range");
        let p = self.begin + i;
        if p < self.tree.len() {
            p
        } else {
            p - self.n
        }
    }

    pub fn storage_words(&self) -> usize {
        self.tree.len()
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn threshold(&self) -> usize {
        self.threshold
    }

    #[cfg(test)]
    pub(crate) fn node(&self, p: usize) -> i64 {
        self.tree[p]
    }

    fn sum_branchy(&self, i: usize) -> i64 {
        let mut p = self.leaf_position(i);
        let mut acc = self.tree[p];
        match self.mode {
            Mode::Regular => {
                while p > 0 {
                    if p & 1 == 0 {
                        acc = acc.wrapping_add(self.tree[p - 1]);
                    }
                    p = (p - 1) / 2;
                }
            }
            Mode::LeftSum => {
                while p > 0 {
                    let parent = (p - 1) / 2;
                    if p & 1 == 0 {
                        acc = acc.wrapping_add(self.tree[parent]);
                    }
                    p = parent;
                }
            }
        }
        acc
    }

    fn sum_branch_free(&self, i: usize) -> i64 {
        let mut p = self.leaf_position(i);
        let mut acc = self.tree[p];
        match self.mode {
            Mode::Regular => {
                while p > 0 {
                    // all-ones when p is a right child (even position)
                    let mask = super::mask_if_even(p);
                    acc = acc.wrapping_add(self.tree[p - 1] & mask);
                    p = (p - 1) / 2;
                }
            }
            Mode::LeftSum => {
                while p > 0 {
                    let parent = (p - 1) / 2;
                    let mask = super::mask_if_even(p);
                    acc = acc.wrapping_add(self.tree[parent] & mask);
                    p = parent;
                }
            }
        }
        acc
    }

    fn sum_two_loop(&self, i: usize) -> i64 {
        let mut p = self.leaf_position(i);
        let mut acc = self.tree[p];
        match self.mode {
            Mode::Regular => {
                while p > self.threshold {
                    if p & 1 == 0 {
                        acc = acc.wrapping_add(self.tree[p - 1]);
                    }
                    p = (p - 1) / 2;
                }
                while p > 0 {
                    let mask = super::mask_if_even(p);
                    acc = acc.wrapping_add(self.tree[p - 1] & mask);
                    p = (p - 1) / 2;
                }
            }
            Mode::LeftSum => {
                while p > self.threshold {
                    let parent = (p - 1) / 2;
                    if p & 1 == 0 {
                        acc = acc.wrapping_add(self.tree[parent]);
                    }
                    p = parent;
                }
                while p > 0 {
                    let parent = (p - 1) / 2;
                    let mask = super::mask_if_even(p);
                    acc = acc.wrapping_add(self.tree[parent] & mask);
                    p = parent;
                }
            }
        }
        acc
    }

    /// Regular-mode update: the leaf and every ancestor gain `delta`.
    /// No branches regardless of policy.
    fn update_regular(&mut self, i: usize, delta: i64) {
        let mut p = self.leaf_position(i);
        loop {
            self.tree[p] = self.tree[p].wrapping_add(delta);
            if p == 0 {
                break;
            }
            p = (p - 1) / 2;
        }
    }

    /// Left-sum update: an ancestor is touched only when the path climbs out
    /// of its left subtree (odd position).
    fn update_left_sum(&mut self, i: usize, delta: i64) {
        let mut p = self.leaf_position(i);
        self.tree[p] = self.tree[p].wrapping_add(delta);
        match self.policy {
            Policy::Branchy => {
                while p > 0 {
                    let parent = (p - 1) / 2;
                    if p & 1 == 1 {
                        self.tree[parent] = self.tree[parent].wrapping_add(delta);
                    }
                    p = parent;
                }
            }
            Policy::BranchFree => {
                while p > 0 {
                    let parent = (p - 1) / 2;
                    let mask = super::mask_if_odd(p);
                    self.tree[parent] = self.tree[parent].wrapping_add(delta & mask);
                    p = parent;
                }
            }
            Policy::TwoLoop => {
                while p > self.threshold {
                    let parent = (p - 1) / 2;
                    if p & 1 == 1 {
                        self.tree[parent] = self.tree[parent].wrapping_add(delta);
                    }
                    p = parent;
                }
                while p > 0 {
                    let parent = (p - 1) / 2;
                    let mask = super::mask_if_odd(p);
                    self.tree[parent] = self.tree[parent].wrapping_add(delta & mask);
                    p = parent;
                }
            }
        }
    }

    /// Like `sum`, reporting the array position of every cell the branchy
    /// traversal reads. Used by the cache-set analyzer.
    pub fn sum_traced(&self, i: usize, mut touch: impl FnMut(usize)) -> i64 {
        let mut p = self.leaf_position(i);
        touch(p);
        let mut acc = self.tree[p];
        match self.mode {
            Mode::Regular => {
                while p > 0 {
                    if p & 1 == 0 {
                        touch(p - 1);
                        acc = acc.wrapping_add(self.tree[p - 1]);
                    }
                    p = (p - 1) / 2;
                }
            }
            Mode::LeftSum => {
                while p > 0 {
                    let parent = (p - 1) / 2;
                    if p & 1 == 0 {
                        touch(parent);
                        acc = acc.wrapping_add(self.tree[parent]);
                    }
                    p = parent;
                }
            }
        }
        acc
    }
}

impl PrefixSum for BottomUpSegmentTree {
    fn len(&self) -> usize {
        self.n
    }

    fn sum(&self, i: usize) -> i64 {
        debug_assert!(i < self.n, "index {i} out of range");
        match self.policy {
            Policy::Branchy => self.sum_branchy(i),
            Policy::BranchFree => self.sum_branch_free(i),
            Policy::TwoLoop => self.sum_two_loop(i),
        }
    }

    fn update(&mut self, i: usize, delta: i64) {
        debug_assert!(i < self.n, "index {i} out of range");
        match self.mode {
            Mode::Regular => self.update_regular(i, delta),
            Mode::LeftSum => self.update_left_sum(i, delta),
        }
    }
}
