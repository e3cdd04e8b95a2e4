//! Top-down segment tree: the input is zero-padded to the next power of two
//! so every internal node has two children and parent-to-child arithmetic
//! needs no bounds logic. Storage is `2 * 2^ceil(log2 n) - 1` words, between
//! 2n and 4n depending on how far `n` sits from a power of two.

use super::Policy;
use crate::PrefixSum;

#[derive(Debug, Clone)]
pub struct TopDownSegmentTree {
    tree: Vec<i64>,
    n: usize,
    /// Padded leaf count, a power of two; leaves live at `pad - 1..2 * pad - 1`.
    pad: usize,
    policy: Policy,
}

impl TopDownSegmentTree {
    pub fn new(values: &[i64], policy: Policy) -> Self {
        assert!(!values.is_empty(), "n must be at least 1");
        assert!(
            policy != Policy::TwoLoop,
            "the two-loop traversal targets the bottom-up layout"
        );
        let n = values.len();
        let pad = n.next_power_of_two();
        let mut tree = vec![0i64; 2 * pad - 1];
        tree[pad - 1..pad - 1 + n].copy_from_slice(values);
        for p in (0..pad - 1).rev() {
            tree[p] = tree[2 * p + 1].wrapping_add(tree[2 * p + 2]);
        }
        Self {
            tree,
            n,
            pad,
            policy,
        }
    }

    /// Number of stored words.
    pub fn storage_words(&self) -> usize {
        self.tree.len()
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn root(&self) -> i64 {
        self.tree[0]
    }

    fn sum_branchy(&self, i: usize) -> i64 {
        let mut p = 0usize;
        let (mut lo, mut hi) = (0usize, self.pad - 1);
        let mut acc = 0i64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if i <= mid {
                p = 2 * p + 1;
                hi = mid;
            } else {
                acc = acc.wrapping_add(self.tree[2 * p + 1]);
                p = 2 * p + 2;
                lo = mid + 1;
            }
        }
        acc.wrapping_add(self.tree[p])
    }

    fn sum_branch_free(&self, i: usize) -> i64 {
        let mut p = 0usize;
        let (mut lo, mut hi) = (0usize, self.pad - 1);
        let mut acc = 0i64;
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            let right = (i > mid) as usize;
            // all-ones when descending right, so the left child is added
            let mask = super::mask_if_odd(right);
            acc = acc.wrapping_add(self.tree[2 * p + 1] & mask);
            p = 2 * p + 1 + right;
            lo += right * (mid + 1 - lo);
            hi = mid + right * (hi - mid);
        }
        acc.wrapping_add(self.tree[p])
    }

    fn update_branchy(&mut self, i: usize, delta: i64) {
        let mut p = 0usize;
        let (mut lo, mut hi) = (0usize, self.pad - 1);
        loop {
            self.tree[p] = self.tree[p].wrapping_add(delta);
            if lo == hi {
                break;
            }
            let mid = lo + (hi - lo) / 2;
            if i <= mid {
                p = 2 * p + 1;
                hi = mid;
            } else {
                p = 2 * p + 2;
                lo = mid + 1;
            }
        }
    }

    fn update_branch_free(&mut self, i: usize, delta: i64) {
        let mut p = 0usize;
        let (mut lo, mut hi) = (0usize, self.pad - 1);
        loop {
            self.tree[p] = self.tree[p].wrapping_add(delta);
            if lo == hi {
                break;
            }
            let mid = lo + (hi - lo) / 2;
            let right = (i > mid) as usize;
            p = 2 * p + 1 + right;
            lo += right * (mid + 1 - lo);
            hi = mid + right * (hi - mid);
        }
    }
}

impl PrefixSum for TopDownSegmentTree {
    fn len(&self) -> usize {
        self.n
    }

    fn sum(&self, i: usize) -> i64 {
        debug_assert!(i < self.n, "index {i} out of range");
        match self.policy {
            Policy::Branchy => self.sum_branchy(i),
            _ => self.sum_branch_free(i),
        }
    }

    fn update(&mut self, i: usize, delta: i64) {
        debug_assert!(i < self.n, "index {i} out of range");
        match self.policy {
            Policy::Branchy => self.update_branchy(i, delta),
            _ => self.update_branch_free(i, delta),
        }
    }
}
