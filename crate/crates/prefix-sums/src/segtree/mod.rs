//! Binary segment trees over an implicit array layout (children of node `p`
//! at `2p + 1` and `2p + 2`), in two flavors:
//!
//! * [`TopDownSegmentTree`] pads the input to a power of two and walks
//!   root-to-leaf; a baseline kept mainly for the branchy vs branch-free
//!   comparison.
//! * [`BottomUpSegmentTree`] stores exactly `2n - 1` words for any `n` by
//!   displacing the leaves circularly, and walks leaf-to-root.
//!
//! Traversals come in three [`Policy`] variants. `Branchy` only touches a
//! sibling when the path actually needs it; `BranchFree` masks the
//! contribution instead of branching, trading extra memory traffic for a
//! jump-free loop body; `TwoLoop` runs the branchy body while the node index
//! is above a cache-derived threshold `T` and the branch-free body below it,
//! on the grounds that a masked access is only cheap while it hits cache.

mod bottomup;
mod topdown;

pub use bottomup::{BottomUpSegmentTree, Mode};
pub use topdown::TopDownSegmentTree;

use std::fmt;
use std::str::FromStr;

/// Traversal policy for the binary segment trees.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Policy {
    Branchy,
    BranchFree,
    /// Branchy above the threshold index, branch-free below it.
    TwoLoop,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Policy::Branchy => "branchy",
            Policy::BranchFree => "branchfree",
            Policy::TwoLoop => "twoloop",
        })
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "branchy" => Ok(Policy::Branchy),
            "branchfree" => Ok(Policy::BranchFree),
            "twoloop" => Ok(Policy::TwoLoop),
            other => Err(format!(
                "unknown policy '{other}' (expected branchy, branchfree or twoloop)"
            )),
        }
    }
}

/// Data-cache capacities expressed in 64-bit words, used to place the
/// two-loop threshold. Defaults model a 32 KiB L1, 1 MiB L2 and ~19 MiB L3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheSizes {
    pub l1_words: usize,
    pub l2_words: usize,
    pub l3_words: usize,
}

impl Default for CacheSizes {
    fn default() -> Self {
        Self {
            l1_words: 4_096,
            l2_words: 131_072,
            l3_words: 2_523_136,
        }
    }
}

/// Threshold for the two-loop traversal: the prefix `tree[..T]` is assumed
/// cache-resident. Small arrays keep the whole hot path in L2; once the
/// array outgrows L3 only the L1-sized prefix is worth the branch-free
/// treatment.
pub fn two_loop_threshold(n: usize, caches: &CacheSizes) -> usize {
    if n > caches.l3_words {
        caches.l1_words
    } else {
        caches.l2_words
    }
}

/// All-ones when `p` is even, all-zero when odd. The value goes through
/// `black_box`: without it LLVM folds `load & mask` back into a conditional
/// jump around the load, which is exactly what the branch-free bodies must
/// not contain.
#[inline(always)]
pub(crate) fn mask_if_even(p: usize) -> i64 {
    std::hint::black_box(((p & 1) as i64).wrapping_sub(1))
}

/// All-ones when `p` is odd, all-zero otherwise; same barrier as
/// [`mask_if_even`].
#[inline(always)]
pub(crate) fn mask_if_odd(p: usize) -> i64 {
    std::hint::black_box(((p & 1) as i64).wrapping_neg())
}
