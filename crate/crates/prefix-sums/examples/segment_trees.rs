//! Binary segment trees: top-down vs bottom-up layouts, the three traversal
//! policies, and the left-sum node content that lets updates skip writes.
//!
//! Run with: `cargo run --release --example segment_trees`

use prefix_sums::segtree::{
    two_loop_threshold, BottomUpSegmentTree, CacheSizes, Mode, Policy, TopDownSegmentTree,
};
use prefix_sums::PrefixSum;

fn main() {
    let a: [i64; 16] = [13, -1, 2, 23, -4, 231, 13, 5, 2, -88, -52, 0, 4, 90, 3, -12];

    let topdown = TopDownSegmentTree::new(&a, Policy::BranchFree);
    println!(
        "top-down: {} words for n={}, root total {}",
        topdown.storage_words(),
        a.len(),
        topdown.root()
    );

    // the bottom-up layout never pads: exactly 2n - 1 words, any n
    let bottomup = BottomUpSegmentTree::new(&a, Mode::Regular, Policy::Branchy);
    println!(
        "bottom-up: {} words, leaf 0 stored at position {}",
        bottomup.storage_words(),
        bottomup.leaf_position(0)
    );
    let odd: Vec<i64> = (0..10).collect();
    let t10 = BottomUpSegmentTree::new(&odd, Mode::Regular, Policy::Branchy);
    println!(
        "n=10 displaces leaves circularly: leaf 3 at {}, leaf 4 wraps to {}",
        t10.leaf_position(3),
        t10.leaf_position(4)
    );

    // every policy and mode computes the same prefix sums
    println!("\nsum(10) under every traversal:");
    for mode in [Mode::Regular, Mode::LeftSum] {
        for policy in [Policy::Branchy, Policy::BranchFree, Policy::TwoLoop] {
            let t = BottomUpSegmentTree::new(&a, mode, policy);
            println!("  {mode:?} / {policy}: {}", t.sum(10));
        }
    }

    // left-sum internal nodes let an update skip ancestors reached from a
    // right subtree; updating the last leaf touches nothing above it
    let mut leftsum = BottomUpSegmentTree::new(&a, Mode::LeftSum, Policy::TwoLoop);
    leftsum.update(15, 5);
    println!("\nleft-sum update(15, 5): sum(14) still {}", leftsum.sum(14));
    println!("                        sum(15) now   {}", leftsum.sum(15));

    // the two-loop switch point comes from the cache sizes
    let caches = CacheSizes::default();
    for n in [1usize << 16, 1 << 20, 1 << 24] {
        println!(
            "two-loop threshold at n=2^{}: {} words",
            n.trailing_zeros(),
            two_loop_threshold(n, &caches)
        );
    }
}
