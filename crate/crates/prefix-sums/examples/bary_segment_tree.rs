//! The wide segment tree: plan geometry, serialized node levels, and the
//! restricted flavor for 8-bit deltas.
//!
//! Run with: `cargo run --release --example bary_segment_tree`

use prefix_sums::bary_segtree::{BarySegmentTree, TreePlan};
use prefix_sums::node::{Node256, Node64, PrefixBlock, RestrictedNode256};
use prefix_sums::PrefixSum;

fn main() {
    // large fanouts keep the tree extremely flat
    for (n, b) in [(1usize << 16, 64), (1 << 24, 256), (1usize << 32, 256)] {
        let plan = TreePlan::new(n, b);
        println!(
            "n=2^{:<2} b={b:<3} -> height {}, nodes per level {:?}",
            n.trailing_zeros(),
            plan.height(),
            plan.nodes_per_level()
        );
    }

    let n = 100_000;
    let values: Vec<i64> = (0..n as i64).collect();
    let tree = BarySegmentTree::<Node64>::new(&values);
    println!(
        "\nn={n}: {} nodes, {} serialized bytes, height {}",
        tree.plan().total_nodes(),
        tree.serialized_bytes(),
        tree.plan().height()
    );
    let i = 73_201;
    println!("sum({i}) = {} (closed form {})", tree.sum(i), (i as i64) * (i as i64 + 1) / 2);

    let mut tree = BarySegmentTree::<Node256>::new(&values);
    tree.update(0, 1_000_000);
    println!("b=256 after update(0, 1e6): sum({i}) = {}", tree.sum(i));

    // the restricted tree takes deltas in [-128, 127] and buffers them
    let mut restricted = BarySegmentTree::<RestrictedNode256>::new(&values);
    for _ in 0..500 {
        restricted.update(42, 100);
    }
    println!(
        "restricted b=256 after 500 x (+100) at 42: sum(42) = {}",
        restricted.sum(42)
    );
    println!(
        "node sizes: general {} bytes, restricted {} bytes",
        Node256::size_bytes(),
        RestrictedNode256::size_bytes()
    );
}
