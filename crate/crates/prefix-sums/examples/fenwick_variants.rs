//! The three block-structured Fenwick generalizations side by side:
//! digit decomposition, blocked nodes, and the truncated split.
//!
//! Run with: `cargo run --release --example fenwick_variants`

use prefix_sums::fenwick_variants::{
    digits, BaryFenwickTree, BlockedFenwickTree, TruncatedFenwickTree,
};
use prefix_sums::node::{FlatBlock, Node64};
use prefix_sums::PrefixSum;

fn main() {
    // base-b digits drive the b-ary tree the way bits drive the classic one
    println!("digits(38, 4) = {:?} (least significant first)", digits(38, 4));

    let n = 10_000;
    let values: Vec<i64> = (0..n as i64).map(|v| v * 3 - 1000).collect();
    let expected = |i: usize| values[..=i].iter().sum::<i64>();

    let mut bary = BaryFenwickTree::<FlatBlock<4>>::new(&values);
    let mut path = Vec::new();
    let s = bary.sum_traced(37, |q| path.push(q));
    println!("b=4 sum(37) = {s}, cells read {path:?} (one per nonzero digit of 38)");
    assert_eq!(s, expected(37));

    // updates are the weak spot: up to b - 1 cells per level
    let mut touched = Vec::new();
    bary.update_traced(5, 1, |q| touched.push(q));
    println!("b=4 update(5) touches {} cells: {touched:?}", touched.len());

    // blocking b keys per node keeps the binary decomposition but shortens
    // the tree by log2(b) levels
    let mut blocked = BlockedFenwickTree::<Node64>::new(&values);
    let mut nodes_read = Vec::new();
    let s = blocked.sum_traced(9_001, |p| nodes_read.push(p));
    println!("\nblocked b=64: sum(9001) = {s}, node cells read {nodes_read:?}");
    assert_eq!(s, expected(9_001));
    blocked.update(9_001, 7);
    assert_eq!(blocked.sum(9_001), expected(9_001) + 7);

    // the truncated tree does one block op per operation and keeps a tiny
    // classic Fenwick tree over the block totals
    let mut truncated = TruncatedFenwickTree::<Node64>::new(&values);
    println!(
        "truncated b=64: upper part {} words over {} blocks",
        truncated.upper_storage_words(),
        truncated.block_count()
    );
    truncated.update(0, -5);
    assert_eq!(truncated.sum(n - 1), expected(n - 1) - 5);
    println!("truncated sum(n-1) after update(0, -5): {}", truncated.sum(n - 1));
}
