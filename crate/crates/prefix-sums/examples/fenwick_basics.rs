//! The classic Fenwick tree: cell layout, the LSB-driven traversals, and
//! the holed variant that spreads cache sets.
//!
//! Run with: `cargo run --release --example fenwick_basics`

use prefix_sums::fenwick::{lsb_clear, lsb_isolate, FenwickTree, HoledFenwickTree};
use prefix_sums::PrefixSum;

fn main() {
    let a: [i64; 16] = [13, -1, 2, 23, -4, 231, 13, 5, 2, -88, -52, 0, 4, 90, 3, -12];
    let mut t = FenwickTree::new(&a);

    // cell q covers the lsb(q) elements ending at q
    println!("cells: tree[8]={} tree[10]={} tree[11]={}", t.cell(8), t.cell(10), t.cell(11));
    println!("lsb_clear(11)={} lsb_isolate(12)={}", lsb_clear(11), lsb_isolate(12));

    // sum(10) probes p = 11 and clears the LSB until it hits the root
    let mut path = Vec::new();
    let s = t.sum_traced(10, |p| path.push(p));
    println!("sum(10) = {s}, cells read: {path:?}");

    // update(10) adds the LSB instead
    let mut path = Vec::new();
    t.update_traced(10, -37, |p| path.push(p));
    println!("update(10, -37), cells written: {path:?}");
    println!("sum(10) now {}, sum(9) untouched: {}", t.sum(10), t.sum(9));

    // the holed layout moves cell q to q + q/d; same answers, different
    // addresses, which is the whole point for large n
    let holed = HoledFenwickTree::new(&a);
    println!(
        "holed tree agrees: sum(10) = {} ({} words stored)",
        holed.sum(10),
        holed.storage_words()
    );
    let big = vec![1i64; 100_000];
    let holed = HoledFenwickTree::new(&big);
    println!(
        "n=100000: holed stores {} words ({} extra)",
        holed.storage_words(),
        holed.storage_words() - 100_001
    );
}
