//! Anatomy of a two-level node: segments in prefix sum below a prefix-summed
//! summary, masked suffix-add updates, and the restricted variant that
//! buffers 8-bit deltas in 16-bit lanes.
//!
//! Run with: `cargo run --release --example two_level_nodes`

use prefix_sums::node::{Backend, Node16, PrefixBlock, RestrictedNode16, RestrictedNode64};

fn main() {
    let a: [i64; 16] = [13, -1, 2, 23, -4, 231, 13, 5, 2, -88, -52, 0, 4, 90, 3, -12];

    // 16 keys split into 4 segments of 4; summary[j] = total of segments < j
    let mut node = Node16::build(&a);
    println!("summary: {:?}", node.summary());
    for seg in 0..4 {
        println!("segment {seg}: {:?}", &node.keys()[seg * 4..(seg + 1) * 4]);
    }
    println!("sum(10) = summary[2] + keys[10] = {}", node.sum(10));
    println!("back()  = {}", node.back());

    // update(9, -37) is two suffix adds: summary rows 3.., segment 2 from
    // offset 1
    node.update(9, -37, Backend::auto());
    println!("\nafter update(9, -37):");
    println!("summary: {:?}", node.summary());
    println!("segment 2: {:?}", &node.keys()[8..12]);

    // the restricted node buffers small deltas in 16-bit lanes and answers
    // sums from four reads; the counter flushes every 256 updates
    let mut rnode = RestrictedNode16::build(&a);
    rnode.update(9, -37, Backend::auto());
    println!("\nrestricted sum(10) = {}", rnode.sum(10));
    println!("summary buffer: {:?}", rnode.summary_buffer());
    rnode.flush();
    println!("after flush, sum(10) still {}", rnode.sum(10));

    let mut hot = RestrictedNode64::build(&[0; 64]);
    for _ in 0..1000 {
        hot.update(0, 127, Backend::auto());
    }
    println!(
        "1000 updates of +127 at key 0: sum(0) = {} (no 16-bit overflow)",
        hot.sum(0)
    );

    println!(
        "\nsizes: Node64 {} bytes, RestrictedNode64 {} bytes ({} unpadded)",
        prefix_sums::node::Node64::size_bytes(),
        RestrictedNode64::size_bytes(),
        RestrictedNode64::unpadded_size_bytes()
    );
}
