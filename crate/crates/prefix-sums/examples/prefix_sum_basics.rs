//! The shared contract: every structure builds from a slice of `i64` and
//! answers `sum`, `update`, `access` and `range_sum` with wrapping
//! arithmetic, interchangeably.
//!
//! Run with: `cargo run --release --example prefix_sum_basics`

use prefix_sums::fenwick::FenwickTree;
use prefix_sums::oracle::NaiveOracle;
use prefix_sums::segtree::{BottomUpSegmentTree, Mode, Policy};
use prefix_sums::PrefixSum;

fn main() {
    let a: [i64; 16] = [13, -1, 2, 23, -4, 231, 13, 5, 2, -88, -52, 0, 4, 90, 3, -12];

    let mut structures: Vec<(&str, Box<dyn PrefixSum>)> = vec![
        ("oracle", Box::new(NaiveOracle::new(&a))),
        ("fenwick", Box::new(FenwickTree::new(&a))),
        (
            "segtree",
            Box::new(BottomUpSegmentTree::new(&a, Mode::LeftSum, Policy::TwoLoop)),
        ),
    ];

    for (name, s) in &structures {
        println!(
            "{name:>8}: sum(10)={} access(5)={} range_sum(8,10)={}",
            s.sum(10),
            s.access(5),
            s.range_sum(8, 10)
        );
    }

    // updates keep all of them in lockstep
    for (_, s) in structures.iter_mut() {
        s.update(10, -37);
    }
    for (name, s) in &structures {
        println!("{name:>8}: after update(10, -37), sum(10)={}", s.sum(10));
    }

    // arithmetic wraps instead of trapping, so extreme values are fine
    let mut extremes = FenwickTree::new(&[i64::MAX, 1, i64::MAX]);
    println!("\nwrapping: sum(1)={} sum(2)={}", extremes.sum(1), extremes.sum(2));
    extremes.update(1, i64::MAX);
    println!("after update(1, MAX): sum(2)={}", extremes.sum(2));

    // reads may run concurrently between updates
    let shared = FenwickTree::new(&a);
    std::thread::scope(|scope| {
        let handles: Vec<_> = (0..4)
            .map(|t| {
                let r = &shared;
                scope.spawn(move || (0..16).map(|i| r.sum(i)).fold(0i64, i64::wrapping_add) + t)
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    });
    println!("four reader threads summed concurrently without contention");
}
