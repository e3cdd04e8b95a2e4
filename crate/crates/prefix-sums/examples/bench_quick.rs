//! A miniature benchmark run: times a few structures on one workload,
//! prints the CSV rows, and summarizes one pair as a speedup table.
//! (Use the `prefix-sums bench` subcommand for full n-grids.)
//!
//! Run with: `cargo run --release --example bench_quick`

use prefix_sums::bary_segtree::BarySegmentTree;
use prefix_sums::fenwick::FenwickTree;
use prefix_sums::harness::{
    bench::RecordMeta, emit_csv, emit_speedup_table, run_bench, DeltaWidth, Op, Workload,
};
use prefix_sums::node::Node64;
use prefix_sums::segtree::{BottomUpSegmentTree, Mode, Policy};
use prefix_sums::PrefixSum;

fn main() {
    let mut branchy_rows = Vec::new();
    let mut branchfree_rows = Vec::new();
    let mut other_rows = Vec::new();

    for n in [1usize << 12, 1 << 16] {
        let workload = Workload::generate(n, 10_000, 42, DeltaWidth::Bits64);
        let mut cases: Vec<(&str, Option<String>, Box<dyn PrefixSum>)> = vec![
            (
                "st",
                Some("branchy".into()),
                Box::new(BottomUpSegmentTree::new(
                    &workload.values,
                    Mode::Regular,
                    Policy::Branchy,
                )),
            ),
            (
                "st",
                Some("branchfree".into()),
                Box::new(BottomUpSegmentTree::new(
                    &workload.values,
                    Mode::Regular,
                    Policy::BranchFree,
                )),
            ),
            ("ft", None, Box::new(FenwickTree::new(&workload.values))),
            (
                "st-bary",
                None,
                Box::new(BarySegmentTree::<Node64>::new(&workload.values)),
            ),
        ];
        for (name, policy, structure) in cases.iter_mut() {
            let meta = RecordMeta {
                structure: name.to_string(),
                b: if *name == "st-bary" { Some(64) } else { None },
                policy: policy.clone(),
            };
            let outcome = run_bench(structure.as_mut(), Op::Sum, &workload, 3, meta);
            match policy.as_deref() {
                Some("branchy") => branchy_rows.push(outcome.record),
                Some("branchfree") => branchfree_rows.push(outcome.record),
                _ => other_rows.push(outcome.record),
            }
        }
    }

    let mut all_rows = Vec::new();
    all_rows.extend(branchy_rows.iter().cloned());
    all_rows.extend(branchfree_rows.iter().cloned());
    all_rows.extend(other_rows.iter().cloned());
    print!("{}", emit_csv(&all_rows));

    println!("\nbranch-free over branchy (geometric mean per size bucket):");
    print!(
        "{}",
        emit_speedup_table(&branchy_rows, &branchfree_rows).expect("matching cells")
    );
}
