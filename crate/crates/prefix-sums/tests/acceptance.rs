//! Acceptance suite: every release gate in one place, one test per
//! criterion. Each test prints a `criterion N: PASS` line (visible with
//! `--nocapture`); criterion 9 is informational and prints `WARN` instead
//! of failing, since raw timings are machine-dependent.

use std::time::Instant;

use prefix_sums::bary_segtree::{BarySegmentTree, TreePlan};
use prefix_sums::cachemodel::{trace_histogram, CacheConfig, TracedKind};
use prefix_sums::fenwick::{FenwickTree, HoledFenwickTree, DEFAULT_HOLE_SPACING};
use prefix_sums::fenwick_variants::{digits, BaryFenwickTree};
use prefix_sums::harness::bench::RecordMeta;
use prefix_sums::harness::{
    all_structures, check_against_oracle, run_bench, DeltaWidth, Op, SplitMix64, Workload,
};
use prefix_sums::node::{
    suffix_add16, suffix_add16_scalar, suffix_add64, suffix_add64_scalar, Backend, FlatBlock,
    Node256, Node64, PrefixBlock, RestrictedNode256, RestrictedNode64,
};
use prefix_sums::segtree::{BottomUpSegmentTree, Mode, Policy, TopDownSegmentTree};
use prefix_sums::PrefixSum;

const A16: [i64; 16] = [13, -1, 2, 23, -4, 231, 13, 5, 2, -88, -52, 0, 4, 90, 3, -12];

const SIZES: [usize; 15] = [
    1, 2, 3, 15, 16, 17, 63, 64, 65, 255, 256, 257, 1000, 4096, 100_000,
];

#[test]
fn criterion_1_oracle_equivalence() {
    let started = Instant::now();
    let mut checks = 0usize;
    for (k, entry) in all_structures().into_iter().enumerate() {
        for (j, &n) in SIZES.iter().enumerate() {
            let mut rng = SplitMix64::new(0xACCE_77ED ^ ((k as u64) << 32) ^ j as u64);
            let values: Vec<i64> = (0..n).map(|_| rng.next_u64() as i64).collect();
            let mut structure = (entry.build)(&values);
            let result = check_against_oracle(
                structure.as_mut(),
                &values,
                1000,
                rng.next_u64(),
                entry.delta_width,
            );
            assert!(
                result.is_ok(),
                "criterion 1: FAIL — {} at n={n}: {}",
                entry.label,
                result.unwrap_err()
            );
            checks += 1;
        }
    }
    let elapsed = started.elapsed();
    assert!(
        elapsed.as_secs() < 120,
        "criterion 1: FAIL — took {elapsed:?}, budget is 2 minutes"
    );
    println!(
        "criterion 1: PASS — {checks} (structure, n) cells, 1000 ops each, \
         exact oracle match in {elapsed:.2?}"
    );
}

#[test]
fn criterion_2_worked_example_fidelity() {
    for entry in all_structures() {
        let structure = (entry.build)(&A16);
        assert_eq!(
            structure.sum(10),
            144,
            "criterion 2: FAIL — {} returned a wrong sum(10) on the 16-element example",
            entry.label
        );
    }

    let mut ft = FenwickTree::new(&A16);
    let mut sum_path = Vec::new();
    let s = ft.sum_traced(10, |p| sum_path.push(p));
    assert_eq!(s, 144, "criterion 2: FAIL — traced sum value");
    assert_eq!(
        sum_path,
        [11, 10, 8],
        "criterion 2: FAIL — sum(10) must read cells 11, 10, 8"
    );
    let mut update_path = Vec::new();
    ft.update_traced(10, -37, |p| update_path.push(p));
    assert_eq!(
        update_path,
        [11, 12, 16],
        "criterion 2: FAIL — update(10) must write cells 11, 12, 16"
    );
    println!(
        "criterion 2: PASS — all {} structures return sum(10)=144; Fenwick paths 11,10,8 and 11,12,16",
        all_structures().len()
    );
}

#[test]
fn criterion_3_size_formulas() {
    let values = vec![0i64; 10_000];
    for n in 1..=10_000usize {
        let v = &values[..n];
        let topdown = TopDownSegmentTree::new(v, Policy::Branchy);
        let pad = n.next_power_of_two();
        assert_eq!(
            topdown.storage_words(),
            2 * pad - 1,
            "criterion 3: FAIL — top-down words at n={n}"
        );
        let bottomup = BottomUpSegmentTree::new(v, Mode::Regular, Policy::Branchy);
        assert_eq!(
            bottomup.storage_words(),
            2 * n - 1,
            "criterion 3: FAIL — bottom-up words at n={n}"
        );
        let ft = FenwickTree::new(v);
        assert_eq!(ft.storage_words(), n + 1, "criterion 3: FAIL — ft at n={n}");
        let holed = HoledFenwickTree::new(v);
        assert_eq!(
            holed.storage_words(),
            n + 1 + n / DEFAULT_HOLE_SPACING,
            "criterion 3: FAIL — holed ft at n={n}"
        );
    }

    assert_eq!(Node64::size_bytes(), 576, "criterion 3: FAIL — 64-key node");
    let overhead = |b: f64, extra: f64| extra / (8.0 * b) * 100.0;
    let r64 = overhead(64.0, (2.0 * 64.0) + 10.0 * 8.0 + 1.0);
    let r256 = overhead(256.0, (2.0 * 256.0) + 10.0 * 16.0 + 1.0);
    assert_eq!(RestrictedNode64::unpadded_size_bytes(), 721);
    assert_eq!(RestrictedNode256::unpadded_size_bytes(), 2721);
    assert_eq!((r64 * 10.0).round() / 10.0, 40.8, "criterion 3: FAIL — 40.8%");
    assert_eq!((r256 * 10.0).round() / 10.0, 32.9, "criterion 3: FAIL — 32.9%");
    println!(
        "criterion 3: PASS — storage formulas exact for n in [1, 10000]; node 576 B, \
         restricted overheads {r64:.1}% and {r256:.1}%"
    );
}

#[test]
fn criterion_4_cache_set_histogram() {
    let started = Instant::now();
    let cfg = CacheConfig::default();
    let seed = 7;
    let classic = trace_histogram(TracedKind::Fenwick, 10_000_000, 10_000, seed, &cfg);
    let share0 = classic.share(0);
    assert!(
        (0.20..=0.40).contains(&share0),
        "criterion 4: FAIL — classic set-0 share {share0:.4} outside [0.20, 0.40]"
    );
    let holed = trace_histogram(TracedKind::HoledFenwick, 10_000_000, 10_000, seed, &cfg);
    let max_share = holed.max_share();
    assert!(
        max_share <= 0.05,
        "criterion 4: FAIL — holed max set share {max_share:.4} above 0.05"
    );
    // deterministic given the seed
    let again = trace_histogram(TracedKind::Fenwick, 10_000_000, 10_000, seed, &cfg);
    assert_eq!(classic, again, "criterion 4: FAIL — not deterministic");
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 4: FAIL — took {elapsed:?}");
    println!(
        "criterion 4: PASS — classic set-0 share {share0:.3} in [0.20, 0.40]; \
         holed max share {max_share:.4} <= 0.05; deterministic ({elapsed:.2?})"
    );
}

#[test]
fn criterion_5_restricted_node_safety() {
    let mut rng = SplitMix64::new(501);
    let values: Vec<i64> = (0..64).map(|_| rng.next_u64() as i64).collect();
    let mut node = RestrictedNode64::build(&values);
    let mut shadow = values.clone();
    // 16-bit buffers mirrored in 32 bits to catch any would-be overflow
    let mut sbuf = [0i32; 8];
    let mut kbuf = [0i32; 64];
    let mut updates_since_flush = 0u32;
    for _ in 0..100_000 {
        let i = rng.index(64);
        let delta = (rng.next_u64() % 256) as i64 - 128;
        if updates_since_flush == 256 {
            sbuf = [0; 8];
            kbuf = [0; 64];
            updates_since_flush = 0;
        }
        node.update(i, delta as i8, Backend::auto());
        shadow[i] = shadow[i].wrapping_add(delta);
        updates_since_flush += 1;
        for row in i / 8 + 1..8 {
            sbuf[row] += delta as i32;
        }
        for k in i..(i / 8 + 1) * 8 {
            kbuf[k] += delta as i32;
        }
        for (row, &v) in sbuf.iter().enumerate() {
            assert!(
                v >= i16::MIN as i32 && v <= i16::MAX as i32,
                "criterion 5: FAIL — summary buffer {row} out of range: {v}"
            );
            assert_eq!(node.summary_buffer()[row] as i32, v);
        }
        for (k, &v) in kbuf.iter().enumerate() {
            assert!(
                v >= i16::MIN as i32 && v <= i16::MAX as i32,
                "criterion 5: FAIL — keys buffer {k} out of range: {v}"
            );
            assert_eq!(node.keys_buffer()[k] as i32, v);
        }
    }
    for i in 0..64 {
        let expected = shadow[..=i].iter().fold(0i64, |a, &v| a.wrapping_add(v));
        assert_eq!(node.sum(i), expected, "criterion 5: FAIL — final sum({i})");
    }
    println!(
        "criterion 5: PASS — 100000 8-bit updates, buffers always within i16, final sums exact"
    );
}

#[test]
fn criterion_6_structural_invariants() {
    // parity of the bottom-up layout: climbing from any leaf, odd positions
    // are left children and even positions right children
    for n in [2usize, 3, 10, 16, 17, 100, 255] {
        let t = BottomUpSegmentTree::new(&vec![0i64; n], Mode::Regular, Policy::Branchy);
        for i in 0..n {
            let mut p = t.leaf_position(i);
            while p > 0 {
                let parent = (p - 1) / 2;
                let expected_child = if p % 2 == 1 { 2 * parent + 1 } else { 2 * parent + 2 };
                assert_eq!(expected_child, p, "criterion 6: FAIL — parity at n={n}");
                p = parent;
            }
        }
    }

    assert_eq!(
        TreePlan::new(1 << 24, 256).height(),
        3,
        "criterion 6: FAIL — plan height at b=256, n=2^24"
    );
    let h32 = TreePlan::new(1usize << 32, 256).height();
    assert!(h32 <= 4, "criterion 6: FAIL — plan height {h32} at n=2^32");

    assert_eq!(digits(38, 4), vec![2, 1, 2], "criterion 6: FAIL — digits(38, 4)");

    // base-2 digit decomposition visits exactly the classic cell sets
    let n = 1000;
    let mut rng = SplitMix64::new(601);
    let values: Vec<i64> = (0..n).map(|_| rng.next_u64() as i64).collect();
    let mut bary = BaryFenwickTree::<FlatBlock<2>>::new(&values);
    let mut classic = FenwickTree::new(&values);
    for _ in 0..1000 {
        let i = rng.index(n);
        let mut a = Vec::new();
        let mut b = Vec::new();
        bary.sum_traced(i, |q| a.push(q));
        classic.sum_traced(i, |q| b.push(q));
        assert_eq!(a, b, "criterion 6: FAIL — sum cells at {i}");
        let d = rng.next_u64() as i64;
        let mut au = Vec::new();
        let mut bu = Vec::new();
        bary.update_traced(i, d, |q| au.push(q));
        classic.update_traced(i, d, |q| bu.push(q));
        au.sort_unstable();
        bu.sort_unstable();
        assert_eq!(au, bu, "criterion 6: FAIL — update cells at {i}");
    }
    println!(
        "criterion 6: PASS — parity property, plan heights (3 at 2^24, {h32} at 2^32), \
         digits(38,4)=[2,1,2], base-2 cell sets identical to classic over 1000 ops"
    );
}

#[test]
fn criterion_7_lane_parallel_equals_scalar() {
    let mut rng = SplitMix64::new(701);
    let mut cases = 0usize;

    // raw suffix adds, 64- and 16-bit
    for _ in 0..40_000 {
        let len = [4usize, 8, 16][rng.index(3)];
        let mut simd: Vec<i64> = (0..len).map(|_| rng.next_u64() as i64).collect();
        let mut scalar = simd.clone();
        let from = rng.index(len + 1);
        let delta = rng.next_u64() as i64;
        suffix_add64(&mut simd, from, delta, Backend::Simd);
        suffix_add64_scalar(&mut scalar, from, delta);
        assert_eq!(simd, scalar, "criterion 7: FAIL — 64-bit lanes");
        cases += 1;
    }
    for _ in 0..30_000 {
        let len = [4usize, 8, 16][rng.index(3)];
        let mut simd: Vec<i16> = (0..len).map(|_| (rng.next_u64() % 2001) as i16 - 1000).collect();
        let mut scalar = simd.clone();
        let from = rng.index(len + 1);
        let delta = (rng.next_u64() % 256) as i16 - 128;
        suffix_add16(&mut simd, from, delta, Backend::Simd);
        suffix_add16_scalar(&mut scalar, from, delta);
        assert_eq!(simd, scalar, "criterion 7: FAIL — 16-bit lanes");
        cases += 1;
    }

    // whole-node updates, general and restricted
    let values: Vec<i64> = (0..256).map(|_| rng.next_u64() as i64).collect();
    let mut simd_node = Node256::build(&values);
    let mut scalar_node = Node256::build(&values);
    let mut simd_rnode = RestrictedNode256::build(&values);
    let mut scalar_rnode = RestrictedNode256::build(&values);
    for _ in 0..30_000 {
        let i = rng.index(256);
        let delta = rng.next_u64() as i64;
        simd_node.update(i, delta, Backend::Simd);
        scalar_node.update(i, delta, Backend::Scalar);
        let small = (rng.next_u64() % 256) as i8 as i64;
        PrefixBlock::update(&mut simd_rnode, i, small, Backend::Simd);
        PrefixBlock::update(&mut scalar_rnode, i, small, Backend::Scalar);
        let probe = rng.index(256);
        assert_eq!(
            simd_node.sum(probe),
            scalar_node.sum(probe),
            "criterion 7: FAIL — node update diverged"
        );
        assert_eq!(
            simd_rnode.sum(probe),
            scalar_rnode.sum(probe),
            "criterion 7: FAIL — restricted update diverged"
        );
        cases += 2;
    }
    let simd_on = prefix_sums::node::lanes::simd_available();
    println!(
        "criterion 7: PASS — {cases} cases bit-identical (vector kernels {})",
        if simd_on { "active" } else { "unavailable, scalar fallback" }
    );
}

#[test]
fn criterion_8_average_iterations() {
    let n = 1 << 16;
    let t = FenwickTree::new(&vec![0i64; n]);
    let mut rng = SplitMix64::new(801);
    let samples = 10_000usize;
    let mut reads = 0usize;
    for _ in 0..samples {
        let i = rng.index(n);
        t.sum_traced(i, |_| reads += 1);
    }
    // traversal steps: one per cell read plus the terminal root step
    let mean = reads as f64 / samples as f64 + 1.0;
    let expected = 0.5 * ((n as f64) + 1.0).log2().ceil() + 1.0;
    let deviation = (mean - expected).abs() / expected;
    assert!(
        deviation <= 0.10,
        "criterion 8: FAIL — mean {mean:.3} vs expected {expected:.1} ({deviation:.3} off)"
    );
    println!(
        "criterion 8: PASS — mean sum steps {mean:.3} within 10% of {expected:.1} at n=2^16"
    );
}

#[test]
fn criterion_9_benchmark_smoke_informational() {
    let n = 1 << 16;
    let queries = 10_000;
    let seed = 901;
    let workload = Workload::generate(n, queries, seed, DeltaWidth::Bits64);
    let time_sum = |s: &mut dyn PrefixSum| {
        run_bench(s, Op::Sum, &workload, 3, RecordMeta::default())
            .record
            .ns_avg
    };
    let mut branchy = BottomUpSegmentTree::new(&workload.values, Mode::Regular, Policy::Branchy);
    let mut branchfree =
        BottomUpSegmentTree::new(&workload.values, Mode::Regular, Policy::BranchFree);
    let mut wide = BarySegmentTree::<Node64>::new(&workload.values);
    let mut ft = FenwickTree::new(&workload.values);
    let ns_branchy = time_sum(&mut branchy);
    let ns_branchfree = time_sum(&mut branchfree);
    let ns_wide = time_sum(&mut wide);
    let ns_ft = time_sum(&mut ft);

    let profile = if cfg!(debug_assertions) { "debug" } else { "release" };
    let verdict = |faster: f64, slower: f64| if faster < slower { "PASS" } else { "WARN" };
    println!(
        "criterion 9 ({profile} build, informational): {} — branch-free sum {ns_branchfree:.1} ns \
         vs branchy {ns_branchy:.1} ns at n=2^16",
        verdict(ns_branchfree, ns_branchy)
    );
    println!(
        "criterion 9 ({profile} build, informational): {} — 64-ary tree sum {ns_wide:.1} ns \
         vs Fenwick {ns_ft:.1} ns at n=2^16",
        verdict(ns_wide, ns_ft)
    );
    // hardware-dependent: never fails the suite
}
