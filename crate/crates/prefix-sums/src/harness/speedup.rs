//! Speedup summary between two benchmark runs: for every `(op, n)` cell
//! present in both files, the ratio `baseline ns_avg / candidate ns_avg`,
//! aggregated as a geometric mean (the right mean for ratios) over three
//! size buckets.

use std::collections::BTreeMap;

use anyhow::{bail, Result};

use super::bench::{BenchRecord, Op};

/// `(lo, hi]` bucket bounds on `n`.
pub const BUCKETS: [(usize, usize); 3] = [
    (1 << 8, 1 << 16),
    (1 << 16, 1 << 22),
    (1 << 22, 1 << 30),
];

fn bucket_label(lo: usize, hi: usize) -> String {
    format!("2^{} < n <= 2^{}", lo.trailing_zeros(), hi.trailing_zeros())
}

/// Renders the per-bucket geometric-mean speedups as an aligned text table.
/// Every `(op, n)` key must appear in both inputs.
pub fn emit_speedup_table(baseline: &[BenchRecord], candidate: &[BenchRecord]) -> Result<String> {
    let key = |r: &BenchRecord| (r.op, r.n);
    let mut base: BTreeMap<(Op, usize), f64> = BTreeMap::new();
    for r in baseline {
        if base.insert(key(r), r.ns_avg).is_some() {
            bail!("duplicate baseline cell op={} n={}", r.op, r.n);
        }
    }
    let mut cand: BTreeMap<(Op, usize), f64> = BTreeMap::new();
    for r in candidate {
        if cand.insert(key(r), r.ns_avg).is_some() {
            bail!("duplicate candidate cell op={} n={}", r.op, r.n);
        }
    }
    for k in cand.keys() {
        if !base.contains_key(k) {
            bail!("baseline is missing op={} n={}", k.0, k.1);
        }
    }
    for k in base.keys() {
        if !cand.contains_key(k) {
            bail!("candidate is missing op={} n={}", k.0, k.1);
        }
    }

    let mut out = format!("{:<20} {:>10} {:>10}\n", "array size", "sum", "update");
    for (lo, hi) in BUCKETS {
        let mut cells = Vec::new();
        for op in [Op::Sum, Op::Update] {
            let ratios: Vec<f64> = base
                .iter()
                .filter(|(&(o, n), _)| o == op && n > lo && n <= hi)
                .map(|(&(o, n), &b_ns)| b_ns / cand[&(o, n)])
                .collect();
            if ratios.is_empty() {
                cells.push("-".to_string());
            } else {
                let geo =
                    (ratios.iter().map(|r| r.ln()).sum::<f64>() / ratios.len() as f64).exp();
                cells.push(format!("{geo:.2}x"));
            }
        }
        out.push_str(&format!(
            "{:<20} {:>10} {:>10}\n",
            bucket_label(lo, hi),
            cells[0],
            cells[1]
        ));
    }
    Ok(out)
}
