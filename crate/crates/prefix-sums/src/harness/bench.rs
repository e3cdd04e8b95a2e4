//! Wall-clock measurement of `sum`/`update` streams.
//!
//! A measurement runs one untimed warm-up pass over the whole index stream
//! to pull the touched data into cache, then `reps` timed passes, and
//! reports nanoseconds per operation for the fastest, mean and slowest
//! pass. Every pass folds its results into a checksum that is fed to
//! `black_box`, so the compiler cannot discard the work; for `sum` the
//! checksum is the wrapping total of the answers of one pass, for `update`
//! it is the final full-array sum. [`oracle_checksum`] computes the same
//! quantity from the raw workload so verification runs can compare.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use super::workload::Workload;
use crate::PrefixSum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Op {
    Sum,
    Update,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Sum => "sum",
            Op::Update => "update",
        })
    }
}

impl FromStr for Op {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sum" => Ok(Op::Sum),
            "update" => Ok(Op::Update),
            other => Err(format!("unknown op '{other}' (expected sum or update)")),
        }
    }
}

/// One CSV row: a structure/op/n cell with its timings and configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRecord {
    pub structure: String,
    pub op: Op,
    pub n: usize,
    pub b: Option<usize>,
    pub delta_bits: u32,
    pub policy: Option<String>,
    pub reps: u32,
    pub ns_min: f64,
    pub ns_avg: f64,
    pub ns_max: f64,
    pub seed: u64,
}

/// Static description of the measured cell, merged into the record.
#[derive(Debug, Clone, Default)]
pub struct RecordMeta {
    pub structure: String,
    pub b: Option<usize>,
    pub policy: Option<String>,
}

pub struct BenchOutcome {
    pub record: BenchRecord,
    pub checksum: u64,
}

pub fn run_bench(
    structure: &mut dyn PrefixSum,
    op: Op,
    workload: &Workload,
    reps: u32,
    meta: RecordMeta,
) -> BenchOutcome {
    assert!(reps >= 1, "at least one timed pass");
    assert_eq!(structure.len(), workload.n, "structure built for another n");
    let count = workload.indexes.len();

    let mut checksum = pass(structure, op, workload); // warm-up, untimed
    let mut ns: Vec<f64> = Vec::with_capacity(reps as usize);
    for _ in 0..reps {
        let start = Instant::now();
        checksum = pass(structure, op, workload);
        let elapsed = start.elapsed();
        ns.push(elapsed.as_nanos() as f64 / count as f64);
    }
    let ns_min = ns.iter().copied().fold(f64::INFINITY, f64::min);
    let ns_max = ns.iter().copied().fold(0.0, f64::max);
    let ns_avg = ns.iter().sum::<f64>() / ns.len() as f64;
    BenchOutcome {
        record: BenchRecord {
            structure: meta.structure,
            op,
            n: workload.n,
            b: meta.b,
            delta_bits: workload.delta_width.bits(),
            policy: meta.policy,
            reps,
            ns_min,
            ns_avg,
            ns_max,
            seed: workload.seed,
        },
        checksum,
    }
}

fn pass(structure: &mut dyn PrefixSum, op: Op, workload: &Workload) -> u64 {
    match op {
        Op::Sum => {
            let mut acc = 0i64;
            for &i in &workload.indexes {
                acc = acc.wrapping_add(structure.sum(i));
            }
            std::hint::black_box(acc) as u64
        }
        Op::Update => {
            for (k, &i) in workload.indexes.iter().enumerate() {
                structure.update(i, workload.delta(k));
            }
            std::hint::black_box(structure.sum(structure.len() - 1)) as u64
        }
    }
}

/// What `run_bench`'s checksum must equal, computed from the raw workload.
/// For `update`, `passes` counts the warm-up plus the timed passes.
pub fn oracle_checksum(workload: &Workload, op: Op, passes: u32) -> u64 {
    let mut pfx = vec![0i64; workload.n + 1];
    for (k, &v) in workload.values.iter().enumerate() {
        pfx[k + 1] = pfx[k].wrapping_add(v);
    }
    match op {
        Op::Sum => {
            let mut acc = 0i64;
            for &i in &workload.indexes {
                acc = acc.wrapping_add(pfx[i + 1]);
            }
            acc as u64
        }
        Op::Update => {
            let per_pass: i64 = (0..workload.indexes.len())
                .fold(0i64, |a, k| a.wrapping_add(workload.delta(k)));
            pfx[workload.n]
                .wrapping_add(per_pass.wrapping_mul(passes as i64)) as u64
        }
    }
}
