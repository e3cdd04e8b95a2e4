//! Deterministic set-associative cache-set analyzer.
//!
//! A `c`-way cache of `total_bytes` with 64-byte lines has
//! `total_bytes / (c * 64)` sets, and a line's set is just its line index
//! modulo the set count. Addresses whose distance is a multiple of
//! `line_bytes * sets` (4096 bytes for the default 32 KiB / 8-way
//! configuration) land in the same set; a Fenwick tree's top cells sit at
//! power-of-two word indexes, so for large `n` they pile onto set 0 and
//! evict each other.
//!
//! [`trace_histogram`] replays a random `sum` workload against an
//! instrumented structure, collects the byte offset of every cell read
//! (storage modeled as one contiguous line-aligned block at offset 0), and
//! counts the distinct lines that map to each set. The instrumented
//! traversals live beside the plain ones (`sum_traced`), so benchmark paths
//! stay hook-free. Everything is a pure function of `(kind, n, queries,
//! seed, cfg)`.

use std::collections::HashSet;
use std::str::FromStr;

use crate::fenwick::{FenwickTree, HoledFenwickTree};
use crate::harness::workload::{DeltaWidth, Workload};
use crate::segtree::{BottomUpSegmentTree, Mode, Policy};

/// One cache level's geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CacheConfig {
    pub line_bytes: usize,
    pub ways: usize,
    pub total_bytes: usize,
}

impl Default for CacheConfig {
    /// 32 KiB, 8-way, 64-byte lines: 64 sets.
    fn default() -> Self {
        Self {
            line_bytes: 64,
            ways: 8,
            total_bytes: 32_768,
        }
    }
}

impl CacheConfig {
    pub fn sets(&self) -> usize {
        self.total_bytes / (self.ways * self.line_bytes)
    }
}

/// Set holding the line at `byte_offset` within a line-aligned block.
pub fn set_of(byte_offset: usize, cfg: &CacheConfig) -> usize {
    (byte_offset / cfg.line_bytes) % cfg.sets()
}

/// Structures with instrumented traversals.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TracedKind {
    Fenwick,
    HoledFenwick,
    BottomUpSegTree,
}

impl FromStr for TracedKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "ft" => Ok(TracedKind::Fenwick),
            "ft-holed" => Ok(TracedKind::HoledFenwick),
            "st" => Ok(TracedKind::BottomUpSegTree),
            other => Err(format!("unknown structure '{other}' (expected ft, ft-holed or st)")),
        }
    }
}

/// Distinct cache lines touched per set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetHistogram {
    counts: Vec<u64>,
    total_lines: u64,
}

impl SetHistogram {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total_lines(&self) -> u64 {
        self.total_lines
    }

    /// Fraction of all distinct lines that live in `set`.
    pub fn share(&self, set: usize) -> f64 {
        self.counts[set] as f64 / self.total_lines as f64
    }

    pub fn max_share(&self) -> f64 {
        (0..self.counts.len())
            .map(|s| self.share(s))
            .fold(0.0, f64::max)
    }

    /// `set_id,distinct_lines,share` rows, one per set.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("set_id,distinct_lines,share\n");
        for (set, &count) in self.counts.iter().enumerate() {
            out.push_str(&format!("{set},{count},{:.6}\n", self.share(set)));
        }
        out
    }
}

/// Replays `queries` random `sum` calls and histograms the distinct lines
/// touched, per set.
pub fn trace_histogram(
    kind: TracedKind,
    n: usize,
    queries: usize,
    seed: u64,
    cfg: &CacheConfig,
) -> SetHistogram {
    let workload = Workload::generate(n, queries, seed, DeltaWidth::Bits64);
    let mut lines: HashSet<usize> = HashSet::new();
    let mut touch_cell = |cell: usize| {
        lines.insert(cell * 8 / cfg.line_bytes);
    };
    match kind {
        TracedKind::Fenwick => {
            let t = FenwickTree::new(&workload.values);
            for &i in &workload.indexes {
                t.sum_traced(i, &mut touch_cell);
            }
        }
        TracedKind::HoledFenwick => {
            let t = HoledFenwickTree::new(&workload.values);
            for &i in &workload.indexes {
                t.sum_traced(i, &mut touch_cell);
            }
        }
        TracedKind::BottomUpSegTree => {
            let t = BottomUpSegmentTree::new(&workload.values, Mode::Regular, Policy::Branchy);
            for &i in &workload.indexes {
                t.sum_traced(i, &mut touch_cell);
            }
        }
    }
    let mut counts = vec![0u64; cfg.sets()];
    for &line in &lines {
        counts[line % cfg.sets()] += 1;
    }
    SetHistogram {
        counts,
        total_lines: lines.len() as u64,
    }
}
