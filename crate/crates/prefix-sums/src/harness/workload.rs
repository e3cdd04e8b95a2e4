//! Deterministic workload generation.
//!
//! Reproducibility is a contract here: the same seed must produce the same
//! array contents and index stream on every platform and in every
//! implementation of this harness. The generator is therefore fixed to
//! SplitMix64 (state advances by the golden-ratio constant
//! `0x9E3779B97F4A7C15`, output is the usual xor-shift/multiply finalizer)
//! and indexes are reduced to `[0, n)` with the 128-bit multiply-shift
//! `(x * n) >> 64`, never with floating point or rejection sampling.
//!
//! A workload of `count` queries over an array of `n` values draws, from a
//! single stream seeded with `seed`: first the `n` initial values (full
//! 64-bit range, reinterpreted as signed), then the `count` indexes. Update
//! deltas are derived from the index: `delta = i` in the general case, and
//! `delta = i % 256 - 128` when deltas are restricted to 8 bits.

/// Fixed-algorithm 64-bit generator; see the module docs for the contract.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform index in `[0, n)` by multiply-shift.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n >= 1);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}

/// Bit width of the update deltas a workload produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaWidth {
    Bits64,
    Bits8,
}

impl DeltaWidth {
    pub fn bits(self) -> u32 {
        match self {
            DeltaWidth::Bits64 => 64,
            DeltaWidth::Bits8 => 8,
        }
    }

    pub fn from_bits(bits: u32) -> Option<Self> {
        match bits {
            64 => Some(DeltaWidth::Bits64),
            8 => Some(DeltaWidth::Bits8),
            _ => None,
        }
    }
}

/// A reproducible query/update stream over an array of `n` values.
#[derive(Debug, Clone)]
pub struct Workload {
    pub n: usize,
    pub seed: u64,
    pub delta_width: DeltaWidth,
    /// Initial array contents.
    pub values: Vec<i64>,
    /// Query/update positions, each in `[0, n)`.
    pub indexes: Vec<usize>,
}

/// Default number of queries per measurement.
pub const DEFAULT_QUERIES: usize = 10_000;

impl Workload {
    pub fn generate(n: usize, count: usize, seed: u64, delta_width: DeltaWidth) -> Self {
        assert!(n >= 1, "n must be at least 1");
        let mut rng = SplitMix64::new(seed);
        let values = (0..n).map(|_| rng.next_u64() as i64).collect();
        let indexes = (0..count).map(|_| rng.index(n)).collect();
        Self {
            n,
            seed,
            delta_width,
            values,
            indexes,
        }
    }

    /// Update delta for the `k`-th operation; a pure function of the index.
    #[inline]
    pub fn delta(&self, k: usize) -> i64 {
        let i = self.indexes[k] as i64;
        match self.delta_width {
            DeltaWidth::Bits64 => i,
            DeltaWidth::Bits8 => i % 256 - 128,
        }
    }
}

/// Ascending array sizes: rounded powers of `10^(1/10)` (ratio about
/// 1.25893, evenly spaced on a log axis) clipped to `[min_n, max_n]`, with
/// both endpoints always present and duplicates from rounding removed.
pub fn n_grid(min_n: usize, max_n: usize) -> Vec<usize> {
    assert!(1 <= min_n && min_n <= max_n);
    let mut grid = vec![min_n, max_n];
    for k in 0.. {
        let v = 10f64.powf(k as f64 / 10.0).round() as usize;
        if v > max_n {
            break;
        }
        if v >= min_n {
            grid.push(v);
        }
    }
    grid.sort_unstable();
    grid.dedup();
    grid
}
